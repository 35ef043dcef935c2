/*
   Copyright 2026 The toephank authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

// Finite sections of Toeplitz, Hankel, Laurent, flip, shift, checkerboard and
// finite-rank matrices, plus sums, compositions and shifted compressions.
//
// Entry formulas (j = row, k = column, global indices):
//   Toeplitz   phi_{j-k}   on N_0
//   Hankel     psi_{j+k+1} on N_0, psi indexed from 1
//   Laurent    phi_{j-k}   on Z
//   Flip       delta_{j,-k-1}
//   Shift(s)   delta_{j,k+s}
//   Checkerboard(e,o)  e if j+k even else o
//
// Dense storage only; sections are capped at 8192 x 8192.

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <tuple>
#include <variant>
#include <vector>

#include "symbols.hpp"

namespace toephank {

inline constexpr long kSectionCap = 8192;

struct FiniteSection {
  IndexRange rows;
  IndexRange cols;
  Eigen::MatrixXcd entries;  // (rows.length() x cols.length())

  Complex at(long j, long k) const {
    return entries(static_cast<Eigen::Index>(j - rows.lo), static_cast<Eigen::Index>(k - cols.lo));
  }
  Complex& at(long j, long k) {
    return entries(static_cast<Eigen::Index>(j - rows.lo), static_cast<Eigen::Index>(k - cols.lo));
  }
  long row_count() const { return rows.length(); }
  long col_count() const { return cols.length(); }
  bool square_aligned() const { return rows == cols; }

  double max_abs() const {
    double m = 0.0;
    for (Eigen::Index j = 0; j < entries.rows(); ++j)
      for (Eigen::Index k = 0; k < entries.cols(); ++k)
        m = std::max(m, std::abs(entries(j, k)));
    return m;
  }
};

class OperatorSpec;

struct ToeplitzOp {
  FourierSequence symbol;
};
struct HankelOp {
  FourierSequence symbol;  // window must start at index >= 1
};
struct LaurentOp {
  FourierSequence symbol;
};
struct FlipOp {};
struct ShiftOp {
  long k = 1;
};
struct CheckerboardOp {
  Complex even{0, 0};
  Complex odd{0, 0};
};
struct FiniteRankOp {
  std::vector<std::tuple<long, long, Complex>> entries;  // (row, col, value)
};
struct SumOp {
  std::vector<OperatorSpec> terms;
};
struct ComposeOp {
  std::vector<OperatorSpec> factors;
};

class OperatorSpec {
 public:
  using Node = std::variant<ToeplitzOp, HankelOp, LaurentOp, FlipOp, ShiftOp, CheckerboardOp,
                            FiniteRankOp, SumOp, ComposeOp>;

  static OperatorSpec toeplitz(FourierSequence symbol) {
    return OperatorSpec(Node(ToeplitzOp{std::move(symbol)}));
  }
  static OperatorSpec hankel(FourierSequence symbol) {
    if (symbol.lo() < 1)
      throw std::invalid_argument("Hankel symbol must be indexed from 1 (psi_1 is entry (0,0))");
    return OperatorSpec(Node(HankelOp{std::move(symbol)}));
  }
  static OperatorSpec laurent(FourierSequence symbol) {
    return OperatorSpec(Node(LaurentOp{std::move(symbol)}));
  }
  static OperatorSpec flip() { return OperatorSpec(Node(FlipOp{})); }
  static OperatorSpec shift(long k) { return OperatorSpec(Node(ShiftOp{k})); }
  static OperatorSpec checkerboard(Complex even, Complex odd) {
    return OperatorSpec(Node(CheckerboardOp{even, odd}));
  }
  static OperatorSpec finite_rank(std::vector<std::tuple<long, long, Complex>> entries) {
    return OperatorSpec(Node(FiniteRankOp{std::move(entries)}));
  }
  static OperatorSpec sum(std::vector<OperatorSpec> terms) {
    if (terms.empty()) throw std::invalid_argument("Sum: empty term list");
    return OperatorSpec(Node(SumOp{std::move(terms)}));
  }
  static OperatorSpec compose(std::vector<OperatorSpec> factors) {
    if (factors.empty()) throw std::invalid_argument("Compose: empty factor list");
    return OperatorSpec(Node(ComposeOp{std::move(factors)}));
  }

  const Node& node() const { return node_; }

  // True when every building block lives on N_0 indices (no Laurent / flip).
  bool nonneg_indexed() const {
    if (std::holds_alternative<LaurentOp>(node_) || std::holds_alternative<FlipOp>(node_))
      return false;
    if (const auto* fr = std::get_if<FiniteRankOp>(&node_)) {
      for (const auto& [r, c, v] : fr->entries)
        if (r < 0 || c < 0) return false;
      return true;
    }
    if (const auto* s = std::get_if<SumOp>(&node_)) {
      for (const OperatorSpec& t : s->terms)
        if (!t.nonneg_indexed()) return false;
      return true;
    }
    if (const auto* c = std::get_if<ComposeOp>(&node_)) {
      for (const OperatorSpec& f : c->factors)
        if (!f.nonneg_indexed()) return false;
      return true;
    }
    return true;
  }

 private:
  explicit OperatorSpec(Node node) : node_(std::move(node)) {}
  Node node_;
};

FiniteSection section(const OperatorSpec& spec, IndexRange rows, IndexRange cols);

namespace detail {

inline void check_section_ranges(IndexRange rows, IndexRange cols) {
  if (rows.empty() || cols.empty()) throw std::invalid_argument("section: empty index range");
  if (rows.length() > kSectionCap || cols.length() > kSectionCap)
    throw std::invalid_argument("section: size exceeds the 8192 cap");
}

inline int parity(long j) { return static_cast<int>(detail::mod(j, 2)); }

struct SectionBuilder {
  IndexRange rows, cols;

  FiniteSection operator()(const ToeplitzOp& op) const {
    if (rows.lo < 0 || cols.lo < 0)
      throw std::invalid_argument("Toeplitz section: ranges must lie in N_0");
    FiniteSection s{rows, cols, Eigen::MatrixXcd(rows.length(), cols.length())};
    for (long j = rows.lo; j <= rows.hi; ++j)
      for (long k = cols.lo; k <= cols.hi; ++k) s.at(j, k) = op.symbol.at(j - k);
    return s;
  }

  FiniteSection operator()(const HankelOp& op) const {
    if (rows.lo < 0 || cols.lo < 0)
      throw std::invalid_argument("Hankel section: ranges must lie in N_0");
    FiniteSection s{rows, cols, Eigen::MatrixXcd(rows.length(), cols.length())};
    for (long j = rows.lo; j <= rows.hi; ++j)
      for (long k = cols.lo; k <= cols.hi; ++k) s.at(j, k) = op.symbol.at(j + k + 1);
    return s;
  }

  FiniteSection operator()(const LaurentOp& op) const {
    FiniteSection s{rows, cols, Eigen::MatrixXcd(rows.length(), cols.length())};
    for (long j = rows.lo; j <= rows.hi; ++j)
      for (long k = cols.lo; k <= cols.hi; ++k) s.at(j, k) = op.symbol.at(j - k);
    return s;
  }

  FiniteSection operator()(const FlipOp&) const {
    FiniteSection s{rows, cols, Eigen::MatrixXcd::Zero(rows.length(), cols.length())};
    for (long k = cols.lo; k <= cols.hi; ++k)
      if (rows.contains(-k - 1)) s.at(-k - 1, k) = Complex(1, 0);
    return s;
  }

  FiniteSection operator()(const ShiftOp& op) const {
    FiniteSection s{rows, cols, Eigen::MatrixXcd::Zero(rows.length(), cols.length())};
    for (long k = cols.lo; k <= cols.hi; ++k)
      if (rows.contains(k + op.k)) s.at(k + op.k, k) = Complex(1, 0);
    return s;
  }

  FiniteSection operator()(const CheckerboardOp& op) const {
    FiniteSection s{rows, cols, Eigen::MatrixXcd(rows.length(), cols.length())};
    for (long j = rows.lo; j <= rows.hi; ++j)
      for (long k = cols.lo; k <= cols.hi; ++k)
        s.at(j, k) = parity(j + k) == 0 ? op.even : op.odd;
    return s;
  }

  FiniteSection operator()(const FiniteRankOp& op) const {
    FiniteSection s{rows, cols, Eigen::MatrixXcd::Zero(rows.length(), cols.length())};
    for (const auto& [r, c, v] : op.entries)
      if (rows.contains(r) && cols.contains(c)) s.at(r, c) += v;
    return s;
  }

  FiniteSection operator()(const SumOp& op) const {
    FiniteSection acc = section(op.terms.front(), rows, cols);
    for (std::size_t i = 1; i < op.terms.size(); ++i)
      acc.entries += section(op.terms[i], rows, cols).entries;
    return acc;
  }

  // Composition of sections, not the section of the composition: every factor
  // is truncated to the same square window before multiplying. On windows the
  // factors map into themselves (e.g. flip on [-m, m-1]) the two coincide.
  FiniteSection operator()(const ComposeOp& op) const {
    if (!(rows == cols))
      throw std::invalid_argument("Compose section: rows and cols must be the same range");
    FiniteSection acc = section(op.factors.front(), rows, cols);
    for (std::size_t i = 1; i < op.factors.size(); ++i)
      acc.entries = (acc.entries * section(op.factors[i], rows, cols).entries).eval();
    return acc;
  }
};

}  // namespace detail

inline FiniteSection section(const OperatorSpec& spec, IndexRange rows, IndexRange cols) {
  detail::check_section_ranges(rows, cols);
  return std::visit(detail::SectionBuilder{rows, cols}, spec.node());
}

// Section of V^{-n} P* A P V^n on window x window: entry (j,k) = A_{j+n,k+n}
// where both shifted indices are >= 0, and 0 otherwise.
inline FiniteSection shifted_compression(const OperatorSpec& spec, long n, IndexRange window) {
  if (n < 0) throw std::invalid_argument("shifted_compression: n must be >= 0");
  if (!spec.nonneg_indexed())
    throw std::invalid_argument("shifted_compression: spec must be N_0-indexed");
  detail::check_section_ranges(window, window);

  FiniteSection out{window, window,
                    Eigen::MatrixXcd::Zero(window.length(), window.length())};
  IndexRange inner{std::max(window.lo + n, 0L), window.hi + n};
  if (inner.empty()) return out;
  FiniteSection sub = section(spec, inner, inner);
  for (long j = inner.lo; j <= inner.hi; ++j)
    for (long k = inner.lo; k <= inner.hi; ++k) out.at(j - n, k - n) = sub.at(j, k);
  return out;
}

// Standard matrix-vector product of a section with a coefficient vector.
inline std::vector<Complex> apply(const FiniteSection& s, const std::vector<Complex>& x) {
  if (static_cast<long>(x.size()) != s.col_count())
    throw std::invalid_argument("apply: vector length does not match section columns");
  Eigen::Map<const Eigen::VectorXcd> xv(x.data(), static_cast<Eigen::Index>(x.size()));
  Eigen::VectorXcd y = s.entries * xv;
  return std::vector<Complex>(y.data(), y.data() + y.size());
}

}  // namespace toephank
