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

// The displacement transform
//
//   D_{j,k} = A_{j-1,k} + A_{j+1,k} - A_{j,k-1} - A_{j,k+1}
//
// vanishes exactly on sums of Toeplitz and Hankel matrices, and only on them.
// This header implements the transform, the structure predicates, and the
// recovery of the (Toeplitz, Hankel, checkerboard) parts from a section.
//
// The split A = T(phi) + H(psi) is unique only up to a checkerboard matrix
// (a matrix that is simultaneously Toeplitz and Hankel): moving the pair
// (alpha, beta) between the parts leaves A unchanged via
//
//   T(phi2) = H(psi2),  phi2 = alpha on even lags / beta on odd lags,
//                       psi2 = alpha on odd indices / beta on even indices.
//
// Canonical extraction estimates the parity tail limits of the raw Hankel
// sequence and, when the estimate is trustworthy, moves them into the
// Toeplitz part so that the Hankel part decays (the c_0 normal form).

#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "sections.hpp"

namespace toephank {

struct Decomposition {
  FourierSequence toeplitz_part;  // phi, lags [-(n-1), n-1]
  FourierSequence hankel_part;    // psi, indices [1, 2n-1]
  Complex checkerboard_even{0, 0};  // transferred checkerboard value at j+k even
  Complex checkerboard_odd{0, 0};   //                            ... j+k odd
  bool canonical = false;
  double residual = 0.0;  // max |A - T(phi) - H(psi)| over the analyzed window
};

// D has the same index semantics as A with boundary rows/columns dropped:
// the relation is only defined where all four neighbours exist.
inline FiniteSection displacement_transform(const FiniteSection& a) {
  if (a.row_count() < 3 || a.col_count() < 3)
    throw std::invalid_argument("displacement_transform: section must be at least 3x3");
  IndexRange rows{a.rows.lo + 1, a.rows.hi - 1};
  IndexRange cols{a.cols.lo + 1, a.cols.hi - 1};
  FiniteSection d{rows, cols, Eigen::MatrixXcd(rows.length(), cols.length())};
  for (long j = rows.lo; j <= rows.hi; ++j)
    for (long k = cols.lo; k <= cols.hi; ++k)
      d.at(j, k) = a.at(j - 1, k) + a.at(j + 1, k) - a.at(j, k - 1) - a.at(j, k + 1);
  return d;
}

inline bool is_toeplitz(const FiniteSection& a, double tol) {
  if (tol < 0) throw std::invalid_argument("is_toeplitz: tol must be >= 0");
  for (long j = a.rows.lo; j < a.rows.hi; ++j)
    for (long k = a.cols.lo; k < a.cols.hi; ++k)
      if (std::abs(a.at(j, k) - a.at(j + 1, k + 1)) > tol) return false;
  return true;
}

inline bool is_hankel(const FiniteSection& a, double tol) {
  if (tol < 0) throw std::invalid_argument("is_hankel: tol must be >= 0");
  for (long j = a.rows.lo + 1; j <= a.rows.hi; ++j)
    for (long k = a.cols.lo; k < a.cols.hi; ++k)
      if (std::abs(a.at(j, k) - a.at(j - 1, k + 1)) > tol) return false;
  return true;
}

inline bool is_checkerboard(const FiniteSection& a, double tol) {
  return is_toeplitz(a, tol) && is_hankel(a, tol);
}

namespace detail {

// Mean and max deviation of a set of values; the mean is computed relative to
// the first element so that identical values reproduce it exactly.
struct TailStats {
  Complex mean{0, 0};
  double spread = 0.0;
};

inline TailStats tail_stats(const std::vector<Complex>& v) {
  TailStats st;
  if (v.empty()) return st;
  Complex acc(0, 0);
  for (const Complex& x : v) acc += x - v.front();
  st.mean = v.front() + acc / static_cast<double>(v.size());
  for (const Complex& x : v) st.spread = std::max(st.spread, std::abs(x - st.mean));
  return st;
}

}  // namespace detail

// Reconstruction T(phi) + H(psi) of a decomposition on [0,n)^2 windows.
inline FiniteSection reconstruct(const Decomposition& d, IndexRange window) {
  return section(OperatorSpec::sum({OperatorSpec::toeplitz(d.toeplitz_part),
                                    OperatorSpec::hankel(d.hankel_part)}),
                 window, window);
}

// Recover phi and psi from a section on [0,n)^2 whose displacement transform
// vanishes to within tol. Raw recovery samples the Hankel sequence from the
// main and first super-diagonal,
//   psi_j = A_{(j-1)/2,(j-1)/2} (j odd),  A_{(j-2)/2,j/2} (j even),
// and reads phi from the diagonal averages of A - H(psi). Canonicalization
// then estimates the parity tail limits of psi over the trailing quarter of
// its index range; if both parity classes are flat to within tol the limits
// are moved into the Toeplitz part and recorded as the checkerboard pair,
// otherwise the raw parts are returned with canonical = false.
inline Decomposition extract(const FiniteSection& a, double tol) {
  if (!(a.rows == a.cols) || a.rows.lo != 0)
    throw std::invalid_argument("extract: section must live on [0,n)^2");
  const long n = a.row_count();
  if (n < 3) throw std::invalid_argument("extract: section must be at least 3x3");

  const double disp = displacement_transform(a).max_abs();
  if (disp > tol)
    throw std::domain_error("extract: displacement residual " + std::to_string(disp) +
                            " exceeds tol; not a Toeplitz+Hankel matrix");

  // Raw Hankel sequence, indices 1 .. 2n-1.
  std::vector<Complex> psi(static_cast<std::size_t>(2 * n - 1));
  for (long j = 1; j <= 2 * n - 1; ++j) {
    Complex v = (j % 2 == 1) ? a.at((j - 1) / 2, (j - 1) / 2) : a.at((j - 2) / 2, j / 2);
    psi[static_cast<std::size_t>(j - 1)] = v;
  }
  auto psi_at = [&psi](long j) { return psi[static_cast<std::size_t>(j - 1)]; };

  // Raw Toeplitz sequence from diagonal means of A - H(psi), lags -(n-1)..n-1.
  std::vector<Complex> phi(static_cast<std::size_t>(2 * n - 1));
  for (long m = -(n - 1); m <= n - 1; ++m) {
    std::vector<Complex> diag;
    diag.reserve(static_cast<std::size_t>(n - std::labs(m)));
    for (long j = std::max(0L, m); j <= std::min(n - 1, n - 1 + m); ++j) {
      long k = j - m;
      diag.push_back(a.at(j, k) - psi_at(j + k + 1));
    }
    phi[static_cast<std::size_t>(m + n - 1)] = detail::tail_stats(diag).mean;
  }

  // Parity tail limits of psi over the trailing quarter of [1, 2n-1].
  const long q = (n + 3) / 4;
  std::vector<Complex> tail_odd, tail_even;
  for (long j = 2 * n - 1; j >= 1 && static_cast<long>(tail_odd.size()) < q; j -= 2)
    tail_odd.push_back(psi_at(j));
  for (long j = 2 * n - 2; j >= 1 && static_cast<long>(tail_even.size()) < q; j -= 2)
    tail_even.push_back(psi_at(j));
  const detail::TailStats odd = detail::tail_stats(tail_odd);
  const detail::TailStats even = detail::tail_stats(tail_even);

  Decomposition out;
  out.canonical = odd.spread <= tol && even.spread <= tol;
  if (out.canonical) {
    // psi -= (odd.mean on odd indices, even.mean on even indices);
    // phi += the matching checkerboard: odd.mean on even lags, even.mean on odd.
    for (long j = 1; j <= 2 * n - 1; ++j)
      psi[static_cast<std::size_t>(j - 1)] -= (j % 2 == 1) ? odd.mean : even.mean;
    for (long m = -(n - 1); m <= n - 1; ++m)
      phi[static_cast<std::size_t>(m + n - 1)] += (detail::mod(m, 2) == 0) ? odd.mean : even.mean;
    out.checkerboard_even = odd.mean;  // checkerboard value at j+k even
    out.checkerboard_odd = even.mean;
  }

  out.toeplitz_part =
      FourierSequence(IndexRange{-(n - 1), n - 1}, std::move(phi), DecayClass::bounded);
  out.hankel_part =
      FourierSequence(IndexRange{1, 2 * n - 1}, std::move(psi),
                      out.canonical ? DecayClass::c0 : DecayClass::bounded);

  const FiniteSection rec = reconstruct(out, a.rows);
  out.residual = (a.entries - rec.entries).cwiseAbs().maxCoeff();
  return out;
}

// Two-sided analogue on a symmetric Z-window: A_{j,k} = a_hat_{j-k} + b_hat_{j+k+1},
// i.e. A = L(a_hat) + L(b_hat) J. Returns (a_hat, b_hat). The same diagonal
// sampling is used, centered at 0, and the parity tails of b_hat (at both ends
// of its window) are moved into a_hat when they are flat to within tol.
inline std::pair<FourierSequence, FourierSequence> extract_two_sided(const FiniteSection& a,
                                                                     double tol) {
  if (!(a.rows == a.cols))
    throw std::invalid_argument("extract_two_sided: section must be square on a Z-window");
  if (a.rows.lo > -1 || a.rows.hi < 1)
    throw std::invalid_argument("extract_two_sided: window must straddle 0");
  const long lo = a.rows.lo, hi = a.rows.hi;

  const double disp = displacement_transform(a).max_abs();
  if (disp > tol)
    throw std::domain_error("extract_two_sided: displacement residual too large");

  // Raw antidiagonal sequence b_hat_s, s in [2*lo+1, 2*hi+1].
  const IndexRange bwin{2 * lo + 1, 2 * hi + 1};
  std::vector<Complex> bh(static_cast<std::size_t>(bwin.length()), Complex(0, 0));
  auto bh_ref = [&bh, bwin](long s) -> Complex& {
    return bh[static_cast<std::size_t>(s - bwin.lo)];
  };
  for (long m = lo; m <= hi; ++m) bh_ref(2 * m + 1) = a.at(m, m);
  for (long m = lo + 1; m <= hi; ++m) bh_ref(2 * m) = a.at(m - 1, m);

  // Diagonal means of A - B, lags lo-hi .. hi-lo.
  const IndexRange awin{lo - hi, hi - lo};
  std::vector<Complex> ah(static_cast<std::size_t>(awin.length()));
  for (long m = awin.lo; m <= awin.hi; ++m) {
    std::vector<Complex> diag;
    for (long j = std::max(lo, lo + m); j <= std::min(hi, hi + m); ++j) {
      long k = j - m;
      long s = j + k + 1;
      if (bwin.contains(s)) diag.push_back(a.at(j, k) - bh_ref(s));
    }
    ah[static_cast<std::size_t>(m - awin.lo)] = detail::tail_stats(diag).mean;
  }

  // Parity canonicalization: both window ends, per parity class.
  const long q = std::max(2L, (hi - lo + 4) / 4);
  auto collect = [&](long start, long step, long count) {
    std::vector<Complex> v;
    for (long s = start; bwin.contains(s) && static_cast<long>(v.size()) < count; s += step)
      v.push_back(bh_ref(s));
    return v;
  };
  const long top = bwin.hi;  // odd (2*hi+1)
  const detail::TailStats odd_hi = detail::tail_stats(collect(top, -2, q));
  const detail::TailStats odd_lo = detail::tail_stats(collect(bwin.lo, 2, q));
  const detail::TailStats even_hi = detail::tail_stats(collect(top - 1, -2, q));
  const detail::TailStats even_lo = detail::tail_stats(collect(bwin.lo + 1, 2, q));

  const bool odd_flat = odd_hi.spread <= tol && odd_lo.spread <= tol &&
                        std::abs(odd_hi.mean - odd_lo.mean) <= tol;
  const bool even_flat = even_hi.spread <= tol && even_lo.spread <= tol &&
                         std::abs(even_hi.mean - even_lo.mean) <= tol;
  if (odd_flat && even_flat) {
    const Complex t_odd = (odd_hi.mean + odd_lo.mean) / 2.0;
    const Complex t_even = (even_hi.mean + even_lo.mean) / 2.0;
    for (long s = bwin.lo; s <= bwin.hi; ++s)
      bh_ref(s) -= (detail::mod(s, 2) == 1) ? t_odd : t_even;
    for (long m = awin.lo; m <= awin.hi; ++m)
      ah[static_cast<std::size_t>(m - awin.lo)] += (detail::mod(m, 2) == 0) ? t_odd : t_even;
  }

  return {FourierSequence(awin, std::move(ah), DecayClass::bounded),
          FourierSequence(bwin, std::move(bh), DecayClass::bounded)};
}

// Cesaro average over even shifts,
//   c_n(m) = (1/(2n+1)) sum_{j=-n}^{n} phi_{m-2j},
// which isolates the per-parity constant (checkerboard) component of a
// bounded sequence. Returns (phi - c_n on the shrunken window, (alpha_even,
// alpha_odd)) where the alphas are c_n at the reference even/odd lag nearest 0.
inline std::pair<FourierSequence, std::pair<Complex, Complex>> cesaro_checkerboard_split(
    const FourierSequence& phi, long n) {
  if (n < 1) throw std::invalid_argument("cesaro_checkerboard_split: n must be >= 1");
  const IndexRange out{phi.lo() + 2 * n, phi.hi() - 2 * n};
  if (out.empty() || out.length() < 2)
    throw std::invalid_argument(
        "cesaro_checkerboard_split: window too small for requested n (need width > 4n+1)");

  auto cesaro = [&phi, n](long m) {
    Complex acc(0, 0);
    for (long j = -n; j <= n; ++j) acc += phi.at(m - 2 * j);
    return acc / static_cast<double>(2 * n + 1);
  };

  std::vector<Complex> rem(static_cast<std::size_t>(out.length()));
  for (long m = out.lo; m <= out.hi; ++m)
    rem[static_cast<std::size_t>(m - out.lo)] = phi.at(m) - cesaro(m);

  // reference lags: the even and odd lag of smallest magnitude in the window
  long ref_even = out.contains(0) ? 0 : (detail::mod(out.lo, 2) == 0 ? out.lo : out.lo + 1);
  long ref_odd = out.contains(1) ? 1
                 : out.contains(-1) ? -1
                                    : (detail::mod(out.lo, 2) == 1 ? out.lo : out.lo + 1);
  const Complex alpha_even = cesaro(ref_even);
  const Complex alpha_odd = cesaro(ref_odd);

  return {FourierSequence(out, std::move(rem), DecayClass::unknown),
          {alpha_even, alpha_odd}};
}

}  // namespace toephank
