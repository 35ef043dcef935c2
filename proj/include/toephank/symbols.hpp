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

// Symbols on the unit circle and their Fourier data: coefficient windows,
// sup/Wiener norms, and the Riesz projection constant c_p = 1/sin(pi/p).
//
// Conventions (fixed across the library):
//   a_hat(j) = (1/2pi) \int a(e^{i t}) e^{-i j t} dt,
//   quadrature grids are t_m = 2 pi m / N, m = 0..N-1,
//   piecewise symbols live on arcs (start, end] partitioning (-pi, pi];
//   jump points are only ever approached one-sidedly.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "detail.hpp"

namespace toephank {

using Complex = std::complex<double>;
inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;
inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct IndexRange {
  long lo = 0;
  long hi = -1;

  long length() const { return hi >= lo ? hi - lo + 1 : 0; }
  bool contains(long j) const { return j >= lo && j <= hi; }
  bool empty() const { return hi < lo; }

  friend bool operator==(const IndexRange& a, const IndexRange& b) {
    return a.lo == b.lo && a.hi == b.hi;
  }
};

enum class DecayClass { finite_support, summable, c0, bounded, unknown };

inline const char* to_string(DecayClass d) {
  switch (d) {
    case DecayClass::finite_support: return "finite_support";
    case DecayClass::summable: return "summable";
    case DecayClass::c0: return "c0";
    case DecayClass::bounded: return "bounded";
    case DecayClass::unknown: return "unknown";
  }
  return "unknown";
}

// Two-sided coefficient sequence on a finite index window. Outside the window
// a finite_support sequence is exactly zero; for every other decay class a
// read outside the window is a hard error, so that missing coefficients can
// never silently corrupt a norm bound.
class FourierSequence {
 public:
  FourierSequence() = default;

  FourierSequence(IndexRange window, std::vector<Complex> values,
                  DecayClass decay = DecayClass::finite_support)
      : window_(window), values_(std::move(values)), decay_(decay) {
    if (window_.empty()) throw std::invalid_argument("FourierSequence: window lo > hi");
    if (static_cast<long>(values_.size()) != window_.length())
      throw std::invalid_argument("FourierSequence: value count does not match window");
    for (const Complex& v : values_)
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw std::invalid_argument("FourierSequence: non-finite value");
  }

  static FourierSequence zero(IndexRange window,
                              DecayClass decay = DecayClass::finite_support) {
    return FourierSequence(window, std::vector<Complex>(window.length(), Complex(0, 0)), decay);
  }

  const IndexRange& window() const { return window_; }
  long lo() const { return window_.lo; }
  long hi() const { return window_.hi; }
  DecayClass decay() const { return decay_; }
  const std::vector<Complex>& values() const { return values_; }
  std::vector<Complex>& values() { return values_; }

  bool covered(long j) const { return window_.contains(j) || decay_ == DecayClass::finite_support; }

  Complex at(long j) const {
    if (window_.contains(j)) return values_[static_cast<std::size_t>(j - window_.lo)];
    if (decay_ == DecayClass::finite_support) return Complex(0, 0);
    throw std::out_of_range("FourierSequence: index " + std::to_string(j) +
                            " outside stored window and decay class is not finite_support");
  }

  // Value of the trigonometric polynomial sum_j values[j] e^{i j t}.
  Complex eval(double theta) const {
    const Complex z(std::cos(theta), std::sin(theta));
    // Horner from the top lag, then shift by z^lo.
    Complex acc(0, 0);
    for (long j = window_.hi; j >= window_.lo; --j) acc = acc * z + at(j);
    // multiply by z^lo
    long k = window_.lo;
    Complex zl = std::polar(1.0, theta * static_cast<double>(k));
    return acc * zl;
  }

  std::string note;  // metadata: provenance, quadrature error class

 private:
  IndexRange window_;
  std::vector<Complex> values_;
  DecayClass decay_ = DecayClass::finite_support;
};

enum class NormMethod {
  exact_column_sums,
  exact_row_sums,
  dense_spectral,
  lanczos,
  power_iteration,
  wiener_interval,
  symbol_bound,
  hp_power
};

inline const char* to_string(NormMethod m) {
  switch (m) {
    case NormMethod::exact_column_sums: return "exact_column_sums";
    case NormMethod::exact_row_sums: return "exact_row_sums";
    case NormMethod::dense_spectral: return "dense_spectral";
    case NormMethod::lanczos: return "lanczos";
    case NormMethod::power_iteration: return "power_iteration";
    case NormMethod::wiener_interval: return "wiener_interval";
    case NormMethod::symbol_bound: return "symbol_bound";
    case NormMethod::hp_power: return "hp_power";
  }
  return "unknown";
}

// Certified two-sided estimate of a p -> p norm. `lower` is always a value
// realized by a concrete vector (reproducible from `seed`), `upper` a proven
// bound; upper may be +inf when no finite certificate is available.
struct NormEstimate {
  double p = 2.0;
  double lower = 0.0;
  double upper = kInf;
  NormMethod method = NormMethod::dense_spectral;
  long iterations = 0;
  std::uint64_t seed = 0;
  std::string note;
};

// ---------------------------------------------------------------------------
// SymbolSpec: one of fourier_poly / piecewise / sampled.
// ---------------------------------------------------------------------------

enum class ArcFormKind { constant, exp_i_ktheta, sine, cosine, affine };

inline const char* to_string(ArcFormKind k) {
  switch (k) {
    case ArcFormKind::constant: return "constant";
    case ArcFormKind::exp_i_ktheta: return "exp_i_ktheta";
    case ArcFormKind::sine: return "sin";
    case ArcFormKind::cosine: return "cos";
    case ArcFormKind::affine: return "affine";
  }
  return "constant";
}

// Closed forms available on piecewise arcs:
//   constant      c0
//   exp_i_ktheta  c0 * e^{i k t}
//   sin           c0 * sin(k t)
//   cos           c0 * cos(k t)
//   affine        c0 + c1 * t
struct ArcForm {
  ArcFormKind kind = ArcFormKind::constant;
  Complex c0{0, 0};
  Complex c1{0, 0};
  long k = 0;

  Complex eval(double theta) const {
    switch (kind) {
      case ArcFormKind::constant: return c0;
      case ArcFormKind::exp_i_ktheta:
        return c0 * std::polar(1.0, static_cast<double>(k) * theta);
      case ArcFormKind::sine: return c0 * std::sin(static_cast<double>(k) * theta);
      case ArcFormKind::cosine: return c0 * std::cos(static_cast<double>(k) * theta);
      case ArcFormKind::affine: return c0 + c1 * theta;
    }
    return c0;
  }
};

struct Arc {
  double theta_start = 0.0;
  double theta_end = 0.0;
  ArcForm form;
};

struct FourierPoly {
  FourierSequence coeffs;
};

struct PiecewiseSymbol {
  std::vector<Arc> arcs;  // sorted, partition (-pi, pi], each arc is (start, end]
};

struct SampledSymbol {
  std::vector<Complex> values;    // uniform samples at t_m = 2 pi m / N
  std::vector<Complex> spectrum;  // DFT / N in FFT bin order (built on construction)
};

class SymbolSpec {
 public:
  using Node = std::variant<FourierPoly, PiecewiseSymbol, SampledSymbol>;

  static SymbolSpec fourier_poly(FourierSequence coeffs) {
    // A stored polynomial is exact: outside the window everything is zero.
    FourierSequence fixed(coeffs.window(), coeffs.values(), DecayClass::finite_support);
    return SymbolSpec(Node(FourierPoly{std::move(fixed)}));
  }

  static SymbolSpec piecewise(std::vector<Arc> arcs) {
    if (arcs.empty()) throw std::invalid_argument("piecewise symbol: no arcs");
    std::sort(arcs.begin(), arcs.end(),
              [](const Arc& a, const Arc& b) { return a.theta_start < b.theta_start; });
    const double snap = 1e-9;
    if (std::abs(arcs.front().theta_start + kPi) > snap)
      throw std::invalid_argument("piecewise symbol: arcs must start at -pi");
    for (std::size_t i = 0; i < arcs.size(); ++i) {
      if (arcs[i].theta_end - arcs[i].theta_start <= 0.0)
        throw std::invalid_argument("piecewise symbol: arc with nonpositive length");
      if (i + 1 < arcs.size() &&
          std::abs(arcs[i].theta_end - arcs[i + 1].theta_start) > snap)
        throw std::invalid_argument("piecewise symbol: arcs overlap or leave a gap");
    }
    if (std::abs(arcs.back().theta_end - kPi) > snap)
      throw std::invalid_argument("piecewise symbol: arcs must end at pi");
    return SymbolSpec(Node(PiecewiseSymbol{std::move(arcs)}));
  }

  static SymbolSpec sampled(std::vector<Complex> values) {
    const long n = static_cast<long>(values.size());
    if (n < 4 || !detail::is_power_of_two(n))
      throw std::invalid_argument("sampled symbol: N must be a power of two >= 4");
    for (const Complex& v : values)
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw std::invalid_argument("sampled symbol: non-finite sample");
    SampledSymbol s;
    s.spectrum = values;
    detail::fft(s.spectrum, -1);
    for (Complex& c : s.spectrum) c /= static_cast<double>(n);
    s.values = std::move(values);
    return SymbolSpec(Node(std::move(s)));
  }

  // The exact-value symbol of the 1/sin(pi/p) sharpness example:
  //   a(e^{i t}) = sin(pi/p) + i cos(pi/p) for t in (0, pi],
  //   a(e^{i t}) = sin(pi/p) - i cos(pi/p) for t in (-pi, 0].
  static SymbolSpec sharpness(double p) {
    if (!(p > 1.0) || !(p < kInf))
      throw std::invalid_argument("sharpness symbol: need 1 < p < inf");
    const double s = std::sin(kPi / p);
    const double c = std::cos(kPi / p);
    Arc minus{-kPi, 0.0, ArcForm{ArcFormKind::constant, Complex(s, -c), Complex(0, 0), 0}};
    Arc plus{0.0, kPi, ArcForm{ArcFormKind::constant, Complex(s, c), Complex(0, 0), 0}};
    return piecewise({minus, plus});
  }

  const Node& node() const { return node_; }

  bool is_fourier_poly() const { return std::holds_alternative<FourierPoly>(node_); }
  bool is_piecewise() const { return std::holds_alternative<PiecewiseSymbol>(node_); }
  bool is_sampled() const { return std::holds_alternative<SampledSymbol>(node_); }

  const FourierPoly& as_fourier_poly() const { return std::get<FourierPoly>(node_); }
  const PiecewiseSymbol& as_piecewise() const { return std::get<PiecewiseSymbol>(node_); }
  const SampledSymbol& as_sampled() const { return std::get<SampledSymbol>(node_); }

  // Pointwise evaluation. Piecewise symbols use half-open arcs (start, end],
  // sampled symbols evaluate their trigonometric interpolant.
  Complex eval(double theta) const {
    if (const auto* fp = std::get_if<FourierPoly>(&node_)) return fp->coeffs.eval(theta);
    if (const auto* pw = std::get_if<PiecewiseSymbol>(&node_)) {
      const double t = normalize_angle(theta);
      for (const Arc& arc : pw->arcs)
        if (t > arc.theta_start && t <= arc.theta_end + 1e-15) return arc.form.eval(t);
      return pw->arcs.back().form.eval(t);  // unreachable for a valid partition
    }
    const SampledSymbol& s = as_sampled();
    const long n = static_cast<long>(s.values.size());
    Complex acc(0, 0);
    for (long r = 0; r < n; ++r) {
      long k = r < n / 2 ? r : r - n;
      acc += s.spectrum[static_cast<std::size_t>(r)] *
             std::polar(1.0, static_cast<double>(k) * theta);
    }
    return acc;
  }

  // Maps theta into (-pi, pi].
  static double normalize_angle(double theta) {
    double t = std::remainder(theta, kTwoPi);
    if (t <= -kPi) t += kTwoPi;
    if (t > kPi) t -= kTwoPi;
    return t;
  }

 private:
  explicit SymbolSpec(Node node) : node_(std::move(node)) {}
  Node node_;
};

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

namespace detail {

inline std::vector<Complex> sample_on_grid(const SymbolSpec& spec, long grid) {
  std::vector<Complex> out(static_cast<std::size_t>(grid));
  for (long m = 0; m < grid; ++m) {
    double t = kTwoPi * static_cast<double>(m) / static_cast<double>(grid);
    out[static_cast<std::size_t>(m)] = spec.eval(t);
  }
  return out;
}

inline bool piecewise_has_jump(const PiecewiseSymbol& pw) {
  const std::size_t n = pw.arcs.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Arc& cur = pw.arcs[i];
    const Arc& nxt = pw.arcs[(i + 1) % n];
    double t = cur.theta_end;
    double tn = (i + 1 == n) ? -kPi : nxt.theta_start;
    if (std::abs(cur.form.eval(t) - nxt.form.eval(tn)) > 1e-12) return true;
  }
  return false;
}

}  // namespace detail

// Fourier coefficients of `spec` on `window`:
//  * fourier_poly inputs return their stored coefficients exactly, no quadrature;
//  * piecewise inputs are integrated by the size-`grid_size` rectangle rule
//    (exact up to roundoff for trig polynomials, O(1/grid) for jump symbols,
//    recorded in the sequence note);
//  * sampled inputs return the coefficients of the grid-`grid_size` quadrature
//    of their interpolant, computed by spectrum folding.
// The window may cover at most grid_size/4 lags (aliasing guard).
inline FourierSequence fourier_coefficients(const SymbolSpec& spec, IndexRange window,
                                            long grid_size) {
  if (window.empty()) throw std::invalid_argument("fourier_coefficients: empty window");
  if (!detail::is_power_of_two(grid_size) || grid_size < 4)
    throw std::invalid_argument("fourier_coefficients: grid_size must be a power of two >= 4");
  const long width = window.length();
  if (4 * width > grid_size)
    throw std::invalid_argument(
        "fourier_coefficients: window wider than grid_size/4 (aliasing guard)");

  if (spec.is_fourier_poly()) {
    const FourierSequence& c = spec.as_fourier_poly().coeffs;
    std::vector<Complex> vals(static_cast<std::size_t>(width));
    for (long j = window.lo; j <= window.hi; ++j)
      vals[static_cast<std::size_t>(j - window.lo)] = c.at(j);
    FourierSequence out(window, std::move(vals), DecayClass::finite_support);
    out.note = "exact";
    return out;
  }

  if (spec.is_sampled()) {
    const SampledSymbol& s = spec.as_sampled();
    const long n = static_cast<long>(s.values.size());
    // Quadrature of the interpolant at grid G == folding the spectrum mod G.
    std::vector<Complex> vals(static_cast<std::size_t>(width), Complex(0, 0));
    for (long r = 0; r < n; ++r) {
      long k = r < n / 2 ? r : r - n;
      long img = detail::mod(k, grid_size);
      long folded = img < grid_size / 2 ? img : img - grid_size;
      if (window.contains(folded))
        vals[static_cast<std::size_t>(folded - window.lo)] += s.spectrum[static_cast<std::size_t>(r)];
    }
    bool truncated = window.lo > -n / 2 || window.hi < n / 2 - 1;
    FourierSequence out(window, std::move(vals),
                        truncated ? DecayClass::c0 : DecayClass::finite_support);
    out.note = "sampled interpolant";
    return out;
  }

  // Piecewise: rectangle-rule quadrature on t_m = 2 pi m / grid.
  const std::vector<Complex> samples = detail::sample_on_grid(spec, grid_size);
  for (const Complex& v : samples)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw std::invalid_argument("fourier_coefficients: non-finite sample");

  // Twiddle table e^{-2 pi i r / G}; coefficient j reads bin (j*m mod G).
  std::vector<Complex> tw;
  const bool use_table = grid_size <= (1L << 21);
  if (use_table) {
    tw.resize(static_cast<std::size_t>(grid_size));
    for (long r = 0; r < grid_size; ++r)
      tw[static_cast<std::size_t>(r)] =
          std::polar(1.0, -kTwoPi * static_cast<double>(r) / static_cast<double>(grid_size));
  }

  std::vector<Complex> vals(static_cast<std::size_t>(width));
  for (long j = window.lo; j <= window.hi; ++j) {
    Complex acc(0, 0);
    if (use_table) {
      long r = 0;
      const long step = detail::mod(j, grid_size);
      for (long m = 0; m < grid_size; ++m) {
        acc += samples[static_cast<std::size_t>(m)] * tw[static_cast<std::size_t>(r)];
        r += step;
        if (r >= grid_size) r -= grid_size;
      }
    } else {
      for (long m = 0; m < grid_size; ++m) {
        double ang = -kTwoPi * static_cast<double>(detail::mod(j * m, grid_size)) /
                     static_cast<double>(grid_size);
        acc += samples[static_cast<std::size_t>(m)] * std::polar(1.0, ang);
      }
    }
    vals[static_cast<std::size_t>(j - window.lo)] = acc / static_cast<double>(grid_size);
  }
  FourierSequence out(window, std::move(vals), DecayClass::c0);
  out.note = detail::piecewise_has_jump(spec.as_piecewise())
                 ? "rectangle rule, jump symbol: coefficient error O(1/grid)"
                 : "rectangle rule";
  return out;
}

namespace detail {

// Largest |f| over the closed bracket, by scan + golden refinement of each
// local maximum of |f|^2.
inline double refined_abs_max(const std::function<Complex(double)>& f, double a, double b,
                              long samples) {
  samples = std::max<long>(samples, 8);
  auto mag2 = [&f](double t) {
    Complex v = f(t);
    return v.real() * v.real() + v.imag() * v.imag();
  };
  std::vector<double> ts(static_cast<std::size_t>(samples));
  std::vector<double> ms(static_cast<std::size_t>(samples));
  for (long i = 0; i < samples; ++i) {
    double t = a + (b - a) * static_cast<double>(i) / static_cast<double>(samples - 1);
    ts[static_cast<std::size_t>(i)] = t;
    ms[static_cast<std::size_t>(i)] = mag2(t);
  }
  double best = 0.0;
  for (long i = 0; i < samples; ++i) {
    best = std::max(best, ms[static_cast<std::size_t>(i)]);
    bool left_le = i == 0 || ms[static_cast<std::size_t>(i - 1)] <= ms[static_cast<std::size_t>(i)];
    bool right_le =
        i == samples - 1 || ms[static_cast<std::size_t>(i + 1)] <= ms[static_cast<std::size_t>(i)];
    if (left_le && right_le) {
      double lo = ts[static_cast<std::size_t>(std::max<long>(i - 1, 0))];
      double hi = ts[static_cast<std::size_t>(std::min<long>(i + 1, samples - 1))];
      best = std::max(best, golden_max(mag2, lo, hi).second);
    }
  }
  return std::sqrt(best);
}

}  // namespace detail

// max |a| over a grid of at least `grid_size` points. Exact (up to refinement
// tolerance ~1e-12) for trigonometric polynomials and per-arc closed forms;
// for sampled symbols it is the max over the stored samples, which is a lower
// bound for the essential sup of the interpolant. Piecewise arcs contribute
// their endpoint values one-sidedly; jump points are never sampled two-sidedly.
inline double sup_norm(const SymbolSpec& spec, long grid_size) {
  if (grid_size < 256) throw std::invalid_argument("sup_norm: grid_size must be >= 256");

  if (spec.is_fourier_poly()) {
    const FourierSequence& c = spec.as_fourier_poly().coeffs;
    bool all_zero = true;
    for (const Complex& v : c.values())
      if (v != Complex(0, 0)) all_zero = false;
    if (all_zero) return 0.0;
    long deg = std::max(std::labs(c.lo()), std::labs(c.hi()));
    long n = std::max(grid_size, 8 * (deg + 1));
    return detail::refined_abs_max([&c](double t) { return c.eval(t); }, 0.0, kTwoPi,
                                   n + 1);
  }

  if (spec.is_sampled()) {
    double best = 0.0;
    for (const Complex& v : spec.as_sampled().values) best = std::max(best, std::abs(v));
    return best;
  }

  const PiecewiseSymbol& pw = spec.as_piecewise();
  double best = 0.0;
  for (const Arc& arc : pw.arcs) {
    if (arc.form.kind == ArcFormKind::constant) {
      best = std::max(best, std::abs(arc.form.c0));
      continue;
    }
    double len = arc.theta_end - arc.theta_start;
    long n = std::max<long>(64, static_cast<long>(static_cast<double>(grid_size) * len / kTwoPi));
    best = std::max(best, detail::refined_abs_max(
                              [&arc](double t) { return arc.form.eval(t); }, arc.theta_start,
                              arc.theta_end, n + 1));
  }
  return best;
}

// ||a||_W = sum |a_hat_j|. Only meaningful when the stored window carries the
// whole l^1 mass, so any weaker decay class is refused.
inline double wiener_norm(const FourierSequence& seq) {
  if (seq.decay() != DecayClass::finite_support && seq.decay() != DecayClass::summable)
    throw std::domain_error("wiener_norm: decay class is not summable");
  double s = 0.0;
  for (const Complex& v : seq.values()) s += std::abs(v);
  return s;
}

// c_p = 1/sin(pi/p), the L^p norm of the Riesz projection, for 1 < p < inf.
inline double cp_constant(double p) {
  if (!(p > 1.0) || !(p < kInf) || !std::isfinite(p))
    throw std::domain_error("cp_constant: need 1 < p < inf");
  return 1.0 / std::sin(kPi / p);
}

}  // namespace toephank
