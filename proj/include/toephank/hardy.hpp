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

// The function-space side: the Riesz projection on coefficient windows, H^p
// norms of analytic polynomials by quadrature, Toeplitz/Hankel form tables
// via the pairing <f,g> = (1/2pi) int f conj(g), operator-norm lower bounds on
// H^p realized through coefficient matrices, and the exact 2x2 block formula
// for the norm of a multiplication-plus-flip operator M(a) + M(c)J.

#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "displacement.hpp"
#include "pnorm.hpp"

namespace toephank {

// Analytic polynomial sum_{k=0..d} coeffs[k] chi_k, chi_k(z) = z^k.
struct CoeffPolynomial {
  std::vector<Complex> coeffs;

  CoeffPolynomial() = default;
  explicit CoeffPolynomial(std::vector<Complex> c) : coeffs(std::move(c)) {
    for (const Complex& v : coeffs)
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw std::invalid_argument("CoeffPolynomial: non-finite coefficient");
  }

  static CoeffPolynomial monomial(long k, Complex c = Complex(1, 0)) {
    if (k < 0) throw std::invalid_argument("monomial: need k >= 0");
    std::vector<Complex> v(static_cast<std::size_t>(k + 1), Complex(0, 0));
    v.back() = c;
    return CoeffPolynomial(std::move(v));
  }

  // index of the last nonzero coefficient; 0 for the zero polynomial
  long degree() const {
    for (long k = static_cast<long>(coeffs.size()) - 1; k >= 0; --k)
      if (coeffs[static_cast<std::size_t>(k)] != Complex(0, 0)) return k;
    return 0;
  }

  Complex eval(double theta) const {
    const Complex z(std::cos(theta), std::sin(theta));
    Complex acc(0, 0);
    for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * z + coeffs[i];
    return acc;
  }
};

// Drops all coefficients with negative index.
inline CoeffPolynomial riesz_project(const FourierSequence& seq) {
  if (seq.hi() < 0) return CoeffPolynomial(std::vector<Complex>{Complex(0, 0)});
  std::vector<Complex> c(static_cast<std::size_t>(seq.hi() + 1), Complex(0, 0));
  for (long j = std::max(0L, seq.lo()); j <= seq.hi(); ++j)
    c[static_cast<std::size_t>(j)] = seq.at(j);
  return CoeffPolynomial(std::move(c));
}

// <f, g> = (1/2pi) int f conj(g) by the size-`grid` rectangle rule; exact up
// to roundoff whenever f conj(g) is a trigonometric polynomial of degree < grid.
inline Complex pairing(const SymbolSpec& f, const CoeffPolynomial& g, long grid) {
  if (grid < 4) throw std::invalid_argument("pairing: grid too small");
  Complex acc(0, 0);
  for (long m = 0; m < grid; ++m) {
    const double t = kTwoPi * static_cast<double>(m) / static_cast<double>(grid);
    acc += f.eval(t) * std::conj(g.eval(t));
  }
  return acc / static_cast<double>(grid);
}

inline Complex pairing(const CoeffPolynomial& f, const CoeffPolynomial& g, long grid) {
  if (grid < 4) throw std::invalid_argument("pairing: grid too small");
  Complex acc(0, 0);
  for (long m = 0; m < grid; ++m) {
    const double t = kTwoPi * static_cast<double>(m) / static_cast<double>(grid);
    acc += f.eval(t) * std::conj(g.eval(t));
  }
  return acc / static_cast<double>(grid);
}

enum class FormKind { toeplitz, hankel, checkerboard, neither };

inline const char* to_string(FormKind k) {
  switch (k) {
    case FormKind::toeplitz: return "toeplitz";
    case FormKind::hankel: return "hankel";
    case FormKind::checkerboard: return "checkerboard";
    case FormKind::neither: return "neither";
  }
  return "neither";
}

// Table of form values <A chi_k, chi_j> on [0,m)^2. `kind` is what the built
// entries actually satisfy (a constant symbol yields a checkerboard form).
struct FormTable {
  Eigen::MatrixXcd entries;  // (j, k)
  FormKind kind = FormKind::neither;
};

// Builds the Toeplitz table a_hat_{j-k} or the Hankel table a_hat_{j+k+1} from
// the symbol's Fourier coefficients and validates the entry relations at 1e-12.
inline FormTable form_table(const SymbolSpec& a, FormKind requested, long m, long grid) {
  if (m < 1) throw std::invalid_argument("form_table: need m >= 1");
  if (requested != FormKind::toeplitz && requested != FormKind::hankel)
    throw std::invalid_argument("form_table: requested kind must be toeplitz or hankel");

  IndexRange lags = requested == FormKind::toeplitz ? IndexRange{-(m - 1), m - 1}
                                                    : IndexRange{1, 2 * m - 1};
  const FourierSequence ahat = fourier_coefficients(a, lags, grid);

  FormTable t;
  t.entries.resize(m, m);
  for (long j = 0; j < m; ++j)
    for (long k = 0; k < m; ++k)
      t.entries(j, k) = requested == FormKind::toeplitz ? ahat.at(j - k) : ahat.at(j + k + 1);

  FiniteSection s{IndexRange{0, m - 1}, IndexRange{0, m - 1}, t.entries};
  const double tol = 1e-12;
  const bool toep = is_toeplitz(s, tol);
  const bool hank = is_hankel(s, tol);
  t.kind = toep && hank ? FormKind::checkerboard
           : toep       ? FormKind::toeplitz
           : hank       ? FormKind::hankel
                        : FormKind::neither;
  return t;
}

// ((1/2pi) int |f|^p)^(1/p) by the rectangle rule; grid must oversample the
// degree by a factor of 8 so that |f|^p is resolved also for non-even p.
inline double hp_norm(const CoeffPolynomial& f, double p, long grid) {
  if (!(p >= 1.0) || p == kInf) throw std::invalid_argument("hp_norm: need 1 <= p < inf");
  if (grid < 8 * (f.degree() + 1))
    throw std::invalid_argument("hp_norm: grid must be >= 8*(deg+1)");
  double acc = 0.0;
  for (long m = 0; m < grid; ++m) {
    const double t = kTwoPi * static_cast<double>(m) / static_cast<double>(grid);
    acc += std::pow(std::abs(f.eval(t)), p);
  }
  return std::pow(acc / static_cast<double>(grid), 1.0 / p);
}

namespace detail {

// Values of the polynomial with the given analytic coefficients on the size-G
// uniform grid, via FFT.
inline std::vector<Complex> poly_values_on_grid(const std::vector<Complex>& coeffs, long grid) {
  std::vector<Complex> buf(static_cast<std::size_t>(grid), Complex(0, 0));
  for (std::size_t k = 0; k < coeffs.size(); ++k) buf[k] = coeffs[k];
  fft(buf, +1);  // unnormalized: f(t_m) = sum_k c_k e^{+i k t_m}
  return buf;
}

// Coefficients c_j, j = 0..count-1, of grid samples (forward FFT / grid).
inline std::vector<Complex> analytic_coeffs_from_grid(std::vector<Complex> values, long count) {
  const long grid = static_cast<long>(values.size());
  fft(values, -1);
  std::vector<Complex> out(static_cast<std::size_t>(count));
  for (long j = 0; j < count; ++j)
    out[static_cast<std::size_t>(j)] = values[static_cast<std::size_t>(j)] /
                                       static_cast<double>(grid);
  return out;
}

inline double grid_pnorm(const std::vector<Complex>& values, double p) {
  double acc = 0.0;
  for (const Complex& v : values) acc += std::pow(std::abs(v), p);
  return std::pow(acc / static_cast<double>(values.size()), 1.0 / p);
}

}  // namespace detail

struct HpOpNormBudget {
  int starts = 16;
  long max_iter = 100;
  std::uint64_t seed = 7;
  long pad = -1;        // extra output degrees beyond deg; -1 = max(64, 2*deg)
  double tol = 1e-9;
  std::ostream* log = nullptr;  // optional JSON-lines iteration log
};

// Lower bound for ||T(a) + H(b)||_{B(H^p)} by maximizing the H^p quadrature
// Rayleigh quotient ||M f|| / ||f|| over polynomials f of degree <= deg, where
// M is the coefficient matrix M_{jk} = a_hat_{j-k} (+ b_hat_{j+k+1}), with the
// output read through degrees < deg + pad. Ascent alternates the l^p duality
// maps of the two quadrature norms; every iterate is a genuine quotient, so
// the best value seen is a valid lower bound for the compression regardless
// of convergence. The upper field carries the symbol bound c_p ||a||_inf
// (+ c_p ||b||_inf), sharpened to ||a||_inf for analytic a.
inline NormEstimate hp_opnorm_lower(const SymbolSpec& a, const SymbolSpec* b, double p, long deg,
                                    const HpOpNormBudget& budget = HpOpNormBudget{}) {
  if (!(p > 1.0) || !(p < kInf)) throw std::invalid_argument("hp_opnorm_lower: need 1 < p < inf");
  if (deg < 0) throw std::invalid_argument("hp_opnorm_lower: need deg >= 0");
  const double q = p / (p - 1.0);

  const long pad = budget.pad >= 0 ? budget.pad : std::max<long>(64, 2 * deg);
  const long rows = deg + 1 + pad;
  const long cols = deg + 1;
  const long coeff_grid =
      detail::next_power_of_two(std::max(4 * (rows + deg + 1), 1024L));
  const FourierSequence ahat = fourier_coefficients(a, IndexRange{-deg, rows - 1}, coeff_grid);
  FourierSequence bhat = FourierSequence::zero(IndexRange{1, rows + deg});
  if (b) bhat = fourier_coefficients(*b, IndexRange{1, rows + deg}, coeff_grid);

  Eigen::MatrixXcd m(rows, cols);
  for (long j = 0; j < rows; ++j)
    for (long k = 0; k < cols; ++k) m(j, k) = ahat.at(j - k) + bhat.at(j + k + 1);

  // one shared quadrature grid for the domain and output norms, so that the
  // Rayleigh quotient of an identity-like action is exactly 1
  const long gin = detail::next_power_of_two(std::max(8 * rows, 512L));
  const long gout = gin;

  auto coeff_vec = [](const Eigen::VectorXcd& v) {
    return std::vector<Complex>(v.data(), v.data() + v.size());
  };

  double best = 0.0;
  long total_iters = 0;
  detail::Rng seeder(budget.seed);

  for (int s = 0; s < std::max(budget.starts, 1); ++s) {
    std::uint64_t start_seed = seeder.next_u64();
    Eigen::VectorXcd x(cols);
    if (s == 0) {
      x.setZero();
      x[0] = Complex(1, 0);  // f = 1
    } else if (s == 1) {
      x.setOnes();
    } else {
      detail::Rng rng(start_seed);
      for (long k = 0; k < cols; ++k) x[k] = rng.uniform_complex(-1.0, 1.0);
    }

    double prev = -1.0;
    int flat = 0;
    for (long it = 0; it < budget.max_iter; ++it) {
      const double nx = detail::grid_pnorm(detail::poly_values_on_grid(coeff_vec(x), gin), p);
      if (nx == 0.0 || !std::isfinite(nx)) break;
      x /= nx;

      const Eigen::VectorXcd y = m * x;
      std::vector<Complex> yv = detail::poly_values_on_grid(coeff_vec(y), gout);
      const double value = detail::grid_pnorm(yv, p);
      ++total_iters;
      if (!std::isfinite(value)) break;
      best = std::max(best, value);
      if (budget.log)
        (*budget.log) << "{\"start\":" << s << ",\"iteration\":" << it << ",\"value\":" << value
                      << ",\"seed\":" << start_seed << "}\n";
      if (value == 0.0) break;
      if (prev >= 0.0 && std::abs(value - prev) <= budget.tol * std::max(1.0, value)) {
        if (++flat >= 3) break;
      } else {
        flat = 0;
      }
      prev = value;

      // dual direction in the output space: u = phase(Mf) |Mf|^{p-1}
      double scale = 0.0;
      for (const Complex& v : yv) scale = std::max(scale, std::abs(v));
      if (scale == 0.0) break;
      for (Complex& v : yv) {
        const double av = std::abs(v);
        v = av == 0.0 ? Complex(0, 0) : v / av * std::pow(av / scale, p - 1.0);
      }
      std::vector<Complex> uhat = detail::analytic_coeffs_from_grid(std::move(yv), rows);
      Eigen::Map<const Eigen::VectorXcd> uv(uhat.data(), static_cast<Eigen::Index>(uhat.size()));
      const Eigen::VectorXcd w = m.adjoint() * uv;

      // pull back through the domain-side duality map and re-project onto
      // degrees <= deg
      std::vector<Complex> wv = detail::poly_values_on_grid(coeff_vec(w), gin);
      double wscale = 0.0;
      for (const Complex& v : wv) wscale = std::max(wscale, std::abs(v));
      if (wscale == 0.0) break;
      for (Complex& v : wv) {
        const double av = std::abs(v);
        v = av == 0.0 ? Complex(0, 0) : v / av * std::pow(av / wscale, q - 1.0);
      }
      std::vector<Complex> xnew = detail::analytic_coeffs_from_grid(std::move(wv), cols);
      for (long k = 0; k < cols; ++k) x[k] = xnew[static_cast<std::size_t>(k)];
      if (x.norm() == 0.0) break;
    }
  }

  // symbol-side upper bound
  const double sup_a = sup_norm(a, 1024);
  bool analytic = true;
  for (long j = -deg; j < 0; ++j)
    if (std::abs(ahat.at(j)) > 1e-12) analytic = false;
  double upper = analytic ? sup_a : cp_constant(p) * sup_a;
  std::string note = analytic ? "upper: |a|_inf (analytic symbol)" : "upper: c_p |a|_inf";
  if (b) {
    upper += cp_constant(p) * sup_norm(*b, 1024);
    note += " + c_p |b|_inf";
  }

  NormEstimate est;
  est.p = p;
  est.lower = best;
  est.upper = upper;
  est.method = NormMethod::hp_power;
  est.iterations = total_iters;
  est.seed = budget.seed;
  est.note = note;
  return est;
}

namespace detail {

// p -> p norm of a 2x2 complex matrix by dense sampling of the l^p unit
// sphere (|x1|,|x2|) = (cos^(2/p) t, sin^(2/p) t), relative phase phi, with
// golden-section refinement in both parameters. Declared accuracy ~1e-6.
inline double two_by_two_pnorm(const Eigen::Matrix2cd& m, double p) {
  auto image_norm = [&m, p](double t, double phi) {
    const double c = std::pow(std::max(std::cos(t), 0.0), 2.0 / p);
    const double s = std::pow(std::max(std::sin(t), 0.0), 2.0 / p);
    const Complex x1(c, 0.0);
    const Complex x2 = std::polar(s, phi);
    const Complex y1 = m(0, 0) * x1 + m(0, 1) * x2;
    const Complex y2 = m(1, 0) * x1 + m(1, 1) * x2;
    const double a1 = std::abs(y1), a2 = std::abs(y2);
    if (p == kInf) return std::max(a1, a2);
    return std::pow(std::pow(a1, p) + std::pow(a2, p), 1.0 / p);
  };

  const int nt = 32, nphi = 32;  // 1024-point scan
  double best = 0.0;
  double bt = 0.0, bphi = 0.0;
  for (int i = 0; i < nt; ++i) {
    const double t = (kPi / 2.0) * (static_cast<double>(i) + 0.5) / nt;
    for (int j = 0; j < nphi; ++j) {
      const double phi = kTwoPi * static_cast<double>(j) / nphi;
      const double v = image_norm(t, phi);
      if (v > best) {
        best = v;
        bt = t;
        bphi = phi;
      }
    }
  }
  const double dt = (kPi / 2.0) / nt, dphi = kTwoPi / nphi;
  for (int round = 0; round < 3; ++round) {
    auto [t1, v1] = golden_max([&](double t) { return image_norm(t, bphi); },
                               std::max(bt - dt, 0.0), std::min(bt + dt, kPi / 2.0));
    bt = t1;
    auto [p1, v2] = golden_max([&](double phi) { return image_norm(bt, phi); }, bphi - dphi,
                               bphi + dphi);
    bphi = p1;
    best = std::max({best, v1, v2});
  }
  return best;
}

}  // namespace detail

// Exact norm of M(a) + M(c)J on L^p through the 2x2 block symbol
//   [[a(z), c(z)], [c(conj z), a(conj z)]],  z in the upper half circle:
// returns the esssup over a grid of the 2x2 matrix p-norm, refined around the
// grid argmax. Grid points avoid 0 and pi (and thus typical arc endpoints).
inline double flip_multiplier_norm(const SymbolSpec& a, const SymbolSpec& c, double p, long grid) {
  if (!(p >= 1.0) || p == kInf)
    throw std::invalid_argument("flip_multiplier_norm: need 1 <= p < inf");
  if (grid < 16) throw std::invalid_argument("flip_multiplier_norm: grid too small");

  auto block_norm = [&](double t) {
    Eigen::Matrix2cd m;
    m << a.eval(t), c.eval(t), c.eval(-t), a.eval(-t);
    return detail::two_by_two_pnorm(m, p);
  };

  double best = 0.0, bt = 0.0;
  for (long i = 0; i < grid; ++i) {
    const double t = kPi * (static_cast<double>(i) + 0.5) / static_cast<double>(grid);
    const double v = block_norm(t);
    if (v > best) {
      best = v;
      bt = t;
    }
  }
  const double dt = kPi / static_cast<double>(grid);
  auto [tr, vr] = detail::golden_max(block_norm, std::max(bt - dt, 1e-12),
                                     std::min(bt + dt, kPi - 1e-12), 80);
  return std::max(best, vr);
}

// Four-term displacement relation for form tables on a Z-window:
//   B_{j-1,k} + B_{j+1,k} - B_{j,k-1} - B_{j,k+1} = 0 on the interior.
// Holds exactly for tables built from M(a) + M(c)J.
inline bool decomposition_relation_check(const FiniteSection& b, double tol) {
  if (b.row_count() < 3 || b.col_count() < 3)
    throw std::invalid_argument("decomposition_relation_check: window must be >= 3 each way");
  return displacement_transform(b).max_abs() <= tol;
}

}  // namespace toephank
