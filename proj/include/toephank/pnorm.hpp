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

// Matrix p -> p norms and the operator-theoretic estimates built on them.
//
//   p = 1    exact (max absolute column sum)
//   p = inf  exact (max absolute row sum)
//   p = 2    largest singular value; dense decomposition up to 1024, Lanczos
//            with a certified Rayleigh lower bound and an interpolation upper
//            bound beyond that
//   else     certified lower bound by Boyd's nonlinear power iteration plus a
//            Riesz-Thorin interpolation upper bound from the exact {1,2,inf}
//            values. Exact general-p norms are NP-hard; a bracket is what the
//            inequality checks need.
//
// Every lower bound is realized by a concrete vector reproducible from the
// request seed.

#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sections.hpp"

namespace toephank {

struct PNormRequest {
  double p = 2.0;
  int multistarts = 8;
  long max_iter = 200;
  std::uint64_t seed = 0x5eedULL;
  double tol = 1e-10;
};

namespace detail {

inline constexpr long kDenseSpectralCap = 1024;

inline double vector_pnorm(const Eigen::VectorXcd& x, double p) {
  if (x.size() == 0) return 0.0;
  if (p == kInf) return x.cwiseAbs().maxCoeff();
  const double m = x.cwiseAbs().maxCoeff();
  if (m == 0.0) return 0.0;
  double acc = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) acc += std::pow(std::abs(x[i]) / m, p);
  return m * std::pow(acc, 1.0 / p);
}

// phase(y) * |y|^(e) componentwise; the duality map between l^p spheres.
inline Eigen::VectorXcd dual_signed_power(const Eigen::VectorXcd& y, double e) {
  Eigen::VectorXcd z(y.size());
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    const double a = std::abs(y[i]);
    z[i] = a == 0.0 ? Complex(0, 0) : y[i] / a * std::pow(a, e);
  }
  return z;
}

inline double max_abs_col_sum(const Eigen::MatrixXcd& a, long* witness) {
  double best = -1.0;
  for (Eigen::Index k = 0; k < a.cols(); ++k) {
    double s = 0.0;
    for (Eigen::Index j = 0; j < a.rows(); ++j) s += std::abs(a(j, k));
    if (s > best) {
      best = s;
      if (witness) *witness = static_cast<long>(k);
    }
  }
  return std::max(best, 0.0);
}

inline double max_abs_row_sum(const Eigen::MatrixXcd& a, long* witness) {
  double best = -1.0;
  for (Eigen::Index j = 0; j < a.rows(); ++j) {
    double s = 0.0;
    for (Eigen::Index k = 0; k < a.cols(); ++k) s += std::abs(a(j, k));
    if (s > best) {
      best = s;
      if (witness) *witness = static_cast<long>(j);
    }
  }
  return std::max(best, 0.0);
}

inline bool exactly_real(const Eigen::MatrixXcd& a) {
  for (Eigen::Index j = 0; j < a.rows(); ++j)
    for (Eigen::Index k = 0; k < a.cols(); ++k)
      if (a(j, k).imag() != 0.0) return false;
  return true;
}

inline bool exactly_hermitian(const Eigen::MatrixXcd& a) {
  if (a.rows() != a.cols()) return false;
  for (Eigen::Index j = 0; j < a.rows(); ++j)
    for (Eigen::Index k = j; k < a.cols(); ++k)
      if (a(j, k) != std::conj(a(k, j))) return false;
  return true;
}

// All singular values, descending (dense; Gram eigenvalues).
inline std::vector<double> dense_singular_values(const Eigen::MatrixXcd& a) {
  const bool tall = a.rows() >= a.cols();
  Eigen::MatrixXcd g = tall ? Eigen::MatrixXcd(a.adjoint() * a)
                            : Eigen::MatrixXcd(a * a.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(g, Eigen::EigenvaluesOnly);
  Eigen::VectorXd ev = es.eigenvalues();
  std::vector<double> sv(static_cast<std::size_t>(ev.size()));
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    sv[static_cast<std::size_t>(i)] = std::sqrt(std::max(ev[ev.size() - 1 - i], 0.0));
  return sv;
}

inline double dense_two_norm(const Eigen::MatrixXcd& a) {
  if (exactly_hermitian(a)) {
    if (exactly_real(a)) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a.real(), Eigen::EigenvaluesOnly);
      const auto& ev = es.eigenvalues();
      return std::max(std::abs(ev[0]), std::abs(ev[ev.size() - 1]));
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(a, Eigen::EigenvaluesOnly);
    const auto& ev = es.eigenvalues();
    return std::max(std::abs(ev[0]), std::abs(ev[ev.size() - 1]));
  }
  std::vector<double> sv = dense_singular_values(a);
  return sv.empty() ? 0.0 : sv.front();
}

// Lanczos with full reorthogonalization for the extreme eigenvalues of a
// self-adjoint operator given by `matvec` on R^n or C^n. The returned values
// are Ritz values, i.e. certified Rayleigh quotients.
template <typename Scalar>
std::pair<double, double> lanczos_extremes(
    const std::function<Eigen::Vector<Scalar, Eigen::Dynamic>(
        const Eigen::Vector<Scalar, Eigen::Dynamic>&)>& matvec,
    Eigen::Vector<Scalar, Eigen::Dynamic> start, long max_steps, double tol, long* steps_out) {
  using Vec = Eigen::Vector<Scalar, Eigen::Dynamic>;
  const Eigen::Index n = start.size();
  max_steps = std::min<long>(max_steps, n);
  std::vector<Vec> basis;
  std::vector<double> alpha, beta;
  double nrm = start.norm();
  if (nrm == 0.0) return {0.0, 0.0};
  basis.push_back(start / nrm);

  double lo_prev = 0.0, hi_prev = 0.0;
  long stable = 0;
  auto tridiag_extremes = [&]() {
    const Eigen::Index k = static_cast<Eigen::Index>(alpha.size());
    Eigen::VectorXd d(k), e(std::max<Eigen::Index>(k - 1, 0));
    for (Eigen::Index i = 0; i < k; ++i) d[i] = alpha[static_cast<std::size_t>(i)];
    for (Eigen::Index i = 0; i + 1 < k; ++i) e[i] = beta[static_cast<std::size_t>(i)];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(d, e, Eigen::EigenvaluesOnly);
    const auto& ev = es.eigenvalues();
    return std::make_pair(ev[0], ev[ev.size() - 1]);
  };

  for (long step = 0; step < max_steps; ++step) {
    Vec w = matvec(basis.back());
    const double a = std::real(basis.back().dot(w));
    alpha.push_back(a);
    w -= a * basis.back();
    if (basis.size() >= 2) w -= beta.back() * basis[basis.size() - 2];
    // full reorthogonalization, twice
    for (int pass = 0; pass < 2; ++pass)
      for (const Vec& q : basis) w -= q.dot(w) * q;
    const double b = w.norm();
    if ((step + 1) % 8 == 0 || step + 1 == max_steps || b < 1e-13) {
      auto [lo, hi] = tridiag_extremes();
      const double scale = std::max({std::abs(lo), std::abs(hi), 1e-300});
      if (std::abs(lo - lo_prev) <= tol * scale && std::abs(hi - hi_prev) <= tol * scale)
        ++stable;
      else
        stable = 0;
      lo_prev = lo;
      hi_prev = hi;
      if (stable >= 3 || b < 1e-13) break;
    }
    if (b < 1e-13) break;
    beta.push_back(b);
    basis.push_back(w / b);
  }
  if (steps_out) *steps_out = static_cast<long>(alpha.size());
  auto [lo, hi] = tridiag_extremes();
  return {lo, hi};
}

template <typename Scalar>
Eigen::Vector<Scalar, Eigen::Dynamic> smooth_start(Eigen::Index n);

template <>
inline Eigen::VectorXd smooth_start<double>(Eigen::Index n) {
  Eigen::VectorXd v(n);
  for (Eigen::Index j = 0; j < n; ++j)
    v[j] = std::sin(kPi * static_cast<double>(j + 1) / static_cast<double>(n + 1));
  return v;
}

template <>
inline Eigen::VectorXcd smooth_start<Complex>(Eigen::Index n) {
  return smooth_start<double>(n).cast<Complex>();
}

template <typename Scalar>
Eigen::Vector<Scalar, Eigen::Dynamic> random_start(Eigen::Index n, Rng& rng);

template <>
inline Eigen::VectorXd random_start<double>(Eigen::Index n, Rng& rng) {
  Eigen::VectorXd v(n);
  for (Eigen::Index j = 0; j < n; ++j) v[j] = rng.uniform(-1.0, 1.0);
  return v;
}

template <>
inline Eigen::VectorXcd random_start<Complex>(Eigen::Index n, Rng& rng) {
  Eigen::VectorXcd v(n);
  for (Eigen::Index j = 0; j < n; ++j) v[j] = rng.uniform_complex(-1.0, 1.0);
  return v;
}

// Certified lower bound for the two-norm of a large section; a smooth start
// (structured kernels have smooth top singular vectors) plus one random start.
template <typename Mat>
double lanczos_two_norm_lower(const Mat& a, bool hermitian, std::uint64_t seed, long max_steps,
                              long* iters) {
  using Scalar = typename Mat::Scalar;
  using Vec = Eigen::Vector<Scalar, Eigen::Dynamic>;
  std::function<Vec(const Vec&)> op;
  Eigen::Index n;
  if (hermitian) {
    n = a.rows();
    op = [&a](const Vec& x) { return Vec(a * x); };
  } else {
    n = a.cols();
    op = [&a](const Vec& x) { return Vec(a.adjoint() * (a * x)); };
  }
  double best = 0.0;
  long total = 0;
  Rng rng(seed);
  for (int s = 0; s < 2; ++s) {
    Vec start = s == 0 ? smooth_start<Scalar>(n) : random_start<Scalar>(n, rng);
    long steps = 0;
    auto [lo, hi] = lanczos_extremes<Scalar>(op, start, max_steps, 1e-12, &steps);
    total += steps;
    best = std::max(best, hermitian ? std::max(std::abs(lo), std::abs(hi))
                                    : std::sqrt(std::max(hi, 0.0)));
  }
  if (iters) *iters = total;
  return best;
}

// Boyd's power method: x <- dual_q(A^H dual_p(A x)), every iterate yields the
// certified lower bound ||A x||_p / ||x||_p.
inline double boyd_lower_bound(const Eigen::MatrixXcd& a, double p, const PNormRequest& req,
                               long* iters_out, std::string* diagnostic = nullptr) {
  const double q = p / (p - 1.0);
  const Eigen::Index nc = a.cols();
  double best = 0.0;
  long iters = 0;
  Rng seeder(req.seed);

  long witness_col = 0;
  max_abs_col_sum(a, &witness_col);

  for (int s = 0; s < std::max(req.multistarts, 1); ++s) {
    Eigen::VectorXcd x;
    if (s == 0) {
      x = Eigen::VectorXcd::Zero(nc);
      x[witness_col] = Complex(1, 0);
    } else if (s == 1) {
      x = Eigen::VectorXcd::Ones(nc);
    } else if (s == 2) {
      x = smooth_start<Complex>(nc);
    } else {
      Rng rng(seeder.next_u64());
      x = Eigen::VectorXcd(nc);
      for (Eigen::Index i = 0; i < nc; ++i)
        x[i] = (s % 2 == 1) ? Complex(rng.sign(), 0) : rng.uniform_complex(-1.0, 1.0);
    }
    double nx = vector_pnorm(x, p);
    if (nx == 0.0) continue;
    x /= nx;

    double gamma_prev = -1.0;
    int flat = 0;
    for (long it = 0; it < req.max_iter; ++it) {
      Eigen::VectorXcd y = a * x;
      const double gamma = vector_pnorm(y, p);
      ++iters;
      if (!std::isfinite(gamma)) {  // divergence: keep the best certified value
        if (diagnostic)
          *diagnostic = "start " + std::to_string(s) + " diverged at iteration " +
                        std::to_string(it) + "; best certified value retained";
        break;
      }
      best = std::max(best, gamma);
      if (gamma == 0.0) break;
      if (gamma_prev >= 0.0 && std::abs(gamma - gamma_prev) <= req.tol * std::max(1.0, gamma)) {
        if (++flat >= 3) break;
      } else {
        flat = 0;
      }
      gamma_prev = gamma;
      y /= vector_pnorm(y, kInf) + 1e-300;
      Eigen::VectorXcd z = dual_signed_power(y, p - 1.0);
      Eigen::VectorXcd w = a.adjoint() * z;
      w /= vector_pnorm(w, kInf) + 1e-300;
      x = dual_signed_power(w, q - 1.0);
      const double nrm = vector_pnorm(x, p);
      if (nrm == 0.0 || !std::isfinite(nrm)) break;
      x /= nrm;
    }
  }
  if (iters_out) *iters_out = iters;
  return best;
}

}  // namespace detail

// Two-sided p -> p norm estimate of a dense section; see the header comment
// for the per-p strategy.
inline NormEstimate matrix_pnorm(const FiniteSection& a, const PNormRequest& req) {
  if (a.row_count() == 0 || a.col_count() == 0)
    throw std::invalid_argument("matrix_pnorm: empty section");
  const double p = req.p;
  if (!(p >= 1.0)) throw std::invalid_argument("matrix_pnorm: need p >= 1");

  NormEstimate est;
  est.p = p;
  est.seed = req.seed;

  if (p == 1.0) {
    long witness = 0;
    est.lower = est.upper = detail::max_abs_col_sum(a.entries, &witness);
    est.method = NormMethod::exact_column_sums;
    est.note = "witness column " + std::to_string(a.cols.lo + witness);
    return est;
  }
  if (p == kInf) {
    long witness = 0;
    est.lower = est.upper = detail::max_abs_row_sum(a.entries, &witness);
    est.method = NormMethod::exact_row_sums;
    est.note = "witness row " + std::to_string(a.rows.lo + witness);
    return est;
  }

  const double n1 = detail::max_abs_col_sum(a.entries, nullptr);
  const double ninf = detail::max_abs_row_sum(a.entries, nullptr);
  const bool dense_ok = std::max(a.row_count(), a.col_count()) <= detail::kDenseSpectralCap;

  if (p == 2.0) {
    if (dense_ok) {
      est.lower = est.upper = detail::dense_two_norm(a.entries);
      est.method = NormMethod::dense_spectral;
      return est;
    }
    long iters = 0;
    const bool herm = detail::exactly_hermitian(a.entries);
    double lower;
    if (detail::exactly_real(a.entries)) {
      Eigen::MatrixXd ar = a.entries.real();
      lower = detail::lanczos_two_norm_lower(ar, herm, req.seed, std::max<long>(req.max_iter, 64),
                                             &iters);
    } else {
      lower = detail::lanczos_two_norm_lower(a.entries, herm, req.seed,
                                             std::max<long>(req.max_iter, 64), &iters);
    }
    est.lower = lower;
    est.upper = std::min(std::sqrt(n1 * ninf), a.entries.norm());
    est.method = NormMethod::lanczos;
    est.iterations = iters;
    est.note = "lower: Lanczos Rayleigh; upper: min(sqrt(|A|_1 |A|_inf), |A|_F)";
    if (est.lower > est.upper) est.lower = est.upper;
    return est;
  }

  // General p: interpolation uppers from the exact 1/2/inf values.
  double p2_upper;
  if (dense_ok) {
    p2_upper = detail::dense_two_norm(a.entries);
  } else {
    p2_upper = std::min(std::sqrt(n1 * ninf), a.entries.norm());
  }
  double upper = std::pow(n1, 1.0 / p) * std::pow(ninf, 1.0 - 1.0 / p);
  if (p < 2.0) {
    const double theta = 2.0 / p - 1.0;  // between p=1 and p=2
    upper = std::min(upper, std::pow(n1, theta) * std::pow(p2_upper, 1.0 - theta));
  } else {
    const double theta = 2.0 / p;  // between p=2 and p=inf
    upper = std::min(upper, std::pow(p2_upper, theta) * std::pow(ninf, 1.0 - theta));
  }

  // primal route plus the adjoint-dual route (|A^H|_q = |A|_p exactly)
  long iters = 0;
  std::string diagnostic;
  double lower = detail::boyd_lower_bound(a.entries, p, req, &iters, &diagnostic);
  {
    const double q = p / (p - 1.0);
    long dual_iters = 0;
    const Eigen::MatrixXcd ah = a.entries.adjoint();
    lower = std::max(lower, detail::boyd_lower_bound(ah, q, req, &dual_iters, &diagnostic));
    iters += dual_iters;
  }
  est.note = diagnostic;
  if (lower > upper + std::max(req.tol, 1e-12 * upper))
    throw std::runtime_error(
        "matrix_pnorm: certified lower bound " + std::to_string(lower) +
        " exceeds interpolation upper bound " + std::to_string(upper) +
        "; numerical inconsistency");
  est.lower = std::min(lower, upper);
  est.upper = upper;
  est.method = NormMethod::power_iteration;
  est.iterations = iters;
  return est;
}

// Interval bracket for ||a||_{M^p} = ||L(a)||_{p->p} from a coefficient window:
//   lower = max(sup |a| of the reconstructed polynomial when the window is the
//               whole support, p-norm lower bound of a finite Laurent section),
//   upper = min(||a||_W, ||a||_W^theta ||a||_inf^(1-theta)), theta = |2/p - 1|,
// with +inf when no summable certificate exists. Crossed bounds (roundoff)
// are widened and flagged in the note.
inline NormEstimate mp_norm_interval(const FourierSequence& seq, double p, long section_size) {
  if (!(p >= 1.0)) throw std::invalid_argument("mp_norm_interval: need p >= 1");
  NormEstimate est;
  est.p = p;
  est.method = NormMethod::wiener_interval;

  const bool exact_support = seq.decay() == DecayClass::finite_support;

  double sup = -1.0;
  if (exact_support) sup = sup_norm(SymbolSpec::fourier_poly(seq), 1024);

  // Lower bound from a symmetric Laurent section.
  double section_lower = 0.0;
  long m = -1;
  if (exact_support) {
    m = std::min<long>((section_size - 1) / 2, kSectionCap / 2 - 1);
  } else if (seq.lo() <= 0 && seq.hi() >= 0) {
    m = std::min<long>((section_size - 1) / 2, std::min(-seq.lo(), seq.hi()) / 2);
  }
  if (m >= 0) {
    FiniteSection sec = section(OperatorSpec::laurent(seq), IndexRange{-m, m}, IndexRange{-m, m});
    PNormRequest req;
    req.p = p;
    req.multistarts = 6;
    req.max_iter = 150;
    req.tol = 1e-9;
    NormEstimate se = matrix_pnorm(sec, req);
    section_lower = se.lower;
    est.iterations = se.iterations;
  }
  est.lower = std::max(section_lower, sup > 0.0 ? sup : 0.0);

  double upper = kInf;
  if (seq.decay() == DecayClass::finite_support || seq.decay() == DecayClass::summable) {
    const double w = wiener_norm(seq);
    upper = w;
    if (sup >= 0.0) {
      const double theta = std::abs(2.0 / p - 1.0);
      upper = std::min(upper, std::pow(w, theta) * std::pow(sup, 1.0 - theta));
    }
  }
  est.upper = upper;

  if (est.lower > est.upper) {
    est.note = "bounds crossed by roundoff; widened";
    std::swap(est.lower, est.upper);
  }
  return est;
}

// max over the given shifts n of the certified lower bound for
// || V^{-n} P* A P V^n || on [0,window)^2. For A = T(a) + H(psi) + K with psi
// and K vanishing at infinity this is a lower-bound proxy for ||a||_{M^p}
// that survives every fixed compact perturbation.
inline double limit_lower_bound(const OperatorSpec& spec, double p, const std::vector<long>& shifts,
                                long window, const PNormRequest& base = PNormRequest{}) {
  if (shifts.empty()) throw std::invalid_argument("limit_lower_bound: no shifts");
  for (std::size_t i = 1; i < shifts.size(); ++i)
    if (shifts[i] <= shifts[i - 1])
      throw std::invalid_argument("limit_lower_bound: shifts must be increasing");
  if (window < 1) throw std::invalid_argument("limit_lower_bound: window must be >= 1");

  PNormRequest req = base;
  req.p = p;
  double best = 0.0;
  for (long n : shifts) {
    FiniteSection c = shifted_compression(spec, n, IndexRange{0, window - 1});
    best = std::max(best, matrix_pnorm(c, req).lower);
  }
  return best;
}

struct SandwichReport {
  double p = 2.0;
  long n = 0;
  NormEstimate symbol_norm;  // ||a||_{M^p} bracket
  NormEstimate hankel_norm;  // ||H(psi)+K|| at size n
  NormEstimate total_norm;   // ||A+K|| at size n
  bool lower_bound_ok = false;
  bool upper_bound_ok = false;
  double tol = 1e-6;
  std::uint64_t seed = 0;
  std::string inequality = "max(|a|_Mp, |H(psi)+K|/2) <= |A+K| <= |a|_Mp + |H(psi)+K|";
  std::string warning;
};

// Evaluates both sides of the norm sandwich for A = T(a) + H(psi) (+K) at
// size n, with ||a||_{M^p} replaced by its interval. The lower check uses the
// interval lower ends minus tol, the upper check the upper ends plus tol.
// K is meant to be a fixed compact (finite-rank) perturbation; if its section
// still has mass at the window horizon a warning is recorded, since an
// n-dependent K voids the sandwich.
inline SandwichReport sandwich_check_sequence(const SymbolSpec& a, const FourierSequence& psi,
                                              const std::optional<OperatorSpec>& k, double p,
                                              long n, double tol = 1e-6,
                                              std::uint64_t seed = 0x5eedULL) {
  if (psi.decay() != DecayClass::c0 && psi.decay() != DecayClass::summable &&
      psi.decay() != DecayClass::finite_support)
    throw std::invalid_argument("sandwich_check_sequence: psi must vanish at infinity");
  if (n < 2) throw std::invalid_argument("sandwich_check_sequence: n must be >= 2");

  const IndexRange win{0, n - 1};
  const IndexRange lags{-(n - 1), n - 1};
  const long grid = detail::next_power_of_two(std::max(4 * lags.length(), 1024L));
  const FourierSequence ahat = fourier_coefficients(a, lags, grid);

  std::vector<OperatorSpec> a_terms{OperatorSpec::toeplitz(ahat), OperatorSpec::hankel(psi)};
  std::vector<OperatorSpec> h_terms{OperatorSpec::hankel(psi)};
  if (k) {
    a_terms.push_back(*k);
    h_terms.push_back(*k);
  }

  PNormRequest req;
  req.p = p;
  req.seed = seed;

  SandwichReport rep;
  rep.p = p;
  rep.n = n;
  rep.tol = tol;
  rep.seed = seed;
  rep.total_norm = matrix_pnorm(section(OperatorSpec::sum(a_terms), win, win), req);
  rep.hankel_norm = matrix_pnorm(section(OperatorSpec::sum(h_terms), win, win), req);
  rep.symbol_norm = mp_norm_interval(ahat, p, n);

  const double lower_rhs = std::max(rep.symbol_norm.lower, 0.5 * rep.hankel_norm.lower);
  rep.lower_bound_ok = rep.total_norm.upper >= lower_rhs - tol;
  rep.upper_bound_ok = rep.total_norm.lower <= rep.symbol_norm.upper + rep.hankel_norm.upper + tol;

  if (k) {
    FiniteSection horizon = shifted_compression(*k, n / 2, IndexRange{0, std::max(n / 2, 2L) - 1});
    if (horizon.max_abs() > 1e-12)
      rep.warning =
          "compact perturbation K does not vanish inside the window; the sandwich "
          "holds for fixed compact K only, not for n-dependent sections";
  }
  return rep;
}

// Hartman-style compactness probe: number of singular values of the n x n
// Hankel section above the threshold, per size. Bounded counts across sizes
// are the finite-section signature of a compact Hankel operator (continuous
// symbol), growing counts of a non-compact one.
inline std::vector<long> hartman_probe(const FourierSequence& psi, const std::vector<long>& sizes,
                                       double threshold) {
  if (sizes.empty()) throw std::invalid_argument("hartman_probe: no sizes");
  for (std::size_t i = 1; i < sizes.size(); ++i)
    if (sizes[i] <= sizes[i - 1])
      throw std::invalid_argument("hartman_probe: sizes must be increasing");
  if (sizes.back() > detail::kDenseSpectralCap)
    throw std::invalid_argument("hartman_probe: sizes above the dense spectral cap (1024)");

  std::vector<long> counts;
  counts.reserve(sizes.size());
  for (long n : sizes) {
    FiniteSection h =
        section(OperatorSpec::hankel(psi), IndexRange{0, n - 1}, IndexRange{0, n - 1});
    const std::vector<double> sv = detail::dense_singular_values(h.entries);
    long c = 0;
    for (double s : sv)
      if (s > threshold) ++c;
    counts.push_back(c);
  }
  return counts;
}

}  // namespace toephank
