#include <doctest.h>

#include <cmath>

#include "toephank/displacement.hpp"
#include "toephank/pnorm.hpp"

using namespace toephank;

namespace {

FourierSequence seq_z_plus_zinv() {
  return FourierSequence(IndexRange{-1, 1}, {Complex(1, 0), Complex(0, 0), Complex(1, 0)});
}

FourierSequence hilbert_seq(long hi) {
  std::vector<Complex> v;
  for (long j = 1; j <= hi; ++j) v.emplace_back(1.0 / static_cast<double>(j), 0.0);
  return FourierSequence(IndexRange{1, hi}, std::move(v), DecayClass::c0);
}

FourierSequence random_lags(detail::Rng& rng, long half) {
  std::vector<Complex> v;
  for (long j = -half; j <= half; ++j) v.push_back(rng.uniform_complex(-1.0, 1.0));
  return FourierSequence(IndexRange{-half, half}, std::move(v));
}

// values on a dyadic grid: every sum/difference in the pipeline is exact
Complex dyadic(detail::Rng& rng) {
  const double grid = 1024.0;
  const double re = std::floor(rng.uniform(-grid, grid)) / grid;
  const double im = std::floor(rng.uniform(-grid, grid)) / grid;
  return {re, im};
}

FiniteSection th_section(const FourierSequence& phi, const FourierSequence& psi, long n) {
  return section(OperatorSpec::sum({OperatorSpec::toeplitz(phi), OperatorSpec::hankel(psi)}),
                 IndexRange{0, n - 1}, IndexRange{0, n - 1});
}

}  // namespace

TEST_CASE("displacement transform vanishes on Toeplitz+Hankel sums") {
  detail::Rng rng(5);
  FourierSequence phi = random_lags(rng, 15);
  std::vector<Complex> pv;
  for (long j = 1; j <= 31; ++j) pv.push_back(rng.uniform_complex(-1.0, 1.0));
  FourierSequence psi(IndexRange{1, 31}, std::move(pv));
  FiniteSection a = th_section(phi, psi, 16);
  // entrywise sums round once each; the four-term identity cancels to a few ulp
  CHECK(displacement_transform(a).max_abs() <= 8 * std::numeric_limits<double>::epsilon());
}

TEST_CASE("displacement transform is exactly zero on dyadic Toeplitz+Hankel data") {
  detail::Rng rng(6);
  std::vector<Complex> tv, pv;
  for (long j = -15; j <= 15; ++j) tv.push_back(dyadic(rng));
  for (long j = 1; j <= 31; ++j) pv.push_back(dyadic(rng));
  FiniteSection a = th_section(FourierSequence(IndexRange{-15, 15}, tv),
                               FourierSequence(IndexRange{1, 31}, pv), 16);
  CHECK(displacement_transform(a).max_abs() == 0.0);
}

TEST_CASE("displacement transform of a checkerboard section is zero") {
  FiniteSection c = section(OperatorSpec::checkerboard(Complex(0.7, 0.2), Complex(-1, 3)),
                            IndexRange{0, 7}, IndexRange{0, 7});
  CHECK(displacement_transform(c).max_abs() == 0.0);
}

TEST_CASE("displacement transform against a brute-force evaluation") {
  FiniteSection a = section(OperatorSpec::finite_rank({{1, 1, Complex(1, 0)}}), IndexRange{0, 3},
                            IndexRange{0, 3});
  FiniteSection d = displacement_transform(a);
  CHECK(d.rows.lo == 1);
  CHECK(d.rows.hi == 2);
  // oracle: direct formula on the stored entries
  for (long j = 1; j <= 2; ++j)
    for (long k = 1; k <= 2; ++k) {
      Complex expect = a.at(j - 1, k) + a.at(j + 1, k) - a.at(j, k - 1) - a.at(j, k + 1);
      CHECK(d.at(j, k) == expect);
    }
  // the center of a lone spike satisfies the relation, its four neighbours break it
  CHECK(d.at(1, 1) == Complex(0, 0) + Complex(0, 0));
  CHECK(d.at(2, 1) == Complex(1, 0));
  CHECK(d.at(1, 2) == Complex(-1, 0));
}

TEST_CASE("displacement transform rejects tiny sections") {
  FiniteSection a{IndexRange{0, 1}, IndexRange{0, 1}, Eigen::MatrixXcd::Zero(2, 2)};
  CHECK_THROWS_AS(displacement_transform(a), std::invalid_argument);
}

TEST_CASE("structure predicates") {
  detail::Rng rng(7);
  FourierSequence phi = random_lags(rng, 7);
  FiniteSection t =
      section(OperatorSpec::toeplitz(phi), IndexRange{0, 7}, IndexRange{0, 7});
  CHECK(is_toeplitz(t, 1e-14));
  CHECK_FALSE(is_hankel(t, 1e-14));

  FiniteSection c = section(OperatorSpec::checkerboard(Complex(1, 0), Complex(0, 1)),
                            IndexRange{0, 7}, IndexRange{0, 7});
  CHECK(is_toeplitz(c, 0.0));
  CHECK(is_hankel(c, 0.0));
  CHECK(is_checkerboard(c, 0.0));

  // 1e-3 noise is visible at tol 1e-6
  FiniteSection noisy = t;
  noisy.at(3, 2) += Complex(1e-3, 0);
  CHECK_FALSE(is_toeplitz(noisy, 1e-6));
}

TEST_CASE("is_checkerboard agrees with the conjunction of the two predicates") {
  detail::Rng rng(8);
  for (int rep = 0; rep < 20; ++rep) {
    Eigen::MatrixXcd m(5, 5);
    for (int j = 0; j < 5; ++j)
      for (int k = 0; k < 5; ++k) m(j, k) = rng.uniform_complex(-1.0, 1.0);
    FiniteSection s{IndexRange{0, 4}, IndexRange{0, 4}, m};
    const double tol = rng.uniform(0.0, 2.0);
    CHECK(is_checkerboard(s, tol) == (is_toeplitz(s, tol) && is_hankel(s, tol)));
  }
}

TEST_CASE("extract recovers a pure Hankel matrix exactly") {
  const long n = 64;
  FourierSequence psi = hilbert_seq(2 * n - 1);
  FiniteSection a =
      section(OperatorSpec::hankel(psi), IndexRange{0, n - 1}, IndexRange{0, n - 1});
  Decomposition d = extract(a, 1e-10);
  for (long m = -(n - 1); m <= n - 1; ++m) CHECK(std::abs(d.toeplitz_part.at(m)) == 0.0);
  for (long j = 1; j <= 2 * n - 1; ++j) CHECK(d.hankel_part.at(j) == psi.at(j));
  CHECK(d.checkerboard_even == Complex(0, 0));
  CHECK(d.checkerboard_odd == Complex(0, 0));
  CHECK(d.residual <= 1e-14);
}

TEST_CASE("extract canonicalizes a pure Toeplitz matrix") {
  detail::Rng rng(9);
  const long n = 32;
  FourierSequence phi = random_lags(rng, n - 1);
  FiniteSection a =
      section(OperatorSpec::toeplitz(phi), IndexRange{0, n - 1}, IndexRange{0, n - 1});
  Decomposition d = extract(a, 1e-10);
  CHECK(d.canonical);
  // the raw Hankel part (phi_0, phi_-1 alternating) moves into the checkerboard
  for (long j = 1; j <= 2 * n - 1; ++j) CHECK(std::abs(d.hankel_part.at(j)) <= 1e-14);
  for (long m = -(n - 1); m <= n - 1; ++m)
    CHECK(std::abs(d.toeplitz_part.at(m) - phi.at(m)) <= 1e-14);
  CHECK(std::abs(d.checkerboard_even - phi.at(0)) <= 1e-14);
  CHECK(std::abs(d.checkerboard_odd - phi.at(-1)) <= 1e-14);
  CHECK(d.residual <= 1e-13);
}

TEST_CASE("extract round-trips a random Toeplitz+Hankel sum at size 64") {
  detail::Rng rng(10);
  const long n = 64;
  FourierSequence phi = random_lags(rng, n - 1);
  std::vector<Complex> pv;
  for (long j = 1; j <= 2 * n - 1; ++j)
    pv.push_back(rng.uniform_complex(-1.0, 1.0) / static_cast<double>(j));
  FourierSequence psi(IndexRange{1, 2 * n - 1}, std::move(pv), DecayClass::c0);
  FiniteSection a = th_section(phi, psi, n);
  Decomposition d = extract(a, 1e-10);
  CHECK(d.residual <= 1e-12);
  // the parts differ from the inputs by at most one checkerboard pair
  const Complex de = d.toeplitz_part.at(0) - phi.at(0);
  const Complex dodd = d.toeplitz_part.at(-1) - phi.at(-1);
  for (long m = -(n - 1); m <= n - 1; ++m) {
    const Complex expect = detail::mod(m, 2) == 0 ? de : dodd;
    CHECK(std::abs(d.toeplitz_part.at(m) - phi.at(m) - expect) <= 1e-12);
  }
  for (long j = 1; j <= 2 * n - 1; ++j) {
    const Complex expect = detail::mod(j, 2) == 1 ? -de : -dodd;
    CHECK(std::abs(d.hankel_part.at(j) - psi.at(j) - expect) <= 1e-12);
  }
}

TEST_CASE("extract refuses matrices that are not Toeplitz+Hankel") {
  detail::Rng rng(11);
  Eigen::MatrixXcd m(8, 8);
  for (int j = 0; j < 8; ++j)
    for (int k = 0; k < 8; ++k) m(j, k) = rng.uniform_complex(-1.0, 1.0);
  FiniteSection s{IndexRange{0, 7}, IndexRange{0, 7}, m};
  CHECK_THROWS_AS(extract(s, 1e-8), std::domain_error);
}

TEST_CASE("extract is idempotent through reconstruction (bitwise on dyadic data)") {
  detail::Rng rng(12);
  const long n = 64;  // trailing quarter has power-of-two length: exact means
  std::vector<Complex> tv, pv;
  for (long j = -(n - 1); j <= n - 1; ++j) tv.push_back(dyadic(rng));
  for (long j = 1; j <= 2 * n - 1; ++j) pv.push_back(dyadic(rng));
  FiniteSection a = th_section(FourierSequence(IndexRange{-(n - 1), n - 1}, tv),
                               FourierSequence(IndexRange{1, 2 * n - 1}, pv), n);
  Decomposition d1 = extract(a, 1e-10);
  FiniteSection r1 = reconstruct(d1, a.rows);
  Decomposition d2 = extract(r1, 1e-10);
  for (long m = -(n - 1); m <= n - 1; ++m)
    CHECK(d1.toeplitz_part.at(m) == d2.toeplitz_part.at(m));
  for (long j = 1; j <= 2 * n - 1; ++j) CHECK(d1.hankel_part.at(j) == d2.hankel_part.at(j));
  CHECK(d1.checkerboard_even == d2.checkerboard_even);
  CHECK(d1.checkerboard_odd == d2.checkerboard_odd);
  CHECK(d2.residual == 0.0);
}

TEST_CASE("extract idempotence on generic data is exact to a few ulp") {
  detail::Rng rng(13);
  const long n = 48;
  FourierSequence phi = random_lags(rng, n - 1);
  std::vector<Complex> pv;
  for (long j = 1; j <= 2 * n - 1; ++j)
    pv.push_back(rng.uniform_complex(-1.0, 1.0) / static_cast<double>(j * j));
  FourierSequence psi(IndexRange{1, 2 * n - 1}, std::move(pv));
  FiniteSection a = th_section(phi, psi, n);
  Decomposition d1 = extract(a, 1e-10);
  Decomposition d2 = extract(reconstruct(d1, a.rows), 1e-10);
  for (long m = -(n - 1); m <= n - 1; ++m)
    CHECK(std::abs(d1.toeplitz_part.at(m) - d2.toeplitz_part.at(m)) <= 1e-14);
  for (long j = 1; j <= 2 * n - 1; ++j)
    CHECK(std::abs(d1.hankel_part.at(j) - d2.hankel_part.at(j)) <= 1e-14);
}

TEST_CASE("checkerboard sections grow linearly in norm") {
  PNormRequest req;
  double prev = 0.0;
  for (long n : {8L, 16L, 32L, 64L, 128L}) {
    FiniteSection c = section(OperatorSpec::checkerboard(Complex(1, 0), Complex(-1, 0)),
                              IndexRange{0, n - 1}, IndexRange{0, n - 1});
    const double norm = matrix_pnorm(c, req).lower;
    CHECK(norm >= static_cast<double>(n) / 2.0 * 1.0 - 1e-9);
    if (prev > 0.0) CHECK(norm / prev >= 1.5);
    prev = norm;
  }
}

TEST_CASE("checkerboard lower bound holds for random parities") {
  detail::Rng rng(14);
  PNormRequest req;
  for (int rep = 0; rep < 5; ++rep) {
    const Complex alpha = rng.uniform_complex(-1.0, 1.0);
    const Complex beta = rng.uniform_complex(-1.0, 1.0);
    const long n = 8 + 4 * rep;
    FiniteSection c = section(OperatorSpec::checkerboard(alpha, beta), IndexRange{0, n - 1},
                              IndexRange{0, n - 1});
    const double norm = matrix_pnorm(c, req).lower;
    CHECK(norm >= static_cast<double>(n) / 2.0 * std::max(std::abs(alpha), std::abs(beta)) - 1e-9);
  }
}

TEST_CASE("two-sided extraction of a pure Laurent matrix") {
  detail::Rng rng(15);
  const long m = 16;
  FourierSequence ah = random_lags(rng, 2 * m);
  FiniteSection a =
      section(OperatorSpec::laurent(ah), IndexRange{-m, m}, IndexRange{-m, m});
  auto [a2, b2] = extract_two_sided(a, 1e-10);
  for (long l = -2 * m; l <= 2 * m; ++l) CHECK(std::abs(a2.at(l) - ah.at(l)) <= 1e-13);
  for (long s = b2.lo(); s <= b2.hi(); ++s) CHECK(std::abs(b2.at(s)) <= 1e-13);
}

TEST_CASE("two-sided extraction of a flipped Laurent matrix") {
  detail::Rng rng(16);
  const long m = 16;
  std::vector<Complex> bv;
  for (long j = -2 * m - 1; j <= 2 * m + 1; ++j)
    bv.push_back(rng.uniform_complex(-1.0, 1.0) /
                 (1.0 + static_cast<double>(std::labs(j))));
  FourierSequence bh(IndexRange{-2 * m - 1, 2 * m + 1}, std::move(bv));
  // flip-closed window so that the composed section equals the true composite
  OperatorSpec op = OperatorSpec::compose({OperatorSpec::laurent(bh), OperatorSpec::flip()});
  FiniteSection a = section(op, IndexRange{-m, m - 1}, IndexRange{-m, m - 1});
  auto [a2, b2] = extract_two_sided(a, 1e-10);
  for (long l = a2.lo(); l <= a2.hi(); ++l) CHECK(std::abs(a2.at(l)) <= 1e-12);
  for (long s = b2.lo(); s <= b2.hi(); ++s) CHECK(std::abs(b2.at(s) - bh.at(s)) <= 1e-12);
}

TEST_CASE("two-sided extraction round-trips a random L(a) + L(b)J") {
  detail::Rng rng(17);
  const long m = 32;
  FourierSequence ah = random_lags(rng, 2 * m);
  std::vector<Complex> bv;
  for (long j = -2 * m - 1; j <= 2 * m + 1; ++j)
    bv.push_back(rng.uniform_complex(-1.0, 1.0) /
                 (1.0 + std::abs(static_cast<double>(j))));
  FourierSequence bh(IndexRange{-2 * m - 1, 2 * m + 1}, std::move(bv));

  FiniteSection a{IndexRange{-m, m}, IndexRange{-m, m}, Eigen::MatrixXcd(2 * m + 1, 2 * m + 1)};
  for (long j = -m; j <= m; ++j)
    for (long k = -m; k <= m; ++k) a.at(j, k) = ah.at(j - k) + bh.at(j + k + 1);

  auto [a2, b2] = extract_two_sided(a, 1e-10);
  double res = 0.0;
  for (long j = -m; j <= m; ++j)
    for (long k = -m; k <= m; ++k)
      res = std::max(res, std::abs(a.at(j, k) - a2.at(j - k) - b2.at(j + k + 1)));
  CHECK(res <= 1e-12);
}

TEST_CASE("cesaro split of a summable sequence tends to zero parities") {
  FourierSequence phi = [] {
    std::vector<Complex> v;
    for (long j = -200; j <= 200; ++j)
      v.emplace_back(std::pow(2.0, -static_cast<double>(std::labs(j))), 0.0);
    return FourierSequence(IndexRange{-200, 200}, std::move(v), DecayClass::summable);
  }();
  double prev = kInf;
  for (long n : {10L, 20L, 40L}) {
    auto [rem, pair] = cesaro_checkerboard_split(phi, n);
    const double mag = std::max(std::abs(pair.first), std::abs(pair.second));
    // bounded by the tail sum / (2n+1)
    CHECK(mag <= 4.0 / (2.0 * static_cast<double>(n) + 1.0));
    CHECK(mag <= prev + 1e-15);
    prev = mag;
  }
}

TEST_CASE("cesaro split reproduces an exact checkerboard sequence") {
  const Complex alpha(0.4, -0.3), beta(-1.25, 0.5);
  std::vector<Complex> v;
  for (long j = -50; j <= 50; ++j) v.push_back(detail::mod(j, 2) == 0 ? alpha : beta);
  FourierSequence phi(IndexRange{-50, 50}, std::move(v), DecayClass::bounded);
  auto [rem, pair] = cesaro_checkerboard_split(phi, 10);
  CHECK(std::abs(pair.first - alpha) <= 1e-15);
  CHECK(std::abs(pair.second - beta) <= 1e-15);
  for (long m = rem.lo(); m <= rem.hi(); ++m) CHECK(std::abs(rem.at(m)) <= 1e-15);
}

TEST_CASE("cesaro split separates 2cos lags from a checkerboard at rate 1/n") {
  const long n = 50, w = 2 * n + 8;
  std::vector<Complex> v;
  for (long j = -w; j <= w; ++j) {
    Complex base = (std::labs(j) == 1) ? Complex(1, 0) : Complex(0, 0);
    v.push_back(base + (detail::mod(j, 2) == 0 ? Complex(1, 0) : Complex(-1, 0)));
  }
  FourierSequence phi(IndexRange{-w, w}, std::move(v), DecayClass::bounded);
  auto [rem, pair] = cesaro_checkerboard_split(phi, n);
  const double rate = 3.0 / (2.0 * static_cast<double>(n) + 1.0);
  CHECK(std::abs(pair.first - Complex(1, 0)) <= rate);
  CHECK(std::abs(pair.second - Complex(-1, 0)) <= rate);
  for (long m : {-1L, 0L, 1L, 2L}) {
    const Complex base = (std::labs(m) == 1) ? Complex(1, 0) : Complex(0, 0);
    CHECK(std::abs(rem.at(m) - base) <= rate);
  }
}

TEST_CASE("cesaro split validates its window") {
  FourierSequence phi = FourierSequence::zero(IndexRange{-10, 10});
  CHECK_THROWS_AS(cesaro_checkerboard_split(phi, 10), std::invalid_argument);
}
