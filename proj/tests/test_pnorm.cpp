#include <doctest.h>

#include <cmath>

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

FiniteSection toeplitz_section(const FourierSequence& s, long n) {
  return section(OperatorSpec::toeplitz(s), IndexRange{0, n - 1}, IndexRange{0, n - 1});
}

FiniteSection random_section(detail::Rng& rng, long n) {
  Eigen::MatrixXcd m(n, n);
  for (long j = 0; j < n; ++j)
    for (long k = 0; k < n; ++k) m(j, k) = rng.uniform_complex(-1.0, 1.0);
  return FiniteSection{IndexRange{0, n - 1}, IndexRange{0, n - 1}, std::move(m)};
}

}  // namespace

TEST_CASE("permutation sections are isometries for every p") {
  // cyclic permutation as a finite-rank section
  std::vector<std::tuple<long, long, Complex>> entries;
  const long n = 6;
  for (long k = 0; k < n; ++k) entries.emplace_back((k + 2) % n, k, Complex(1, 0));
  FiniteSection perm =
      section(OperatorSpec::finite_rank(entries), IndexRange{0, n - 1}, IndexRange{0, n - 1});
  for (double p : {1.0, 1.5, 2.0, 3.0, kInf}) {
    PNormRequest req;
    req.p = p;
    NormEstimate est = matrix_pnorm(perm, req);
    CHECK(est.lower == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(est.upper == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("2-norm of the 2cos Toeplitz section has a closed form") {
  PNormRequest req;
  for (long n : {4L, 16L, 64L}) {
    NormEstimate est = matrix_pnorm(toeplitz_section(seq_z_plus_zinv(), n), req);
    const double expect = 2.0 * std::cos(kPi / static_cast<double>(n + 1));
    CHECK(est.lower == doctest::Approx(expect).epsilon(1e-12));
    CHECK(est.lower == est.upper);
  }
}

TEST_CASE("exact 1- and inf-norms of a small matrix") {
  Eigen::MatrixXcd m(2, 2);
  m << 1, 2, 3, 4;
  FiniteSection s{IndexRange{0, 1}, IndexRange{0, 1}, m};
  PNormRequest req;
  req.p = 1.0;
  CHECK(matrix_pnorm(s, req).lower == 6.0);
  req.p = kInf;
  CHECK(matrix_pnorm(s, req).lower == 7.0);
}

TEST_CASE("witness indices are recorded for the exact norms") {
  Eigen::MatrixXcd m(2, 2);
  m << 1, 2, 3, 4;
  FiniteSection s{IndexRange{0, 1}, IndexRange{0, 1}, m};
  PNormRequest req;
  req.p = 1.0;
  CHECK(matrix_pnorm(s, req).note == "witness column 1");
  req.p = kInf;
  CHECK(matrix_pnorm(s, req).note == "witness row 1");
}

TEST_CASE("lower <= upper at general p and duality of the bounds") {
  detail::Rng rng(21);
  PNormRequest req;
  req.tol = 1e-8;
  req.multistarts = 8;
  for (int rep = 0; rep < 4; ++rep) {
    FiniteSection a = random_section(rng, 16);
    FiniteSection at{a.rows, a.cols, a.entries.adjoint()};
    for (double p : {1.5, 2.5, 4.0}) {
      const double q = p / (p - 1.0);
      PNormRequest rp = req, rq = req;
      rp.p = p;
      rq.p = q;
      NormEstimate ep = matrix_pnorm(a, rp);
      NormEstimate eq = matrix_pnorm(at, rq);
      CHECK(ep.lower <= ep.upper + 1e-12);
      // |A|_p = |A^H|_q: both multistart bounds land on the same value
      CHECK(std::abs(ep.lower - eq.lower) <= 2e-2 * std::max(ep.lower, eq.lower));
    }
  }
}

TEST_CASE("diagonal sections have exact general-p norms") {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(3, 3);
  m(0, 0) = Complex(0.5, 0);
  m(1, 1) = Complex(-3, 0);
  m(2, 2) = Complex(0, 2);
  FiniteSection s{IndexRange{0, 2}, IndexRange{0, 2}, m};
  for (double p : {1.3, 2.7, 5.0}) {
    PNormRequest req;
    req.p = p;
    NormEstimate est = matrix_pnorm(s, req);
    CHECK(est.lower == doctest::Approx(3.0).epsilon(1e-9));
    CHECK(est.upper == doctest::Approx(3.0).epsilon(1e-9));
  }
}

TEST_CASE("section 2-norms are nondecreasing in the section size") {
  FourierSequence psi = hilbert_seq(255);
  PNormRequest req;
  double prev = 0.0;
  for (long n : {4L, 8L, 16L, 32L, 64L, 128L}) {
    const double v =
        matrix_pnorm(section(OperatorSpec::hankel(psi), IndexRange{0, n - 1}, IndexRange{0, n - 1}),
                     req)
            .lower;
    CHECK(v >= prev - 1e-12);
    prev = v;
  }
}

TEST_CASE("the Lanczos path certifies large sections") {
  const long n = 1400;
  FiniteSection t = toeplitz_section(seq_z_plus_zinv(), n);
  PNormRequest req;
  NormEstimate est = matrix_pnorm(t, req);
  CHECK(est.method == NormMethod::lanczos);
  const double expect = 2.0 * std::cos(kPi / static_cast<double>(n + 1));
  CHECK(est.lower <= expect + 1e-10);
  CHECK(est.lower >= expect - 1e-6);
  CHECK(est.upper == doctest::Approx(2.0).epsilon(1e-12));  // sqrt(|A|_1 |A|_inf)
  CHECK(est.lower <= est.upper);
}

TEST_CASE("the Lanczos Gram branch certifies large non-Hermitian sections") {
  FourierSequence shift_sym(IndexRange{1, 1}, {Complex(1, 0)});
  const long n = 1100;
  FiniteSection v = toeplitz_section(shift_sym, n);  // nilpotent shift, norm 1
  PNormRequest req;
  NormEstimate est = matrix_pnorm(v, req);
  CHECK(est.method == NormMethod::lanczos);
  CHECK(est.lower == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(est.upper == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("limit_lower_bound keeps the Toeplitz part and kills the Hankel part") {
  OperatorSpec t = OperatorSpec::toeplitz(seq_z_plus_zinv());
  CHECK(limit_lower_bound(t, 2.0, {0}, 256) >= 2.0 - 1e-3);

  OperatorSpec h = OperatorSpec::hankel(hilbert_seq(1 << 11));
  const double hv = limit_lower_bound(h, 2.0, {512}, 64);
  CHECK(hv <= 0.07);
  CHECK(hv >= 0.0);

  OperatorSpec f = OperatorSpec::finite_rank({{0, 0, Complex(7, 0)}, {3, 5, Complex(-2, 1)}});
  CHECK(limit_lower_bound(f, 2.0, {64}, 32) == 0.0);
}

TEST_CASE("limit_lower_bound converges to the symbol sup for a summable Hankel part") {
  // with a c0 tail that is summably small past the shift, the compression
  // pins sup|a| = 2 to within 0.05
  std::vector<Complex> pv;
  for (long j = 1; j <= 2048; ++j) pv.emplace_back(1.0 / static_cast<double>(j * j), 0.0);
  OperatorSpec spec =
      OperatorSpec::sum({OperatorSpec::toeplitz(seq_z_plus_zinv()),
                         OperatorSpec::hankel(FourierSequence(IndexRange{1, 2048}, std::move(pv),
                                                              DecayClass::c0))});
  const double v = limit_lower_bound(spec, 2.0, {512}, 256);
  CHECK(std::abs(v - 2.0) <= 0.05);
}

TEST_CASE("limit_lower_bound validates its shift list") {
  OperatorSpec t = OperatorSpec::toeplitz(seq_z_plus_zinv());
  CHECK_THROWS_AS(limit_lower_bound(t, 2.0, {4, 4}, 16), std::invalid_argument);
  CHECK_THROWS_AS(limit_lower_bound(t, 2.0, {}, 16), std::invalid_argument);
}

TEST_CASE("sandwich holds for 2cos plus the Hilbert Hankel part") {
  SymbolSpec a = SymbolSpec::fourier_poly(seq_z_plus_zinv());
  const long n = 128;
  SandwichReport rep = sandwich_check_sequence(a, hilbert_seq(2 * n - 1), std::nullopt, 2.0, n);
  CHECK(rep.lower_bound_ok);
  CHECK(rep.upper_bound_ok);
  CHECK(rep.total_norm.lower >= std::max(2.0, kPi / 2.0) - 0.05);
  CHECK(rep.total_norm.lower <= 2.0 + kPi + 0.05);
  CHECK(rep.warning.empty());
}

TEST_CASE("sandwich is trivially tight for a rank-one Hankel part") {
  SymbolSpec zero = SymbolSpec::fourier_poly(FourierSequence(IndexRange{0, 0}, {Complex(0, 0)}));
  FourierSequence e1(IndexRange{1, 1}, {Complex(1, 0)});
  for (double p : {1.0, 2.0, 3.0}) {
    SandwichReport rep = sandwich_check_sequence(zero, e1, std::nullopt, p, 16);
    CHECK(rep.lower_bound_ok);
    CHECK(rep.upper_bound_ok);
    CHECK(rep.total_norm.lower == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(rep.hankel_norm.lower == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("an n-dependent K breaks the sandwich and is flagged") {
  SymbolSpec one = SymbolSpec::fourier_poly(FourierSequence(IndexRange{0, 0}, {Complex(1, 0)}));
  FourierSequence psi0 = FourierSequence::zero(IndexRange{1, 64});
  const long n = 16;
  std::vector<std::tuple<long, long, Complex>> diag;
  for (long i = 0; i < n; ++i) diag.emplace_back(i, i, Complex(-1, 0));
  SandwichReport rep = sandwich_check_sequence(one, psi0, OperatorSpec::finite_rank(diag), 2.0, n);
  CHECK_FALSE(rep.lower_bound_ok);   // |A+K| = 0 < |a|_Mp = 1
  CHECK_FALSE(rep.warning.empty());  // K reaches the window horizon
  CHECK(rep.total_norm.lower <= 1e-12);

  // a genuinely fixed finite-rank K does not trip the warning
  SandwichReport ok = sandwich_check_sequence(
      one, psi0, OperatorSpec::finite_rank({{0, 0, Complex(-1, 0)}}), 2.0, n);
  CHECK(ok.warning.empty());
  CHECK(ok.lower_bound_ok);
}

TEST_CASE("sandwich validates the decay class of psi") {
  SymbolSpec one = SymbolSpec::fourier_poly(FourierSequence(IndexRange{0, 0}, {Complex(1, 0)}));
  FourierSequence bad(IndexRange{1, 8}, std::vector<Complex>(8, Complex(1, 0)),
                      DecayClass::bounded);
  CHECK_THROWS_AS(sandwich_check_sequence(one, bad, std::nullopt, 2.0, 4), std::invalid_argument);
}

TEST_CASE("hartman probe counts: compact-type vs Hilbert behaviour") {
  const std::vector<long> sizes{16, 32, 64};

  std::vector<Complex> sq;
  for (long j = 1; j <= 127; ++j) sq.emplace_back(1.0 / static_cast<double>(j * j), 0.0);
  FourierSequence psi_sq(IndexRange{1, 127}, std::move(sq), DecayClass::summable);
  std::vector<long> c1 = hartman_probe(psi_sq, sizes, 0.1);
  CHECK(c1[0] == c1[1]);
  CHECK(c1[1] == c1[2]);

  FourierSequence e1(IndexRange{1, 1}, {Complex(1, 0)});
  std::vector<long> c2 = hartman_probe(e1, sizes, 0.1);
  for (long c : c2) CHECK(c == 1);

  // the count for 1/j grows without bound, but only logarithmically: spread
  // the sizes far enough apart to see it move
  std::vector<long> c3 = hartman_probe(hilbert_seq(1023), {16, 64, 512}, 0.1);
  CHECK(c3[1] > c3[0]);
  CHECK(c3[2] > c3[1]);
}

TEST_CASE("hartman probe validates sizes") {
  FourierSequence e1(IndexRange{1, 1}, {Complex(1, 0)});
  CHECK_THROWS_AS(hartman_probe(e1, {32, 16}, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(hartman_probe(e1, {}, 0.1), std::invalid_argument);
}

TEST_CASE("mp interval respects the Wiener and interpolation uppers across p") {
  // |L(a)|_p <= |a|_W^theta |a|_inf^(1-theta); for 2cos both ends give 2
  FourierSequence c = seq_z_plus_zinv();
  for (double p : {1.2, 1.7, 2.0, 3.0, kInf}) {
    NormEstimate est = mp_norm_interval(c, p, 128);
    CHECK(est.upper == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(est.lower <= est.upper + 1e-12);
    CHECK(est.lower >= 1.9);
  }
}

TEST_CASE("empty sections are rejected") {
  FiniteSection s{IndexRange{0, -1}, IndexRange{0, -1}, Eigen::MatrixXcd(0, 0)};
  PNormRequest req;
  CHECK_THROWS_AS(matrix_pnorm(s, req), std::invalid_argument);
}
