#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "modforms.hpp"

#include <cmath>
#include <cstdint>
#include <vector>

using namespace mverify::modforms;
using mverify::series::Rational;

namespace {
Rational frac(long n, long d) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}
}  // namespace

namespace {

std::int64_t sigma_brute(int k, int n) {
  std::int64_t s = 0;
  for (int d = 1; d <= n; ++d) {
    if (n % d != 0) continue;
    std::int64_t p = 1;
    for (int i = 0; i < k; ++i) p *= d;
    s += p;
  }
  return s;
}

// tau(n) for n <= order from the naive product q prod (1-q^n)^24.
std::vector<std::int64_t> tau_oracle(int order) {
  std::vector<std::int64_t> acc(order, 0);
  acc[0] = 1;
  for (int rep = 0; rep < 24; ++rep)
    for (int n = 1; n < order; ++n)
      for (int i = order - 1; i >= n; --i) acc[i] -= acc[i - n];
  std::vector<std::int64_t> tau(order + 1, 0);
  for (int n = 1; n <= order; ++n) tau[n] = acc[n - 1];
  return tau;
}

}  // namespace

TEST_CASE("level 1 Eisenstein series") {
  const auto e4 = eisenstein_q(4, 2);
  CHECK(e4.coeff(0) == 1);
  CHECK(e4.coeff(1) == 240);
  CHECK(e4.coeff(2) == 2160);
  const auto e8 = eisenstein_q(8, 1);
  CHECK(e8.coeff(1) == 480);
  CHECK(eisenstein_q(6, 0) == mverify::series::QSeries::constant(1, 0));
  CHECK_THROWS_AS(eisenstein_q(5, 3), std::invalid_argument);
  CHECK_THROWS_AS(eisenstein_q(2, 3), std::invalid_argument);

  // E_12 carries the 691 denominator.
  const auto e12 = eisenstein_q(12, 3);
  CHECK(e12.coeff(1) == frac(65520, 691));
  CHECK(e12.coeff(3) == frac(65520, 691) * sigma_brute(11, 3));
}

TEST_CASE("E4^2 = E8 exactly") {
  const int order = 60;
  const auto e4 = eisenstein_q(4, order);
  CHECK(mverify::series::series_mul(e4, e4) == eisenstein_q(8, order));
}

TEST_CASE("level 1 eigenforms") {
  SUBCASE("Delta") {
    const auto forms = level1_eigenform(12, 3);
    REQUIRE(forms.size() == 1);
    const auto& d = forms[0].rational_series();
    CHECK(d.coeff(0) == 0);
    CHECK(d.coeff(1) == 1);
    CHECK(d.coeff(2) == -24);
    CHECK(d.coeff(3) == 252);
    const auto tau = tau_oracle(40);
    const auto big = level1_eigenform(12, 40)[0];
    for (int n = 1; n <= 40; ++n) CHECK(big.coeff(n) == static_cast<double>(tau[n]));
  }
  SUBCASE("weight 20 is Delta * E8") {
    const auto forms = level1_eigenform(20, 2);
    REQUIRE(forms.size() == 1);
    CHECK(forms[0].rational_series().coeff(1) == 1);
    CHECK(forms[0].rational_series().coeff(2) == 456);  // -24 + 480
  }
  SUBCASE("no cusp forms in weight 10") { CHECK(level1_eigenform(10, 20).empty()); }
  SUBCASE("weight 24 lives in Q(sqrt(144169))") {
    const auto forms = level1_eigenform(24, 40);
    REQUIRE(forms.size() == 2);
    for (const auto& f : forms) {
      CHECK(f.field() == Eigenform::Field::Quadratic);
      CHECK(f.field_d() == 144169);
      const auto a2 = f.exact_coeff(2);
      CHECK(a2.a == 540);
      CHECK(abs(a2.b) == 12);
      CHECK(certify_hecke(f, 13).empty());
    }
    // Galois conjugates: a(n) + a'(n) is rational.
    for (int n = 1; n <= 40; ++n)
      CHECK(forms[0].exact_coeff(n).b == -forms[1].exact_coeff(n).b);
  }
}

TEST_CASE("Hecke operators on Delta") {
  const int order = 60;
  const auto delta = delta_q(order);
  const auto t2 = hecke_apply(12, 2, delta, 1);
  CHECK(t2.order() == 30);
  CHECK(t2 == delta.truncate(30) * Rational(-24));
  const auto t3 = hecke_apply(12, 3, delta, 1);
  CHECK(t3 == delta.truncate(20) * Rational(252));
  const auto zero = mverify::series::QSeries::zero(20);
  CHECK(hecke_apply(12, 5, zero, 1) == mverify::series::QSeries::zero(4));
  CHECK_THROWS_AS(hecke_apply(12, 2, delta, 1, 31), std::invalid_argument);
  CHECK_THROWS_AS(hecke_apply(12, 2, delta, 2), std::invalid_argument);
}

TEST_CASE("Eigenform certification across shipped level-1 weights") {
  for (int w : {12, 16, 18, 20, 22, 26}) {
    const auto f = level1_eigenform(w, 400)[0];
    CHECK_MESSAGE(certify_hecke(f, 47).empty(), "weight ", w);
    CHECK(check_multiplicativity(f, 50).empty());
    CHECK(deligne_violations(f, 100).empty());
  }
}

TEST_CASE("Gamma_0(N) Eisenstein at infinity") {
  const int order = 12;
  CHECK(gamma0_eisenstein_infty(8, 1, order) == eisenstein_q(8, order));
  const auto e = gamma0_eisenstein_infty(8, 2, 2);
  CHECK(e.coeff(0) == 1);
  CHECK(e.coeff(1) == frac(-480, 255));
  // (2^8 * 480 sigma_7(1) - 480 sigma_7(2)) / 255
  CHECK(e.coeff(2) == frac(256 * 480 - 480 * sigma_brute(7, 2), 255));
  CHECK(gamma0_eisenstein_infty(8, 6, 5).coeff(0) == 1);
  CHECK_THROWS_AS(gamma0_eisenstein_infty(8, 4, 5), std::invalid_argument);
}

TEST_CASE("Satake parameters") {
  SUBCASE("a(p) = 0 gives +-i") {
    std::vector<Rational> c{0, 1, 0, 5};
    const Eigenform f(12, 1, "toy", mverify::series::QSeries::from_rationals(c));
    const auto sp = satake_params(f, 2);
    CHECK(std::abs(sp.alpha - std::complex<double>(0, 1)) < 1e-15);
    CHECK(std::abs(sp.beta - std::complex<double>(0, -1)) < 1e-15);
  }
  SUBCASE("Delta at 2") {
    const auto f = level1_eigenform(12, 10)[0];
    const auto sp = satake_params(f, 2);
    const double t = -24.0 * std::pow(2.0, -5.5);
    CHECK(std::abs(sp.alpha + sp.beta - t) < 1e-14);
    CHECK(std::abs(sp.alpha * sp.beta - 1.0) < 1e-14);
    // Residual of the defining quadratic.
    const auto r = sp.alpha * sp.alpha - t * sp.alpha + 1.0;
    CHECK(std::abs(r) < 1e-14);
  }
  SUBCASE("unit modulus for unramified primes") {
    for (int w : {12, 16, 20, 24}) {
      for (const auto& f : level1_eigenform(w, 100)) {
        for (int p : primes_up_to(100)) {
          const auto sp = satake_params(f, p);
          CHECK(std::abs(std::abs(sp.alpha) - 1.0) < 1e-12);
          CHECK(std::abs(std::abs(sp.beta) - 1.0) < 1e-12);
        }
      }
    }
  }
  SUBCASE("ramified prime rejected") {
    const auto f = level2_newform(8, 10);
    CHECK_THROWS_AS(satake_params(f, 2), std::invalid_argument);
  }
}

TEST_CASE("tilde_f") {
  const std::complex<double> a(0.6, 0.8);
  CHECK(std::abs(tilde_f(0, a) - 1.0) < 1e-15);
  CHECK(std::abs(tilde_f(1, a) - (a + 1.0 / a)) < 1e-15);
  CHECK(std::abs(tilde_f(2, std::complex<double>(0, 1)) - (-1.0)) < 1e-15);
}

TEST_CASE("Satake/Hecke consistency: prod tilde_f = a(N) N^{-(w-1)/2}") {
  for (int w : {12, 16, 18, 20, 22, 24, 26}) {
    for (const auto& f : level1_eigenform(w, 500)) {
      double worst = 0;
      for (int n = 1; n <= 500; ++n) {
        std::complex<double> prod = 1;
        for (const auto& [p, v] : factorize(n)) {
          prod *= tilde_f(v, satake_params(f, static_cast<int>(p)).alpha);
        }
        const double rhs = f.coeff(n) * std::pow(static_cast<double>(n), -(w - 1) / 2.0);
        worst = std::max(worst, std::abs(prod - rhs));
      }
      CHECK_MESSAGE(worst < 1e-10, f.label(), " worst residual ", worst);
    }
  }
}

TEST_CASE("level 2 newforms") {
  SUBCASE("weight 8 is eta(t)^8 eta(2t)^8") {
    const auto f = level2_newform(8, 50);
    const mverify::series::EtaFactor h[] = {{1, 8}, {2, 8}};
    CHECK(f.rational_series() == mverify::series::eta_quotient(h, 50));
    CHECK(atkin_lehner_sign(f, 2) == 1);  // a(2) = -8
  }
  SUBCASE("weight 16") {
    const auto f = level2_newform(16, 200);
    CHECK(certify_hecke(f, 61).empty());
    CHECK(check_multiplicativity(f).empty());
    CHECK(deligne_violations(f, 100).empty());
    const double a2 = f.coeff(2);
    CHECK(std::abs(std::abs(a2) - 128.0) == 0.0);
    // Not an oldform: differs from the level-1 weight-16 eigenform at 3.
    CHECK(f.coeff(3) != level1_eigenform(16, 3)[0].coeff(3));
  }
  SUBCASE("basis dimensions") {
    CHECK(gamma0_2_cusp_basis(8, 10).size() == 1);
    CHECK(gamma0_2_cusp_basis(16, 10).size() == 3);
  }
}

TEST_CASE("multiplicativity failures are itemized") {
  auto f = level1_eigenform(12, 12)[0].rational_series();
  std::vector<Rational> c;
  for (int n = 0; n <= f.order(); ++n) c.push_back(f.coeff(n));
  c[6] += 1;
  const Eigenform bad(12, 1, "bad", mverify::series::QSeries::from_rationals(c));
  const auto fails = check_multiplicativity(bad);
  REQUIRE(!fails.empty());
  CHECK(fails[0].m == 2);
  CHECK(fails[0].n == 3);
}
