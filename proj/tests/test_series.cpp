#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qseries.hpp"

#include <cstdint>
#include <random>
#include <vector>

using namespace mverify::series;

namespace {

// Naive expansion of prod_{n>=1} (1 - q^{dn})^e for e >= 0 in int64.
std::vector<std::int64_t> naive_eta_body(const std::vector<std::pair<int, int>>& factors,
                                         int order) {
  std::vector<std::int64_t> acc(order + 1, 0);
  acc[0] = 1;
  for (auto [d, e] : factors) {
    for (int rep = 0; rep < e; ++rep) {
      for (int n = 1; d * n <= order; ++n) {
        const int step = d * n;
        for (int i = order; i >= step; --i) acc[i] -= acc[i - step];
      }
    }
  }
  return acc;
}

// Brute-force divisor sums for the E_4 / E_8 oracle.
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

QSeries random_series(std::mt19937& rng, int order) {
  std::uniform_int_distribution<int> num(-50, 50), den(1, 7);
  std::vector<Rational> c(order + 1);
  for (auto& x : c) {
    x = Rational(num(rng), den(rng));
    x.canonicalize();
  }
  return QSeries::from_rationals(c);
}

}  // namespace

TEST_CASE("series_mul identity and difference of squares") {
  std::mt19937 rng(7);
  const QSeries s = random_series(rng, 9);
  CHECK(series_mul(QSeries::constant(1, 9), s) == s);

  const std::vector<Rational> a{1, 1, 0}, b{1, -1, 0};
  const QSeries p = series_mul(QSeries::from_rationals(a), QSeries::from_rationals(b));
  CHECK(p.order() == 2);
  CHECK(p.coeff(0) == 1);
  CHECK(p.coeff(1) == 0);
  CHECK(p.coeff(2) == -1);
}

TEST_CASE("E4 * E4 equals the divisor-sum expansion of E8") {
  const int order = 10;
  std::vector<Rational> e4(order + 1), e8(order + 1);
  e4[0] = e8[0] = 1;
  for (int n = 1; n <= order; ++n) {
    e4[n] = 240 * sigma_brute(3, n);
    e8[n] = 480 * sigma_brute(7, n);
  }
  const QSeries sq = series_mul(QSeries::from_rationals(e4), QSeries::from_rationals(e4));
  CHECK(sq.order() == order);
  CHECK(sq == QSeries::from_rationals(e8));
}

TEST_CASE("truncation order accounts for valuation") {
  // q * (unknown beyond q^3) times (unknown beyond q^2) is known through q^3.
  const std::vector<Rational> a{0, 1, 2, 3}, b{1, 1, 1};
  const QSeries p = series_mul(QSeries::from_rationals(a), QSeries::from_rationals(b));
  CHECK(p.order() == 3);
  CHECK(p.coeff(3) == 6);
  CHECK_THROWS_AS(p.coeff(4), std::out_of_range);
  // Sums never read past the shorter operand.
  CHECK((QSeries::from_rationals(a) + QSeries::from_rationals(b)).order() == 2);
}

TEST_CASE("eta quotients") {
  SUBCASE("Delta") {
    const EtaFactor f[] = {{1, 24}};
    const QSeries d = eta_quotient(f, 3);
    CHECK(d.order() == 3);
    CHECK(d.coeff(0) == 0);
    CHECK(d.coeff(1) == 1);
    CHECK(d.coeff(2) == -24);
    CHECK(d.coeff(3) == 252);
  }
  SUBCASE("level 2 weight 8") {
    const EtaFactor f[] = {{1, 8}, {2, 8}};
    const QSeries h = eta_quotient(f, 3);
    CHECK(h.coeff(1) == 1);
    CHECK(h.coeff(2) == -8);
    CHECK(h.coeff(3) == 12);
  }
  SUBCASE("empty product") {
    const EtaFactor f[] = {{1, 0}};
    CHECK(eta_quotient(f, 5) == QSeries::constant(1, 5));
  }
  SUBCASE("fractional valuation rejected") {
    const EtaFactor f[] = {{1, 1}};
    CHECK_THROWS_AS(eta_quotient(f, 5), std::invalid_argument);
  }
  SUBCASE("matches naive product expansion") {
    const int order = 60;
    const EtaFactor f[] = {{1, 8}, {2, 8}};
    const auto naive = naive_eta_body({{1, 8}, {2, 8}}, order);
    const QSeries h = eta_quotient(f, order);
    for (int n = 1; n <= order; ++n) CHECK(h.coeff(n) == Rational(naive[n - 1]));
  }
  SUBCASE("negative exponents invert") {
    const int order = 30;
    const EtaFactor up[] = {{1, 24}};
    const EtaFactor down[] = {{1, -24}, {2, 24}};  // eta(2t)^24/eta(t)^24, valuation 1
    const QSeries prod = series_mul(eta_quotient(up, order), eta_quotient(down, order));
    const EtaFactor both[] = {{2, 24}};
    CHECK(prod.order() == order + 1);
    CHECK(agree_through(prod, eta_quotient(both, order), order));
  }
}

TEST_CASE("Delta has integer coefficients") {
  for (int m : {1, 5, 40, 200}) {
    const EtaFactor f[] = {{1, 24}};
    CHECK(eta_quotient(f, m).is_integral());
  }
}

TEST_CASE("Bernoulli numbers") {
  CHECK(bernoulli_number(0) == 1);
  CHECK(bernoulli_number(1) == Rational(-1, 2));
  CHECK(bernoulli_number(2) == Rational(1, 6));
  CHECK(bernoulli_number(8) == Rational(-1, 30));
  CHECK(bernoulli_number(12) == Rational(-691, 2730));
  for (int n = 3; n <= 25; n += 2) CHECK(bernoulli_number(n) == 0);
  // B_n(0) = B_n, B_3(1/3) = 1/27.
  CHECK(bernoulli_polynomial(6, 0) == bernoulli_number(6));
  CHECK(bernoulli_polynomial(3, Rational(1, 3)) == Rational(1, 27));
}

TEST_CASE("ring laws on random truncated series") {
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 25; ++trial) {
    const int order = 1 + trial % 9;
    const QSeries a = random_series(rng, order);
    const QSeries b = random_series(rng, order);
    const QSeries c = random_series(rng, order);
    CHECK(series_mul(series_mul(a, b), c) == series_mul(a, series_mul(b, c)));
    CHECK(series_mul(a, b + c) == series_mul(a, b) + series_mul(a, c));
    CHECK(series_mul(a, b) == series_mul(b, a));
  }
}

TEST_CASE("series_pow agrees with repeated multiplication") {
  std::mt19937 rng(99);
  for (int e = 0; e <= 5; ++e) {
    QSeries s = random_series(rng, 8);
    QSeries r = QSeries::constant(1, 8);
    for (int i = 0; i < e; ++i) r = series_mul(r, s);
    CHECK(series_pow(s, e) == r);
  }
  // Positive valuation.
  const std::vector<Rational> v{0, 0, 3, 1, 2, 5};
  const QSeries s = QSeries::from_rationals(v);
  CHECK(series_pow(s, 3) == series_mul(series_mul(s, s), s));
}

TEST_CASE("substitute_power keeps the honest order") {
  const std::vector<Rational> v{1, 2, 3};
  const QSeries s = QSeries::from_rationals(v).substitute_power(3);
  CHECK(s.order() == 8);
  CHECK(s.coeff(3) == 2);
  CHECK(s.coeff(7) == 0);
}
