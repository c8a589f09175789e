#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "jacobi.hpp"

#include <cmath>
#include <map>
#include <random>
#include <set>
#include <sstream>

using namespace mverify;
using namespace mverify::jacobi;

namespace {

Rational frac(long a, long b) {
  Rational q(a, b);
  q.canonicalize();
  return q;
}

// Hurwitz class number from reduced forms of discriminant -N, with weights
// 1/2 and 1/3 at the forms a(x^2 + y^2) and a(x^2 + xy + y^2).
Rational hurwitz_oracle(long n) {
  Rational h = 0;
  for (long a = 1; 3 * a * a <= n; ++a) {
    for (long b = -a + 1; b <= a; ++b) {
      if ((b * b + n) % (4 * a)) continue;
      const long c = (b * b + n) / (4 * a);
      if (c < a || (c == a && b < 0)) continue;
      if (b == 0 && a == c) h += frac(1, 2);
      else if (b == a && a == c) h += frac(1, 3);
      else h += 1;
    }
  }
  return h;
}

int legendre(long a, long p) {
  long r = 1, base = ((a % p) + p) % p;
  for (long e = (p - 1) / 2; e; e >>= 1, base = base * base % p)
    if (e & 1) r = r * base % p;
  return r == 0 ? 0 : (r == 1 ? 1 : -1);
}

// eta^18 theta_1^2 as a map (n, r) -> coefficient, n <= nmax.
std::map<std::pair<long, long>, long> eta_theta_oracle(long nmax) {
  // q^{3/4} prod (1 - q^j)^18
  std::vector<long> eta(nmax + 1, 0);
  eta[0] = 1;
  for (long j = 1; j <= nmax; ++j)
    for (int t = 0; t < 18; ++t)
      for (long i = nmax; i >= j; --i) eta[i] -= eta[i - j];
  // theta_1^2 = sum (-1)^{a+b} q^{((2a+1)^2 + (2b+1)^2)/8} zeta^{a+b+1}; 8n = (..) + 6 + 8j
  std::map<std::pair<long, long>, long> out;
  for (long a = -2 * nmax - 2; a <= 2 * nmax + 2; ++a)
    for (long b = -2 * nmax - 2; b <= 2 * nmax + 2; ++b) {
      const long e8 = (2 * a + 1) * (2 * a + 1) + (2 * b + 1) * (2 * b + 1) + 6;
      if (e8 % 8) continue;
      const long sign = (a + b) % 2 ? -1 : 1;
      for (long j = 0; e8 / 8 + j <= nmax; ++j) out[{e8 / 8 + j, a + b + 1}] += sign * eta[j];
    }
  return out;
}

}  // namespace

TEST_CASE("Kronecker symbol and fundamental discriminants") {
  for (long p : {3L, 5L, 7L, 11L, 13L})
    for (long a = -30; a <= 30; ++a) CHECK(kronecker(a, p) == legendre(a, p));
  CHECK(kronecker(-3, 2) == -1);
  CHECK(kronecker(-4, 2) == 0);
  CHECK(kronecker(5, 2) == -1);
  CHECK(kronecker(-7, 2) == 1);
  CHECK(fundamental_part(-12) == std::pair<long, long>{-3, 2});
  CHECK(fundamental_part(-16) == std::pair<long, long>{-4, 2});
  CHECK(fundamental_part(-20) == std::pair<long, long>{-20, 1});
  CHECK(fundamental_part(-27) == std::pair<long, long>{-3, 3});
  CHECK_THROWS_AS(fundamental_part(-5), std::invalid_argument);
}

TEST_CASE("Cohen numbers") {
  CHECK(cohen_H(3, 0) == frac(-1, 252));
  CHECK(cohen_H(3, 1) == 0);
  CHECK(cohen_H(3, 2) == 0);
  CHECK(cohen_H(5, 0) == frac(-1, 132));
  CHECK_THROWS_AS(cohen_H(0, 3), std::invalid_argument);
  // r = 1 gives the Hurwitz class numbers.
  CHECK(cohen_H(1, 0) == frac(-1, 12));
  for (long n = 1; n <= 200; ++n) CHECK_MESSAGE(cohen_H(1, n) == hurwitz_oracle(n), "N = ", n);
}

TEST_CASE("Jacobi Eisenstein series against the E8 theta") {
  const auto theta = jacobi_theta_e8(40);
  const auto e41 = jacobi_eisenstein(4, 40);
  CHECK(theta.coeff(0) == 1);
  CHECK(theta.coeff(3) == 56);
  CHECK(theta.coeff(4) == 126);
  CHECK(theta.coeff(1, 2) == 1);
  CHECK(theta.coeff(4, 4) == theta.coeff(1, 2));
  CHECK(e41.coeff(2) == 0);
  CHECK(e41 == theta);
  CHECK(cohen_H(3, 3) == frac(-2, 9));
  CHECK_THROWS_AS(jacobi_eisenstein(8, 10), std::invalid_argument);
  CHECK_THROWS_AS(theta.coeff(41), std::out_of_range);
}

TEST_CASE("cusp forms phi_10 and phi_12") {
  const auto phi10 = jacobi_cusp_form(10, 60);
  const auto phi12 = jacobi_cusp_form(12, 60);
  CHECK(phi10.is_cusp());
  CHECK(phi10.coeff(3) == 1);
  CHECK(phi10.coeff(4) == -2);
  CHECK(phi12.coeff(3) == 1);
  CHECK(phi12.coeff(4) == 10);
  // phi_10 = eta^18 theta_1^2, built from product expansions alone.
  for (const auto& [nr, val] : eta_theta_oracle(15)) {
    const auto [n, r] = nr;
    if (4 * n - r * r > 60) continue;
    CHECK_MESSAGE(phi10.coeff(n, r) == val, "(n, r) = (", n, ", ", r, ")");
  }
}

TEST_CASE("Maass lift") {
  const int k = 10;
  const auto phi = jacobi_cusp_form(k, 200);
  const auto f = maass_lift(phi, 50);
  CHECK(f.at(1, 1, 1) == phi.coeff(3));
  CHECK(f.at(1, 0, 1) == phi.coeff(4));
  CHECK(f.at(2, 2, 2) == phi.coeff(12) + 512 * phi.coeff(3));
  CHECK(sk_lift(10, 50) == f);
  CHECK_THROWS_AS(maass_lift(jacobi_eisenstein(4, 40), 5), std::invalid_argument);
  CHECK_THROWS_AS(maass_lift(phi, 51), std::invalid_argument);

  std::mt19937 rng(7);
  std::uniform_int_distribution<long> u(-3, 3);
  for (const auto& [key, val] : f.coefficients()) {
    auto [n, r, m] = key;
    long a, b, c, d;
    do {
      a = u(rng), b = u(rng), c = u(rng), d = u(rng);
    } while (std::abs(a * d - b * c) != 1);
    // Coefficients of U T U^t with T = [n, r/2; r/2, m].
    const long n2 = n * a * a + r * a * b + m * b * b;
    const long m2 = n * c * c + r * c * d + m * d * d;
    const long r2 = 2 * n * a * c + r * (a * d + b * c) + 2 * m * b * d;
    Rational direct = 0;
    const long g = std::gcd(std::gcd(n2, std::abs(r2)), m2);
    for (long e = 1; e <= g; ++e)
      if (g % e == 0) direct += std::pow(static_cast<double>(e), k - 1) * phi.coeff((4 * n2 * m2 - r2 * r2) / (e * e));
    CHECK(direct == val);
    CHECK(f.at(n2, r2, m2) == val);
  }

  std::stringstream ss;
  write_table(ss, f);
  CHECK(ss.str().find("1 1 1 1/1\n") != std::string::npos);
  CHECK(read_table(ss) == f);
  std::istringstream bad("# weight=10 det_bound=2\n1 1 x 3/1\n");
  CHECK_THROWS_AS(read_table(bad), std::invalid_argument);
}

TEST_CASE("automorphism counts") {
  CHECK(epsilon(1, 0, 1) == 8);
  CHECK(epsilon(1, 1, 1) == 12);
  CHECK(epsilon(1, 0, 2) == 4);
  // Full box search over |u_ij| <= 3 for small forms.
  for (long n = 1; n <= 3; ++n)
    for (long r = 0; r <= n; ++r)
      for (long m = n; m <= 4; ++m) {
        int count = 0;
        for (long a = -3; a <= 3; ++a)
          for (long b = -3; b <= 3; ++b)
            for (long c = -3; c <= 3; ++c)
              for (long d = -3; d <= 3; ++d) {
                if (std::abs(a * d - b * c) != 1) continue;
                if (n * a * a + r * a * b + m * b * b != n) continue;
                if (n * c * c + r * c * d + m * d * d != m) continue;
                if (2 * n * a * c + r * (a * d + b * c) + 2 * m * b * d != r) continue;
                ++count;
              }
        CHECK_MESSAGE(epsilon(n, r, m) == count, "T = ", n, " ", r, " ", m);
      }
  bool hit = false;
  automorphisms(1, 0, 1, 1, &hit);
  CHECK(hit);
}

TEST_CASE("reduced forms are complete and distinct") {
  const long bound = 12;
  const auto forms = reduced_forms(bound);
  std::set<Key> keys;
  for (const auto& t : forms) {
    CHECK(t.epsilon >= 2);
    keys.insert({t.n, t.r, t.m});
  }
  CHECK(keys.size() == forms.size());
  std::set<Key> reached;
  for (long n = 1; n <= 4 * bound; ++n)
    for (long m = 1; m <= 4 * bound; ++m)
      for (long r = -2 * bound; r <= 2 * bound; ++r)
        if (4 * n * m - r * r > 0 && 4 * n * m - r * r <= 4 * bound) reached.insert(lattice::reduce_binary(n, r, m));
  CHECK(reached == keys);
}

TEST_CASE("Rankin convolution") {
  const auto f = sk_lift(10, 100);
  const auto one = rankin_convolution(f, f, 16, 1);
  CHECK(one.terms == 2);
  const double a = f.at(1, 1, 1).get_d(), b = f.at(1, 0, 1).get_d();
  CHECK(one.value.value.real() == a * a / (12 * std::pow(0.75, 16)) + b * b / 8);

  double prev = 0;
  for (long bound = 1; bound <= 20; ++bound) {
    const double v = rankin_convolution(f, f, 16, bound).value.value.real();
    CHECK(v >= prev);
    prev = v;
  }
  const auto r50 = rankin_convolution(f, f, 16, 50);
  const auto r100 = rankin_convolution(f, f, 16, 100);
  CHECK(r100.value.value.real() > 0);
  CHECK(std::abs(r100.value.value - r50.value.value) < 1e-6 * std::abs(r100.value.value));
  CHECK(r100.heuristic_bound);
  CHECK_THROWS_AS(rankin_convolution(f, sk_lift(12, 10), 16, 5), std::invalid_argument);
  CHECK_THROWS_AS(rankin_convolution(f, f, 16, 101), std::invalid_argument);
}
