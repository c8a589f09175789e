#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "lattice.hpp"
#include "modforms.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <functional>
#include <map>
#include <random>

using namespace mverify::lattice;
using mverify::series::QSeries;

namespace {

// E8 in the even coordinate system: Z^8 or (Z+1/2)^8 with even coordinate
// sum. Coordinates are stored doubled so everything stays integral.
std::vector<std::vector<int>> e8_coordinate_vectors(int max_norm) {
  std::vector<std::vector<int>> out;
  std::vector<int> x(8);
  const int max_int = static_cast<int>(std::floor(std::sqrt(max_norm)));
  std::function<void(int, bool)> rec = [&](int i, bool half) {
    if (i == 8) {
      int sum2 = 0, norm4 = 0;
      for (int v : x) {
        sum2 += v;
        norm4 += v * v;
      }
      // sum of coordinates even <=> sum2 divisible by 4
      if (sum2 % 4 == 0 && norm4 <= 4 * max_norm) out.push_back(x);
      return;
    }
    for (int v = -2 * max_int - 1; v <= 2 * max_int + 1; ++v) {
      if ((v % 2 != 0) != half) continue;
      x[i] = v;
      rec(i + 1, half);
    }
  };
  rec(0, false);
  rec(0, true);
  return out;
}

int dot4(const std::vector<int>& a, const std::vector<int>& b) {
  int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Naive box search with coordinate bounds |x_i| <= sqrt(B (G^{-1})_ii).
std::map<std::int64_t, std::int64_t> box_counts(const GramLattice& l, std::int64_t bound) {
  const int n = l.dim();
  Eigen::MatrixXd g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = static_cast<double>(l.gram()[i][j]);
  const Eigen::MatrixXd inv = g.inverse();
  std::vector<std::int64_t> lim(n);
  for (int i = 0; i < n; ++i)
    lim[i] = static_cast<std::int64_t>(std::floor(std::sqrt(bound * inv(i, i)) + 1e-6));
  std::map<std::int64_t, std::int64_t> counts;
  IntVector x(n);
  std::function<void(int)> rec = [&](int i) {
    if (i == n) {
      const auto v = l.norm(x);
      if (v <= bound) ++counts[v];
      return;
    }
    for (std::int64_t c = -lim[i]; c <= lim[i]; ++c) {
      x[i] = c;
      rec(i + 1);
    }
  };
  rec(0);
  return counts;
}

GramLattice random_lattice(std::mt19937& rng, int n, bool even) {
  // B^T B + diagonal shift keeps it positive definite.
  std::uniform_int_distribution<int> entry(-2, 2);
  IntMatrix b(n, IntVector(n));
  for (auto& row : b)
    for (auto& v : row) v = entry(rng);
  IntMatrix g(n, IntVector(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) g[i][j] += b[k][i] * b[k][j];
  for (int i = 0; i < n; ++i) {
    g[i][i] += 1;
    if (even && g[i][i] % 2) g[i][i] += 1;
  }
  return GramLattice(g);
}

}  // namespace

TEST_CASE("builtin Gram matrices") {
  const auto v = builtin_gram("V");
  CHECK(v.dim() == 8);
  CHECK(v.gram()[0] == IntVector{2, 0, 0, 0, 0, -1, -1, -1});
  CHECK(determinant(v) == 1);
  CHECK(is_even_unimodular(v));
  CHECK(is_even_unimodular(builtin_gram("E8")));
  CHECK(is_even_unimodular(builtin_gram("E8E8")));
  const auto d16 = builtin_gram("D16PLUS");
  CHECK(determinant(d16) == 1);
  for (int i = 0; i < 16; ++i) CHECK(d16.gram()[i][i] % 2 == 0);
  CHECK_THROWS_AS(builtin_gram("E7"), std::invalid_argument);

  IntMatrix id(8, IntVector(8, 0));
  for (int i = 0; i < 8; ++i) id[i][i] = 1;
  CHECK_FALSE(is_even_unimodular(GramLattice(id)));
}

TEST_CASE("Gram validation and text format") {
  CHECK_THROWS_AS(GramLattice({{2, 1}, {0, 2}}), std::invalid_argument);
  CHECK_THROWS_AS(GramLattice({{1, 2}, {2, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(GramLattice(IntMatrix{{0}}), std::invalid_argument);
  const auto e8 = builtin_gram("E8");
  CHECK(parse_gram(format_gram(e8)).gram() == e8.gram());
  CHECK(parse_gram("2\n2 -1\n-1 2\n").dim() == 2);
  CHECK_THROWS_AS(parse_gram("2\n2 -1\n-1\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_gram("2\n2 -1\n-1 2 7\n"), std::invalid_argument);
}

TEST_CASE("short vectors") {
  const auto e8 = builtin_gram("E8");
  SUBCASE("zero only") {
    const auto sv = short_vectors(e8, 0);
    REQUIRE(sv.size() == 1);
    CHECK(sv[0].norm == 0);
    CHECK(sv[0].x == IntVector(8, 0));
  }
  SUBCASE("E8 roots") {
    const auto sv = short_vectors(e8, 2);
    CHECK(sv.size() == 121);
    for (std::size_t i = 1; i < sv.size(); ++i) {
      CHECK(sv[i].norm == 2);
      CHECK(e8.norm(sv[i].x) == 2);
    }
  }
  SUBCASE("rank one") {
    const GramLattice l(IntMatrix{{2}});
    const auto sv = short_vectors(l, 8);
    REQUIRE(sv.size() == 3);
    CHECK(sv[0].x == IntVector{0});
    CHECK(sv[1].x == IntVector{1});
    CHECK(sv[1].norm == 2);
    CHECK(sv[2].x == IntVector{2});
    CHECK(sv[2].norm == 8);
  }
  SUBCASE("cap guard") {
    CHECK_THROWS_AS(short_vectors(e8, 4, 100), std::length_error);
  }
  SUBCASE("matches the box oracle on random lattices") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 12; ++trial) {
      const auto l = random_lattice(rng, 2 + trial % 4, false);
      const std::int64_t bound = 12;
      const auto oracle = box_counts(l, bound);
      std::map<std::int64_t, std::int64_t> got;
      for (const auto& s : short_vectors(l, bound)) got[s.norm] += s.norm == 0 ? 1 : 2;
      CHECK(got == oracle);
    }
  }
}

TEST_CASE("theta_deg1") {
  SUBCASE("E8 against the coordinate model") {
    const auto pts = e8_coordinate_vectors(6);
    std::vector<std::int64_t> oracle(4, 0);
    for (const auto& p : pts) ++oracle[dot4(p, p) / 8];
    const auto th = theta_deg1(builtin_gram("E8"), 3);
    for (int n = 0; n <= 3; ++n) CHECK(th.coeff(n) == oracle[n]);
    CHECK(th.coeff(1) == 240);
    CHECK(th.coeff(2) == 2160);
  }
  SUBCASE("trivial order") { CHECK(theta_deg1(builtin_gram("V"), 0) == QSeries::constant(1, 0)); }
  SUBCASE("block sum") {
    const auto th = theta_deg1(builtin_gram("E8E8"), 1);
    CHECK(th.coeff(1) == 480);
  }
  SUBCASE("odd lattice rejected") {
    CHECK_THROWS_AS(theta_deg1(GramLattice(IntMatrix{{1}}), 3), std::invalid_argument);
  }
  SUBCASE("split enumeration matches the box oracle") {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 10; ++trial) {
      const auto l = random_lattice(rng, 4 + trial % 3, true);
      const int order = 6;
      const auto oracle = box_counts(l, 2 * order);
      const auto th = theta_deg1(l, order);
      for (int k = 0; k <= order; ++k) {
        const auto it = oracle.find(2 * k);
        CHECK(th.coeff(k) == (it == oracle.end() ? 0 : it->second));
      }
    }
  }
  SUBCASE("rank 8 and rank 16 identities") {
    const int order = 20;
    const auto e4 = mverify::modforms::eisenstein_q(4, order);
    const auto e8 = mverify::modforms::eisenstein_q(8, order);
    CHECK(theta_deg1(builtin_gram("E8"), order) == e4);
    CHECK(theta_deg1(builtin_gram("V"), order) == e4);
    CHECK(theta_deg1(builtin_gram("E8E8"), order) == e8);
    CHECK(theta_deg1(builtin_gram("D16PLUS"), order) == e8);
  }
}

TEST_CASE("binary form reduction") {
  CHECK(reduce_binary(1, 0, 1) == Deg2Key{1, 0, 1});
  CHECK(reduce_binary(1, -1, 1) == Deg2Key{1, 1, 1});
  CHECK(reduce_binary(2, 3, 2) == Deg2Key{1, 1, 2});
  CHECK(reduce_binary(1, 2, 1) == Deg2Key{0, 0, 1});
  CHECK(reduce_binary(3, 0, 0) == Deg2Key{0, 0, 3});
  CHECK_THROWS_AS(reduce_binary(1, 3, 1), std::invalid_argument);
  // The discriminant is invariant.
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> e(-3, 3);
  for (int trial = 0; trial < 200; ++trial) {
    const long n = 1 + (trial % 5), m = 1 + (trial % 7);
    const long r = e(rng);
    if (4 * n * m - r * r < 0) continue;
    const auto [a, b, c] = reduce_binary(n, r, m);
    CHECK(4L * a * c - static_cast<long>(b) * b == 4 * n * m - r * r);
    CHECK(0 <= b);
    CHECK(b <= a);
    CHECK(a <= c);
  }
}

TEST_CASE("theta_deg2") {
  const auto e8 = builtin_gram("E8");
  const auto table = theta_deg2(e8, 4);
  CHECK(table.at(0, 0, 0) == 1);
  CHECK(table.at(1, 0, 0) == 240);
  const auto th = theta_deg1(e8, 4);
  for (int n = 0; n <= 4; ++n) CHECK(table.at(n, 0, 0) == th.coeff(n));

  SUBCASE("root pair counts from the coordinate model") {
    const auto pts = e8_coordinate_vectors(4);
    std::map<Deg2Key, std::int64_t> oracle;
    for (const auto& x : pts) {
      if (dot4(x, x) != 8) continue;
      for (const auto& y : pts) {
        const int ny = dot4(y, y) / 8;
        if (ny < 1 || ny > 3) continue;
        const int r = dot4(x, y) / 4;
        if (r >= 0 && r <= 1) ++oracle[{1, r, ny}];
      }
    }
    for (const auto& [key, count] : oracle) {
      const auto [n, r, m] = key;
      CHECK(table.at(n, r, m) == count);
    }
    CHECK(table.at(1, 1, 1) == 240 * 56);
    CHECK(table.at(1, 0, 1) == 240 * 126);
  }

  SUBCASE("reduction invariance under random unimodular changes") {
    std::mt19937 rng(17);
    std::uniform_int_distribution<int> e(-1, 1);
    int tested = 0;
    for (int trial = 0; trial < 400 && tested < 25; ++trial) {
      const int a = e(rng), b = e(rng), c = e(rng), d = e(rng);
      if (a * d - b * c != 1 && a * d - b * c != -1) continue;
      for (const auto& [key, count] : table.counts()) {
        const auto [n, r, m] = key;
        if (n + m > 2) continue;
        // T' = U^T T U with T = [n, r/2; r/2, m] (doubled off-diagonal).
        const long n2 = static_cast<long>(n) * a * a + static_cast<long>(r) * a * c +
                        static_cast<long>(m) * c * c;
        const long m2 = static_cast<long>(n) * b * b + static_cast<long>(r) * b * d +
                        static_cast<long>(m) * d * d;
        const long r2 = 2L * n * a * b + static_cast<long>(r) * (a * d + b * c) + 2L * m * c * d;
        if (n2 > 3 || m2 > 3) continue;
        CHECK(count_pairs(e8, static_cast<int>(n2), static_cast<int>(r2),
                          static_cast<int>(m2)) == count);
        ++tested;
      }
    }
    CHECK(tested >= 10);
  }

  SUBCASE("rank 16 genus tables agree") {
    const auto a = theta_deg2(builtin_gram("E8E8"), 3);
    const auto b = theta_deg2(builtin_gram("D16PLUS"), 3);
    CHECK(a.counts().size() == b.counts().size());
    CHECK(a == b);
    CHECK(a.at(0, 0, 1) == 480);
  }

  CHECK_THROWS_AS(theta_deg2(GramLattice(IntMatrix{{2, 1}, {1, 2}}), 2), std::invalid_argument);
}
