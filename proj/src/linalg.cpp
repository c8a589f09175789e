#include "linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace mverify::linalg {

Matrix identity(int n) {
  Matrix m(n, Vector(n, Rational(0)));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  if (a.empty() || b.empty()) return {};
  if (a[0].size() != b.size()) throw std::invalid_argument("matrix shape mismatch");
  Matrix c(a.size(), Vector(b[0].size(), Rational(0)));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k)
      for (std::size_t j = 0; j < b[0].size(); ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

Matrix rref(Matrix m, std::vector<int>* pivots) {
  if (pivots) pivots->clear();
  if (m.empty()) return m;
  const std::size_t rows = m.size();
  const std::size_t cols = m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    const Rational inv = 1 / m[r][c];
    for (auto& x : m[r]) x *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      const Rational f = m[i][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    if (pivots) pivots->push_back(static_cast<int>(c));
    ++r;
  }
  return m;
}

int rank(const Matrix& m) {
  std::vector<int> piv;
  rref(m, &piv);
  return static_cast<int>(piv.size());
}

Rational determinant(Matrix m) {
  const std::size_t n = m.size();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(m[p], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m[i][c] == 0) continue;
      const Rational f = m[i][c] / m[c][c];
      for (std::size_t j = c; j < n; ++j) m[i][j] -= f * m[c][j];
    }
  }
  return det;
}

std::vector<Vector> kernel(const Matrix& m) {
  if (m.empty()) return {};
  const std::size_t cols = m[0].size();
  std::vector<int> piv;
  Matrix r = rref(m, &piv);
  std::vector<bool> is_pivot(cols, false);
  for (int p : piv) is_pivot[p] = true;
  std::vector<Vector> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    Vector v(cols, Rational(0));
    v[free] = 1;
    for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -r[i][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<Vector> solve_combination(const Matrix& rows, const Vector& target) {
  // Columns of the system are the given rows; augment with target.
  const std::size_t k = rows.size();
  const std::size_t len = target.size();
  Matrix sys(len, Vector(k + 1, Rational(0)));
  for (std::size_t i = 0; i < len; ++i) {
    for (std::size_t j = 0; j < k; ++j) sys[i][j] = rows[j][i];
    sys[i][k] = target[i];
  }
  std::vector<int> piv;
  Matrix r = rref(sys, &piv);
  if (!piv.empty() && piv.back() == static_cast<int>(k)) return std::nullopt;
  Vector c(k, Rational(0));
  for (std::size_t i = 0; i < piv.size(); ++i) c[piv[i]] = r[i][k];
  return c;
}

std::vector<Rational> charpoly(const Matrix& m) {
  // Interpolate det(x I - m) through x = 0..n.
  const int n = static_cast<int>(m.size());
  std::vector<Rational> xs(n + 1), ys(n + 1);
  for (int t = 0; t <= n; ++t) {
    Matrix a = m;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) a[i][j] = -a[i][j];
      a[i][i] += t;
    }
    xs[t] = t;
    ys[t] = determinant(a);
  }
  // Newton divided differences, then expand.
  std::vector<Rational> dd = ys;
  for (int j = 1; j <= n; ++j)
    for (int i = n; i >= j; --i) dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - j]);
  std::vector<Rational> poly(n + 1, Rational(0));
  std::vector<Rational> basis{Rational(1)};  // prod_{i<j} (x - xs[i])
  for (int j = 0; j <= n; ++j) {
    for (std::size_t d = 0; d < basis.size(); ++d) poly[d] += dd[j] * basis[d];
    std::vector<Rational> next(basis.size() + 1, Rational(0));
    for (std::size_t d = 0; d < basis.size(); ++d) {
      next[d + 1] += basis[d];
      next[d] -= xs[j] * basis[d];
    }
    basis = std::move(next);
  }
  return poly;
}

namespace {

std::vector<Integer> divisors_of(Integer n) {
  n = abs(n);
  std::vector<Integer> out;
  if (n == 0) return out;
  for (Integer d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      if (d * d != n) out.push_back(n / d);
    }
  }
  return out;
}

Rational eval(const std::vector<Rational>& p, const Rational& x) {
  Rational acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

}  // namespace

std::vector<Rational> rational_roots(const std::vector<Rational>& poly_in) {
  std::vector<Rational> poly = poly_in;
  while (!poly.empty() && poly.back() == 0) poly.pop_back();
  std::vector<Rational> roots;
  // Strip zero roots.
  while (poly.size() > 1 && poly.front() == 0) {
    roots.push_back(0);
    poly.erase(poly.begin());
  }
  if (poly.size() <= 1) return roots;
  // Clear denominators.
  Integer lcm = 1;
  for (const auto& c : poly) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den_mpz_t());
  std::vector<Integer> ip;
  for (const auto& c : poly) ip.push_back(c.get_num() * (lcm / c.get_den()));
  // Candidate p/q with p | a_0, q | a_n. Only suitable for modest coefficients.
  const auto ps = divisors_of(ip.front());
  const auto qs = divisors_of(ip.back());
  for (const auto& p : ps) {
    for (const auto& q : qs) {
      for (int sign : {1, -1}) {
        Rational cand(sign * p, q);
        cand.canonicalize();
        if (std::find(roots.begin(), roots.end(), cand) != roots.end()) continue;
        // Deflate as many times as cand is a root.
        while (poly.size() > 1 && eval(poly, cand) == 0) {
          roots.push_back(cand);
          std::vector<Rational> quotient(poly.size() - 1);
          Rational carry = 0;
          for (std::size_t i = poly.size() - 1; i-- > 0;) {
            carry = carry * cand + poly[i + 1];
            quotient[i] = carry;
          }
          poly = std::move(quotient);
        }
      }
    }
  }
  return roots;
}

Integer integer_determinant(std::vector<std::vector<Integer>> m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && m[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(m[p], m[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i][j] = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        mpz_divexact(m[i][j].get_mpz_t(), m[i][j].get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

}  // namespace mverify::linalg
