#include "qseries.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace mverify::series {

QSeries::QSeries() : num_(1, Integer(0)), den_(1) {}

QSeries QSeries::from_integers(std::vector<Integer> coeffs, Integer denominator) {
  if (coeffs.empty()) throw std::invalid_argument("QSeries needs at least one coefficient");
  if (denominator == 0) throw std::invalid_argument("QSeries denominator is zero");
  QSeries s;
  s.num_ = std::move(coeffs);
  s.den_ = std::move(denominator);
  s.normalize();
  return s;
}

QSeries QSeries::from_rationals(std::span<const Rational> coeffs) {
  if (coeffs.empty()) throw std::invalid_argument("QSeries needs at least one coefficient");
  Integer lcm = 1;
  for (const auto& c : coeffs) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den_mpz_t());
  std::vector<Integer> num(coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    num[i] = coeffs[i].get_num() * (lcm / coeffs[i].get_den());
  }
  return from_integers(std::move(num), lcm);
}

QSeries QSeries::constant(const Rational& c, int order) {
  if (order < 0) throw std::invalid_argument("negative truncation order");
  std::vector<Integer> num(order + 1, Integer(0));
  num[0] = c.get_num();
  return from_integers(std::move(num), c.get_den());
}

Rational QSeries::coeff(int n) const {
  if (n < 0 || n > order()) {
    throw std::out_of_range("coefficient q^" + std::to_string(n) + " beyond truncation order " +
                            std::to_string(order()));
  }
  Rational r(num_[n], den_);
  r.canonicalize();
  return r;
}

double QSeries::coeff_double(int n) const { return coeff(n).get_d(); }

int QSeries::valuation() const {
  for (int i = 0; i <= order(); ++i) {
    if (num_[i] != 0) return i;
  }
  return order() + 1;
}

void QSeries::normalize() {
  if (den_ < 0) {
    den_ = -den_;
    for (auto& c : num_) c = -c;
  }
  if (den_ == 1) return;
  Integer g = den_;
  for (const auto& c : num_) {
    if (g == 1) break;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  }
  if (g == 1) return;
  den_ /= g;
  for (auto& c : num_) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
}

QSeries QSeries::truncate(int new_order) const {
  if (new_order < 0) throw std::invalid_argument("negative truncation order");
  if (new_order > order()) {
    throw std::invalid_argument("cannot extend a series beyond its truncation order");
  }
  QSeries s = *this;
  s.num_.resize(new_order + 1);
  s.normalize();
  return s;
}

QSeries QSeries::substitute_power(int d) const {
  if (d < 1) throw std::invalid_argument("substitute_power needs d >= 1");
  QSeries s;
  s.num_.assign(static_cast<std::size_t>(d) * (order() + 1), Integer(0));
  for (int i = 0; i <= order(); ++i) s.num_[static_cast<std::size_t>(i) * d] = num_[i];
  s.den_ = den_;
  return s;
}

QSeries QSeries::shift(int k) const {
  if (k < 0) throw std::invalid_argument("negative shift");
  QSeries s;
  s.num_.assign(num_.size() + k, Integer(0));
  std::copy(num_.begin(), num_.end(), s.num_.begin() + k);
  s.den_ = den_;
  return s;
}

QSeries QSeries::operator-() const {
  QSeries s = *this;
  for (auto& c : s.num_) c = -c;
  return s;
}

QSeries& QSeries::operator+=(const QSeries& other) {
  const int m = std::min(order(), other.order());
  num_.resize(m + 1);
  if (den_ == other.den_) {
    for (int i = 0; i <= m; ++i) num_[i] += other.num_[i];
  } else {
    for (int i = 0; i <= m; ++i) num_[i] = num_[i] * other.den_ + other.num_[i] * den_;
    den_ *= other.den_;
  }
  normalize();
  return *this;
}

QSeries& QSeries::operator-=(const QSeries& other) { return *this += -other; }

QSeries& QSeries::operator*=(const Rational& scalar) {
  for (auto& c : num_) c *= scalar.get_num();
  den_ *= scalar.get_den();
  normalize();
  return *this;
}

bool QSeries::operator==(const QSeries& other) const {
  return den_ == other.den_ && num_ == other.num_;
}

std::string QSeries::to_string(int max_terms) const {
  std::ostringstream os;
  int shown = 0;
  for (int i = 0; i <= order() && shown < max_terms; ++i) {
    if (num_[i] == 0) continue;
    if (shown > 0) os << " + ";
    os << coeff(i).get_str();
    if (i > 0) os << "*q^" << i;
    ++shown;
  }
  if (shown == 0) os << "0";
  os << " + O(q^" << order() + 1 << ")";
  return os.str();
}

QSeries operator+(QSeries a, const QSeries& b) { return a += b; }
QSeries operator-(QSeries a, const QSeries& b) { return a -= b; }
QSeries operator*(QSeries a, const Rational& s) { return a *= s; }
QSeries operator*(const Rational& s, QSeries a) { return a *= s; }
QSeries operator*(const QSeries& a, const QSeries& b) { return series_mul(a, b); }

QSeries series_mul(const QSeries& a, const QSeries& b) {
  const int va = a.valuation();
  const int vb = b.valuation();
  const int m = std::min(a.order() + vb, b.order() + va);
  std::vector<Integer> out(m + 1, Integer(0));
  const auto& an = a.numerators();
  const auto& bn = b.numerators();
  for (int i = va; i <= std::min(m, a.order()); ++i) {
    if (an[i] == 0) continue;
    const int jmax = std::min(m - i, b.order());
    for (int j = vb; j <= jmax; ++j) {
      mpz_addmul(out[i + j].get_mpz_t(), an[i].get_mpz_t(), bn[j].get_mpz_t());
    }
  }
  return QSeries::from_integers(std::move(out), a.denominator() * b.denominator());
}

namespace {

// B = A^e for an integer series with A(0) = a0 != 0 (a0 = +-1 when e < 0), via
// n a0 B_n = sum_{k=1}^n ((e+1)k - n) a_k B_{n-k}. Sparse in A.
std::vector<Integer> integer_power(const std::vector<Integer>& a, int e, int order) {
  std::vector<int> support;
  for (int k = 1; k < static_cast<int>(a.size()) && k <= order; ++k) {
    if (a[k] != 0) support.push_back(k);
  }
  std::vector<Integer> b(order + 1, Integer(0));
  if (e < 0 && abs(a[0]) != 1) throw std::invalid_argument("negative power of a non-unit series");
  mpz_pow_ui(b[0].get_mpz_t(), a[0].get_mpz_t(), static_cast<unsigned long>(e < 0 ? -e : e));
  Integer acc, w;
  for (int n = 1; n <= order; ++n) {
    acc = 0;
    for (int k : support) {
      if (k > n) break;
      w = static_cast<long>(e + 1) * k - n;
      w *= a[k];
      mpz_addmul(acc.get_mpz_t(), w.get_mpz_t(), b[n - k].get_mpz_t());
    }
    Integer div = a[0] * n;
    mpz_divexact(b[n].get_mpz_t(), acc.get_mpz_t(), div.get_mpz_t());
  }
  return b;
}

}  // namespace

QSeries series_pow(const QSeries& s, int e) {
  if (e < 0) throw std::invalid_argument("series_pow needs e >= 0");
  if (e == 0) return QSeries::constant(1, s.order());
  const int v = s.valuation();
  if (v > s.order()) {
    // Zero through order M: s^e is zero through e*v + (M - v) >= M.
    return QSeries::zero(std::min(e * v + (s.order() - v), s.order() * e + e - 1));
  }
  // s = q^v u with u(0) != 0, u known through M - v.
  const int uorder = s.order() - v;
  std::vector<Integer> u(s.numerators().begin() + v, s.numerators().end());
  auto b = integer_power(u, e, uorder);
  Integer den;
  mpz_pow_ui(den.get_mpz_t(), s.denominator().get_mpz_t(), static_cast<unsigned long>(e));
  return QSeries::from_integers(std::move(b), den).shift(e * v);
}

bool agree_through(const QSeries& a, const QSeries& b, int order) {
  if (a.order() < order || b.order() < order) return false;
  for (int i = 0; i <= order; ++i) {
    if (a.coeff(i) != b.coeff(i)) return false;
  }
  return true;
}

QSeries eta_quotient(std::span<const EtaFactor> factors, int order) {
  if (order < 0) throw std::invalid_argument("negative truncation order");
  long weighted = 0;
  for (const auto& f : factors) {
    if (f.d < 1) throw std::invalid_argument("eta_quotient: d must be a positive integer");
    weighted += static_cast<long>(f.d) * f.e;
  }
  if (weighted % 24 != 0 || weighted < 0) {
    throw std::invalid_argument("eta_quotient: q-valuation sum(d*e)/24 = " +
                                std::to_string(weighted) + "/24 is not a non-negative integer");
  }
  const int val = static_cast<int>(weighted / 24);
  if (val > order) return QSeries::zero(order);
  const int body = order - val;

  QSeries acc = QSeries::constant(1, body);
  for (const auto& f : factors) {
    if (f.e == 0) continue;
    // prod_{n>=1} (1 - x^n) = sum_k (-1)^k x^{k(3k-1)/2} with x = q^d.
    std::vector<Integer> p(body + 1, Integer(0));
    p[0] = 1;
    for (long k = 1;; ++k) {
      const long sign = (k % 2 == 0) ? 1 : -1;
      const long lo = static_cast<long>(f.d) * (k * (3 * k - 1) / 2);
      const long hi = static_cast<long>(f.d) * (k * (3 * k + 1) / 2);
      if (lo > body) break;
      p[lo] += sign;
      if (hi <= body) p[hi] += sign;
    }
    // Valid for negative exponents as well since p(0) = 1.
    auto factor = integer_power(p, f.e, body);
    acc = series_mul(acc, QSeries::from_integers(std::move(factor)));
  }
  return acc.shift(val);
}

Integer binomial(int n, int k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

Integer factorial(int n) {
  if (n < 0) throw std::invalid_argument("factorial of a negative number");
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

Rational bernoulli_number(int n) {
  if (n < 0) throw std::invalid_argument("bernoulli_number needs n >= 0");
  std::vector<Rational> b(n + 1);
  b[0] = 1;
  for (int m = 1; m <= n; ++m) {
    Rational s = 0;
    for (int j = 0; j < m; ++j) s += Rational(binomial(m + 1, j)) * b[j];
    b[m] = -s / (m + 1);
  }
  return b[n];
}

Rational bernoulli_polynomial(int n, const Rational& x) {
  // B_n(x) = sum_j C(n,j) B_j x^{n-j}
  Rational s = 0;
  Rational xp = 1;
  std::vector<Rational> powers(n + 1);
  for (int i = 0; i <= n; ++i) {
    powers[i] = xp;
    xp *= x;
  }
  std::vector<Rational> b(n + 1);
  b[0] = 1;
  for (int m = 1; m <= n; ++m) {
    Rational acc = 0;
    for (int j = 0; j < m; ++j) acc += Rational(binomial(m + 1, j)) * b[j];
    b[m] = -acc / (m + 1);
  }
  for (int j = 0; j <= n; ++j) s += Rational(binomial(n, j)) * b[j] * powers[n - j];
  return s;
}

Integer divisor_sigma(int k, std::int64_t n) {
  if (n <= 0) throw std::invalid_argument("divisor_sigma needs n >= 1");
  Integer s = 0, t;
  for (std::int64_t d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    mpz_ui_pow_ui(t.get_mpz_t(), static_cast<unsigned long>(d), static_cast<unsigned long>(k));
    s += t;
    const std::int64_t e = n / d;
    if (e != d) {
      mpz_ui_pow_ui(t.get_mpz_t(), static_cast<unsigned long>(e), static_cast<unsigned long>(k));
      s += t;
    }
  }
  return s;
}

}  // namespace mverify::series
