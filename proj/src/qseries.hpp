#pragma once

// Exact truncated q-expansions.
//
// A QSeries holds c_0..c_M as integer numerators over one common positive
// denominator. M is the truncation order: every coefficient up to q^M is
// known exactly, nothing beyond it is. Operations compute the honest order
// of their result instead of padding with zeros.

#include <gmpxx.h>

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace mverify::series {

using Integer = mpz_class;
using Rational = mpq_class;

class QSeries {
 public:
  // The zero series known through q^0.
  QSeries();

  static QSeries from_integers(std::vector<Integer> coeffs, Integer denominator = 1);
  static QSeries from_rationals(std::span<const Rational> coeffs);
  static QSeries constant(const Rational& c, int order);
  static QSeries zero(int order) { return constant(0, order); }

  int order() const { return static_cast<int>(num_.size()) - 1; }
  Rational coeff(int n) const;
  // Coefficient as a double; exact up to the final rounding.
  double coeff_double(int n) const;

  const std::vector<Integer>& numerators() const { return num_; }
  const Integer& denominator() const { return den_; }
  bool is_integral() const { return den_ == 1; }

  // Index of the first nonzero coefficient, or order()+1 if all known
  // coefficients vanish.
  int valuation() const;

  QSeries truncate(int order) const;
  // f(q) -> f(q^d). Known through d*(M+1)-1.
  QSeries substitute_power(int d) const;
  // q^shift * f(q).
  QSeries shift(int shift) const;

  QSeries operator-() const;
  QSeries& operator+=(const QSeries& other);
  QSeries& operator-=(const QSeries& other);
  QSeries& operator*=(const Rational& scalar);

  // Same truncation order and identical coefficients.
  bool operator==(const QSeries& other) const;

  std::string to_string(int max_terms = 8) const;

 private:
  void normalize();

  std::vector<Integer> num_;
  Integer den_;
};

QSeries operator+(QSeries a, const QSeries& b);
QSeries operator-(QSeries a, const QSeries& b);
QSeries operator*(QSeries a, const Rational& s);
QSeries operator*(const Rational& s, QSeries a);
QSeries operator*(const QSeries& a, const QSeries& b);

// Cauchy product; the result is known through
// min(M_a + v_b, M_b + v_a) where v is the valuation.
QSeries series_mul(const QSeries& a, const QSeries& b);

// s^e for e >= 0, by the power-series recurrence when s(0) != 0.
QSeries series_pow(const QSeries& s, int e);

// Agreement of two series on their common range of known coefficients.
bool agree_through(const QSeries& a, const QSeries& b, int order);

struct EtaFactor {
  int d;  // eta(d*tau)
  int e;  // exponent
};

// q^{val} * prod_d prod_{n>=1} (1 - q^{dn})^{e_d}, val = (1/24) sum d*e,
// truncated at order M. Throws std::invalid_argument for a fractional or
// negative valuation.
QSeries eta_quotient(std::span<const EtaFactor> factors, int order);

// Exact Bernoulli numbers with B_1 = -1/2.
Rational bernoulli_number(int n);
// Bernoulli polynomial B_n(x).
Rational bernoulli_polynomial(int n, const Rational& x);

Integer binomial(int n, int k);
Integer factorial(int n);
Integer divisor_sigma(int k, std::int64_t n);

}  // namespace mverify::series
