#pragma once

// Elliptic modular forms: Eisenstein series of level 1 and of Gamma_0(N) at
// the cusp infinity, Hecke eigenforms of level 1, prime-level newforms from
// eta products, Hecke operators and Satake parameters.

#include "qseries.hpp"

#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace mverify::modforms {

using series::Integer;
using series::QSeries;
using series::Rational;

// a + b*sqrt(d) for the field discriminant d carried by the owning Eigenform.
struct QuadraticNumber {
  Rational a = 0;
  Rational b = 0;

  bool operator==(const QuadraticNumber&) const = default;
};

QuadraticNumber qn_add(const QuadraticNumber& x, const QuadraticNumber& y);
QuadraticNumber qn_sub(const QuadraticNumber& x, const QuadraticNumber& y);
QuadraticNumber qn_mul(const QuadraticNumber& x, const QuadraticNumber& y, long d);
double qn_to_double(const QuadraticNumber& x, long d);

// A normalized Hecke eigenform with coefficients a(0..M). Coefficients are
// rational, in a real quadratic field Q(sqrt(d)), or (for ingested decimal
// data) inexact doubles.
class Eigenform {
 public:
  enum class Field { Rational, Quadratic, Inexact };

  Eigenform(int weight, int level, std::string label, QSeries coeffs);
  Eigenform(int weight, int level, std::string label, long field_d,
            std::vector<QuadraticNumber> coeffs);
  static Eigenform inexact(int weight, int level, std::string label, std::vector<double> coeffs);

  int weight() const { return weight_; }
  int level() const { return level_; }
  const std::string& label() const { return label_; }
  int order() const { return static_cast<int>(approx_.size()) - 1; }
  Field field() const { return field_; }
  bool is_exact() const { return field_ != Field::Inexact; }
  // d for Q(sqrt(d)); 1 when the coefficients are rational.
  long field_d() const { return field_d_; }

  // Throws unless field() == Rational.
  const QSeries& rational_series() const;
  // Exact coefficient; throws for inexact forms.
  QuadraticNumber exact_coeff(int n) const;
  double coeff(int n) const { return approx_.at(static_cast<std::size_t>(n)); }
  const std::vector<double>& numeric() const { return approx_; }

  Eigenform truncate(int order) const;

 private:
  Eigenform() = default;
  void check_normalized() const;

  int weight_ = 0;
  int level_ = 1;
  std::string label_;
  Field field_ = Field::Rational;
  long field_d_ = 1;
  std::optional<QSeries> rational_;
  std::vector<QuadraticNumber> quadratic_;
  std::vector<double> approx_;
};

bool operator==(const Eigenform& a, const Eigenform& b);

// 1 - (2k/B_k) sum sigma_{k-1}(n) q^n through q^M. k even, k >= 4.
QSeries eisenstein_q(int k, int order);

// 1 - 24 sum sigma_1(n) q^n (quasimodular; used for level-2 generators).
QSeries eisenstein_e2(int order);

// Ramanujan's Delta through q^M.
QSeries delta_q(int order);

int cusp_dimension_level1(int weight);

// Echelon basis Delta^c * E_{k-12c} (c = 1..dim) of S_k(SL_2(Z)).
std::vector<QSeries> level1_cusp_basis(int weight, int order);

// The normalized Hecke eigenforms of S_k(SL_2(Z)) through q^M. Spaces of
// dimension > 2 with irrational eigenvalues are rejected.
std::vector<Eigenform> level1_eigenform(int weight, int order);

// (T_p s)(n) = s(pn) + p^{k-1} s(n/p) through q^{out_order}; out_order < 0
// means the largest available. Throws if s is not known through p*out_order
// or if p divides the level.
QSeries hecke_apply(int weight, int p, const QSeries& s, int level, int out_order = -1);

// Weight-k Eisenstein series for Gamma_0(N) attached to the cusp infinity,
// N squarefree: apply F -> (p^k F(p tau) - F(tau)) / (p^k - 1) for each p | N.
QSeries gamma0_eisenstein_infty(int k, int level, int order);

struct SatakePair {
  int p = 0;
  std::complex<double> alpha;
  std::complex<double> beta;
  // a(p) p^{-(w-1)/2}
  double trace = 0;
};

// Roots of X^2 - a(p) p^{-(w-1)/2} X + 1. Rejects p | level.
SatakePair satake_params(const Eigenform& f, int p);

// sum_{j=0}^{v} alpha^{v-2j}
std::complex<double> tilde_f(int v, std::complex<double> alpha);

// Atkin-Lehner eigenvalue at p || N, from a(p) = -eps p^{k/2-1}.
int atkin_lehner_sign(const Eigenform& f, int p);

// Local Ramanujan-type bound |a(p)| <= 2 p^{(k-1)/2}; list of violating p <= bound.
std::vector<int> deligne_violations(const Eigenform& f, int prime_bound);

struct HeckeFailure {
  int p = 0;  // prime
  int n = 0;  // coefficient index where T_p f != a(p) f
};

// T_p f = a(p) f on all n with p*n <= order for primes p <= prime_bound, p
// not dividing the level. Exact for exact forms, relative 1e-9 otherwise.
std::vector<HeckeFailure> certify_hecke(const Eigenform& f, int prime_bound);

struct MultiplicativityFailure {
  int m = 0;
  int n = 0;
};

// a(mn) = a(m) a(n) for coprime m, n with mn <= order, and the prime-power
// recursion for p not dividing the level (a(p^l) = a(p)^l for p | level).
// Pairs are restricted to m, n <= pair_bound when pair_bound > 0.
std::vector<MultiplicativityFailure> check_multiplicativity(const Eigenform& f,
                                                            int pair_bound = 0);

// Cusp forms of weight k on Gamma_0(2): eta(tau)^8 eta(2 tau)^8 times the
// monomials F2^a E4^b of weight k-8, with F2 = 2 E2(2 tau) - E2(tau).
std::vector<QSeries> gamma0_2_cusp_basis(int weight, int order);

// The newform of weight k and level 2 when the new subspace is spanned by a
// single rational eigenform; otherwise throws.
Eigenform level2_newform(int weight, int order);

std::vector<int> primes_up_to(int n);
bool is_prime(long n);
// Prime factorization as (p, exponent) pairs.
std::vector<std::pair<long, int>> factorize(long n);
bool is_squarefree(long n);

}  // namespace mverify::modforms
