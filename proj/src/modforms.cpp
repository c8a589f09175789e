#include "modforms.hpp"

#include "linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace mverify::modforms {

using series::EtaFactor;

// ---------------------------------------------------------------------------
// Quadratic numbers

QuadraticNumber qn_add(const QuadraticNumber& x, const QuadraticNumber& y) {
  return {x.a + y.a, x.b + y.b};
}

QuadraticNumber qn_sub(const QuadraticNumber& x, const QuadraticNumber& y) {
  return {x.a - y.a, x.b - y.b};
}

QuadraticNumber qn_mul(const QuadraticNumber& x, const QuadraticNumber& y, long d) {
  return {x.a * y.a + x.b * y.b * d, x.a * y.b + x.b * y.a};
}

double qn_to_double(const QuadraticNumber& x, long d) {
  if (x.b == 0) return x.a.get_d();
  // Extended precision so that a + b sqrt(d) does not cancel catastrophically.
  mpf_class root(0, 512), a(x.a, 512), b(x.b, 512);
  mpf_class dd(static_cast<double>(d), 512);
  mpf_sqrt(root.get_mpf_t(), dd.get_mpf_t());
  mpf_class v = a + b * root;
  return v.get_d();
}

// ---------------------------------------------------------------------------
// Eigenform

Eigenform::Eigenform(int weight, int level, std::string label, QSeries coeffs)
    : weight_(weight), level_(level), label_(std::move(label)), field_(Field::Rational) {
  approx_.resize(coeffs.order() + 1);
  for (int n = 0; n <= coeffs.order(); ++n) approx_[n] = coeffs.coeff_double(n);
  rational_ = std::move(coeffs);
  check_normalized();
}

Eigenform::Eigenform(int weight, int level, std::string label, long field_d,
                     std::vector<QuadraticNumber> coeffs)
    : weight_(weight), level_(level), label_(std::move(label)) {
  bool rational = true;
  for (const auto& c : coeffs) rational = rational && c.b == 0;
  if (rational || field_d == 1) {
    std::vector<Rational> r;
    for (const auto& c : coeffs) r.push_back(c.a);
    *this = Eigenform(weight, level, label_, QSeries::from_rationals(r));
    return;
  }
  field_ = Field::Quadratic;
  field_d_ = field_d;
  approx_.resize(coeffs.size());
  for (std::size_t n = 0; n < coeffs.size(); ++n) approx_[n] = qn_to_double(coeffs[n], field_d);
  quadratic_ = std::move(coeffs);
  check_normalized();
}

Eigenform Eigenform::inexact(int weight, int level, std::string label,
                             std::vector<double> coeffs) {
  Eigenform f;
  f.weight_ = weight;
  f.level_ = level;
  f.label_ = std::move(label);
  f.field_ = Field::Inexact;
  f.approx_ = std::move(coeffs);
  f.check_normalized();
  return f;
}

void Eigenform::check_normalized() const {
  if (level_ < 1) throw std::invalid_argument("eigenform level must be positive");
  if (approx_.size() < 2) throw std::invalid_argument("eigenform needs coefficients through q^1");
  if (is_exact()) {
    if (!(exact_coeff(0) == QuadraticNumber{}))
      throw std::invalid_argument("eigenform " + label_ + ": constant term is not zero");
    if (!(exact_coeff(1) == QuadraticNumber{1, 0}))
      throw std::invalid_argument("eigenform " + label_ + ": a(1) != 1");
  } else if (approx_[0] != 0.0 || approx_[1] != 1.0) {
    throw std::invalid_argument("eigenform " + label_ + ": not normalized (a(0)=0, a(1)=1)");
  }
}

const QSeries& Eigenform::rational_series() const {
  if (!rational_) throw std::logic_error("eigenform " + label_ + " has non-rational coefficients");
  return *rational_;
}

QuadraticNumber Eigenform::exact_coeff(int n) const {
  switch (field_) {
    case Field::Rational:
      return {rational_->coeff(n), 0};
    case Field::Quadratic:
      return quadratic_.at(static_cast<std::size_t>(n));
    case Field::Inexact:
      break;
  }
  throw std::logic_error("eigenform " + label_ + " has inexact coefficients");
}

Eigenform Eigenform::truncate(int new_order) const {
  if (new_order > order()) throw std::invalid_argument("cannot extend an eigenform");
  switch (field_) {
    case Field::Rational:
      return Eigenform(weight_, level_, label_, rational_->truncate(new_order));
    case Field::Quadratic:
      return Eigenform(weight_, level_, label_, field_d_,
                       std::vector<QuadraticNumber>(quadratic_.begin(),
                                                    quadratic_.begin() + new_order + 1));
    case Field::Inexact:
      break;
  }
  return inexact(weight_, level_, label_,
                 std::vector<double>(approx_.begin(), approx_.begin() + new_order + 1));
}

bool operator==(const Eigenform& a, const Eigenform& b) {
  if (a.weight() != b.weight() || a.level() != b.level() || a.label() != b.label() ||
      a.field() != b.field() || a.field_d() != b.field_d() || a.order() != b.order())
    return false;
  if (!a.is_exact()) return a.numeric() == b.numeric();
  for (int n = 0; n <= a.order(); ++n) {
    if (!(a.exact_coeff(n) == b.exact_coeff(n))) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Arithmetic helpers

std::vector<int> primes_up_to(int n) {
  std::vector<int> out;
  if (n < 2) return out;
  std::vector<bool> composite(n + 1, false);
  for (int i = 2; i <= n; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (long j = static_cast<long>(i) * i; j <= n; j += i) composite[j] = true;
  }
  return out;
}

bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<std::pair<long, int>> factorize(long n) {
  std::vector<std::pair<long, int>> out;
  for (long p = 2; p * p <= n; ++p) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e) out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

bool is_squarefree(long n) {
  if (n < 1) return false;
  for (const auto& [p, e] : factorize(n))
    if (e > 1) return false;
  return true;
}

namespace {

// sigma_k(n) for n = 1..order by a divisor sieve.
std::vector<Integer> sigma_table(int k, int order) {
  std::vector<Integer> s(order + 1, Integer(0));
  Integer pw;
  for (int d = 1; d <= order; ++d) {
    mpz_ui_pow_ui(pw.get_mpz_t(), static_cast<unsigned long>(d), static_cast<unsigned long>(k));
    for (int m = d; m <= order; m += d) s[m] += pw;
  }
  return s;
}

Integer ipow(long base, int e) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(std::labs(base)),
                static_cast<unsigned long>(e));
  if (base < 0 && e % 2 == 1) r = -r;
  return r;
}

}  // namespace

// ---------------------------------------------------------------------------
// Eisenstein series

QSeries eisenstein_q(int k, int order) {
  if (k < 4 || k % 2 != 0) {
    throw std::invalid_argument("eisenstein_q: weight must be even and >= 4, got " +
                                std::to_string(k));
  }
  if (order < 0) throw std::invalid_argument("negative truncation order");
  const Rational factor = -Rational(2 * k) / series::bernoulli_number(k);
  auto sig = sigma_table(k - 1, order);
  std::vector<Integer> num(order + 1);
  num[0] = factor.get_den();
  for (int n = 1; n <= order; ++n) num[n] = factor.get_num() * sig[n];
  return QSeries::from_integers(std::move(num), factor.get_den());
}

QSeries eisenstein_e2(int order) {
  auto sig = sigma_table(1, order);
  std::vector<Integer> num(order + 1);
  num[0] = 1;
  for (int n = 1; n <= order; ++n) num[n] = -24 * sig[n];
  return QSeries::from_integers(std::move(num));
}

QSeries delta_q(int order) {
  const EtaFactor f[] = {{1, 24}};
  return series::eta_quotient(f, order);
}

QSeries gamma0_eisenstein_infty(int k, int level, int order) {
  if (level < 1 || !is_squarefree(level)) {
    throw std::invalid_argument("gamma0_eisenstein_infty: level " + std::to_string(level) +
                                " is not squarefree");
  }
  QSeries e = eisenstein_q(k, order);
  for (const auto& [p, exp] : factorize(level)) {
    (void)exp;
    const Integer pk = ipow(p, k);
    QSeries raised = e.substitute_power(static_cast<int>(p)).truncate(order);
    e = (raised * Rational(pk) - e) * Rational(1, pk - 1);
  }
  return e;
}

// ---------------------------------------------------------------------------
// Level 1 cusp forms

int cusp_dimension_level1(int weight) {
  if (weight < 12 || weight % 2 != 0) return 0;
  return weight / 12 - (weight % 12 == 2 ? 1 : 0);
}

std::vector<QSeries> level1_cusp_basis(int weight, int order) {
  std::vector<QSeries> basis;
  if (cusp_dimension_level1(weight) == 0) return basis;
  const QSeries delta = delta_q(order);
  for (int c = 1; 12 * c <= weight; ++c) {
    const int rest = weight - 12 * c;
    if (rest == 2) continue;
    QSeries dc = series::series_pow(delta, c).truncate(order);
    // M_rest is one-dimensional for rest in {4,6,8,10,14}, so E4^a E6^b = E_rest.
    basis.push_back(rest == 0 ? dc : series::series_mul(dc, eisenstein_q(rest, order)));
  }
  return basis;
}

namespace {

// Squarefree part d and square root s of a positive integer disc = s^2 d.
std::pair<long, Integer> split_square(Integer disc) {
  Integer s = 1;
  long d = 1;
  for (Integer p = 2; p * p <= disc; ++p) {
    while (disc % (p * p) == 0) {
      disc /= p * p;
      s *= p;
    }
  }
  d = disc.get_si();
  return {d, s};
}

std::string letter_label(int level, int weight, int index) {
  return std::to_string(level) + "." + std::to_string(weight) + "." +
         std::string(1, static_cast<char>('a' + index));
}

}  // namespace

std::vector<Eigenform> level1_eigenform(int weight, int order) {
  if (weight < 12) {
    if (weight % 2 != 0 || weight < 0) throw std::invalid_argument("weight must be even");
    return {};
  }
  const int dim = cusp_dimension_level1(weight);
  if (dim == 0) return {};
  if (dim == 1) {
    auto basis = level1_cusp_basis(weight, order);
    return {Eigenform(weight, 1, letter_label(1, weight, 0), basis[0])};
  }
  if (dim > 2) {
    throw std::invalid_argument("level1_eigenform: cusp space of weight " + std::to_string(weight) +
                                " has dimension " + std::to_string(dim) + " (> 2 unsupported)");
  }
  // T_2 on the echelon basis b_1 = q + ..., b_2 = q^2 + ...
  const int work = std::max(order, 2 * dim + 2);
  auto basis = level1_cusp_basis(weight, work);
  linalg::Matrix t(dim, linalg::Vector(dim));
  linalg::Matrix rows(dim, linalg::Vector(dim));
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) rows[i][j] = basis[i].coeff(j + 1);
  for (int i = 0; i < dim; ++i) {
    QSeries img = hecke_apply(weight, 2, basis[i], 1, dim);
    linalg::Vector target(dim);
    for (int j = 0; j < dim; ++j) target[j] = img.coeff(j + 1);
    auto c = linalg::solve_combination(rows, target);
    if (!c) throw std::logic_error("T_2 image not in the span of the basis");
    t[i] = *c;  // T_2 b_i = sum_j t[i][j] b_j
  }
  // f = b_1 + x b_2 with T_2 f = lambda f:  lambda = t00 + x t10, x lambda = t01 + x t11.
  const auto poly = linalg::charpoly(t);  // x^2 + c1 x + c0
  const Rational c1 = poly[1], c0 = poly[0];
  // sqrt(N/D) = sqrt(N D) / D = s sqrt(d) / D.
  const Rational disc = c1 * c1 - 4 * c0;
  const Integer disc_den = disc.get_den();
  auto [d, s] = split_square(disc.get_num() * disc_den);
  std::vector<Eigenform> out;
  for (int sign : {1, -1}) {
    QuadraticNumber lambda{-c1 / 2, Rational(sign * s, 2 * disc_den)};
    lambda.b.canonicalize();
    if (d == 1) lambda = {lambda.a + lambda.b, 0};
    if (t[1][0] == 0) throw std::logic_error("degenerate T_2 matrix");
    // x = (lambda - t00) / t10
    QuadraticNumber x{(lambda.a - t[0][0]) / t[1][0], lambda.b / t[1][0]};
    std::vector<QuadraticNumber> coeffs(order + 1);
    for (int n = 0; n <= order; ++n) {
      QuadraticNumber b1{basis[0].coeff(n), 0}, b2{basis[1].coeff(n), 0};
      coeffs[n] = qn_add(b1, qn_mul(x, b2, d));
    }
    out.emplace_back(weight, 1, letter_label(1, weight, static_cast<int>(out.size())), d,
                     std::move(coeffs));
  }
  return out;
}

QSeries hecke_apply(int weight, int p, const QSeries& s, int level, int out_order) {
  if (!is_prime(p)) throw std::invalid_argument("hecke_apply: p must be prime");
  if (level % p == 0) {
    throw std::invalid_argument("hecke_apply: p = " + std::to_string(p) + " divides the level");
  }
  if (out_order < 0) out_order = s.order() / p;
  if (static_cast<long>(p) * out_order > s.order()) {
    throw std::invalid_argument("hecke_apply: need the series through q^" +
                                std::to_string(static_cast<long>(p) * out_order) + ", have q^" +
                                std::to_string(s.order()));
  }
  const Integer pk = ipow(p, weight - 1);
  const auto& num = s.numerators();
  std::vector<Integer> out(out_order + 1);
  for (int n = 0; n <= out_order; ++n) {
    out[n] = num[static_cast<std::size_t>(p) * n];
    if (n % p == 0) out[n] += pk * num[n / p];
  }
  return QSeries::from_integers(std::move(out), s.denominator());
}

// ---------------------------------------------------------------------------
// Satake parameters

SatakePair satake_params(const Eigenform& f, int p) {
  if (!is_prime(p)) throw std::invalid_argument("satake_params: p must be prime");
  if (f.level() % p == 0) {
    throw std::invalid_argument("satake_params: p = " + std::to_string(p) +
                                " is ramified (divides the level)");
  }
  if (p > f.order()) throw std::out_of_range("satake_params: a(p) beyond stored range");
  SatakePair sp;
  sp.p = p;
  // a(p) p^{-(w-1)/2}: exact a(p) rounded once, then one pow.
  sp.trace = f.coeff(p) * std::pow(static_cast<double>(p), -(f.weight() - 1) / 2.0);
  const double t = sp.trace;
  const double disc = t * t - 4.0;
  if (disc <= 0) {
    const double im = std::sqrt(-disc) / 2.0;
    sp.alpha = {t / 2.0, im};
    sp.beta = {t / 2.0, -im};
  } else {
    const double r = std::sqrt(disc);
    // Stable roots, product exactly 1 in exact arithmetic.
    const double big = (t >= 0 ? t + r : t - r) / 2.0;
    sp.alpha = big;
    sp.beta = 1.0 / big;
  }
  return sp;
}

std::complex<double> tilde_f(int v, std::complex<double> alpha) {
  if (v < 0) throw std::invalid_argument("tilde_f: v must be >= 0");
  if (alpha == 0.0) throw std::invalid_argument("tilde_f: alpha must be nonzero");
  std::complex<double> sum = 0;
  for (int j = 0; j <= v; ++j) sum += std::pow(alpha, v - 2 * j);
  return sum;
}

int atkin_lehner_sign(const Eigenform& f, int p) {
  if (f.level() % p != 0 || (f.level() / p) % p == 0) {
    throw std::invalid_argument("atkin_lehner_sign: p must divide the level exactly once");
  }
  const Integer pk = ipow(p, f.weight() - 2);
  if (f.is_exact()) {
    const auto ap = f.exact_coeff(p);
    if (ap.b != 0 || ap.a * ap.a != Rational(pk)) {
      throw std::invalid_argument("atkin_lehner_sign: a(p)^2 != p^{k-2}; not a newform at p");
    }
    return ap.a > 0 ? -1 : 1;
  }
  const double ap = f.coeff(p);
  const double expect = std::pow(static_cast<double>(p), (f.weight() - 2) / 2.0);
  if (std::fabs(std::fabs(ap) - expect) > 1e-9 * expect) {
    throw std::invalid_argument("atkin_lehner_sign: |a(p)| != p^{k/2-1}");
  }
  return ap > 0 ? -1 : 1;
}

std::vector<int> deligne_violations(const Eigenform& f, int prime_bound) {
  std::vector<int> bad;
  for (int p : primes_up_to(std::min(prime_bound, f.order()))) {
    const double bound = 2.0 * std::pow(static_cast<double>(p), (f.weight() - 1) / 2.0);
    if (std::fabs(f.coeff(p)) > bound * (1 + 1e-12)) bad.push_back(p);
  }
  return bad;
}

// ---------------------------------------------------------------------------
// Certification

namespace {

bool coeff_equal(const Eigenform& f, const QuadraticNumber& lhs, const QuadraticNumber& rhs) {
  (void)f;
  return lhs == rhs;
}

bool approx_equal(double x, double y, double scale) {
  return std::fabs(x - y) <= 1e-9 * std::max({std::fabs(x), std::fabs(y), scale});
}

}  // namespace

std::vector<HeckeFailure> certify_hecke(const Eigenform& f, int prime_bound) {
  std::vector<HeckeFailure> failures;
  const long d = f.field_d();
  for (int p : primes_up_to(prime_bound)) {
    if (f.level() % p == 0) continue;
    const int out = f.order() / p;
    if (out < 1) break;
    if (f.is_exact()) {
      const QuadraticNumber ap = f.exact_coeff(p);
      const Rational pk(ipow(p, f.weight() - 1));
      for (int n = 1; n <= out; ++n) {
        QuadraticNumber lhs = f.exact_coeff(p * n);
        if (n % p == 0) {
          const auto prev = f.exact_coeff(n / p);
          lhs = qn_add(lhs, {prev.a * pk, prev.b * pk});
        }
        const QuadraticNumber rhs = qn_mul(ap, f.exact_coeff(n), d);
        if (!coeff_equal(f, lhs, rhs)) {
          failures.push_back({p, n});
          break;
        }
      }
    } else {
      const double ap = f.coeff(p);
      const double pk = std::pow(static_cast<double>(p), f.weight() - 1);
      for (int n = 1; n <= out; ++n) {
        double lhs = f.coeff(p * n);
        if (n % p == 0) lhs += pk * f.coeff(n / p);
        const double rhs = ap * f.coeff(n);
        const double scale = std::fabs(ap * f.coeff(n)) + std::fabs(f.coeff(p * n));
        if (!approx_equal(lhs, rhs, scale)) {
          failures.push_back({p, n});
          break;
        }
      }
    }
  }
  return failures;
}

std::vector<MultiplicativityFailure> check_multiplicativity(const Eigenform& f, int pair_bound) {
  std::vector<MultiplicativityFailure> failures;
  const int order = f.order();
  const long d = f.field_d();
  auto equal = [&](int idx, int m, int n) {
    if (f.is_exact()) return f.exact_coeff(idx) == qn_mul(f.exact_coeff(m), f.exact_coeff(n), d);
    const double lhs = f.coeff(idx), rhs = f.coeff(m) * f.coeff(n);
    return approx_equal(lhs, rhs, std::fabs(lhs));
  };
  const int bound = pair_bound > 0 ? pair_bound : order;
  for (int m = 2; m <= bound && 2 * m <= order; ++m) {
    for (int n = m + 1; n <= bound && static_cast<long>(m) * n <= order; ++n) {
      if (std::gcd(m, n) != 1) continue;
      if (!equal(m * n, m, n)) failures.push_back({m, n});
    }
  }
  // Prime powers.
  for (int p : primes_up_to(std::min(bound, order))) {
    const bool ramified = f.level() % p == 0;
    long prev = 1, cur = p;
    while (cur * p <= order) {
      const long next = cur * p;
      bool ok;
      if (ramified) {
        ok = equal(static_cast<int>(next), static_cast<int>(cur), p);
      } else if (f.is_exact()) {
        const Rational pk(ipow(p, f.weight() - 1));
        const auto prv = f.exact_coeff(static_cast<int>(prev));
        const auto rhs = qn_sub(qn_mul(f.exact_coeff(p), f.exact_coeff(static_cast<int>(cur)), d),
                                {prv.a * pk, prv.b * pk});
        ok = f.exact_coeff(static_cast<int>(next)) == rhs;
      } else {
        const double pk = std::pow(static_cast<double>(p), f.weight() - 1);
        const double rhs = f.coeff(p) * f.coeff(static_cast<int>(cur)) -
                           pk * f.coeff(static_cast<int>(prev));
        const double lhs = f.coeff(static_cast<int>(next));
        ok = approx_equal(lhs, rhs,
                          std::fabs(f.coeff(p) * f.coeff(static_cast<int>(cur))) +
                              std::fabs(pk * f.coeff(static_cast<int>(prev))));
      }
      if (!ok) failures.push_back({static_cast<int>(cur), p});
      prev = cur;
      cur = next;
    }
  }
  return failures;
}

// ---------------------------------------------------------------------------
// Level 2

std::vector<QSeries> gamma0_2_cusp_basis(int weight, int order) {
  if (weight < 8 || weight % 2 != 0) return {};
  const EtaFactor h[] = {{1, 8}, {2, 8}};
  const QSeries h8 = series::eta_quotient(h, order);
  const QSeries e2 = eisenstein_e2(order);
  const QSeries f2 =
      (e2.substitute_power(2).truncate(order) * Rational(2) - e2);  // weight 2 on Gamma_0(2)
  const QSeries e4 = eisenstein_q(4, order);
  std::vector<QSeries> basis;
  const int rest = weight - 8;
  for (int b = 0; 4 * b <= rest; ++b) {
    const int a2 = rest - 4 * b;
    if (a2 % 2 != 0) continue;
    QSeries m = series::series_mul(series::series_pow(f2, a2 / 2), series::series_pow(e4, b));
    basis.push_back(series::series_mul(h8, m.truncate(order)));
  }
  return basis;
}

Eigenform level2_newform(int weight, int order) {
  const auto probe = gamma0_2_cusp_basis(weight, 8);
  const int dim = static_cast<int>(probe.size());
  if (dim == 0) throw std::invalid_argument("no cusp forms of this weight on Gamma_0(2)");
  const int len = dim + 4;
  const int work = std::max(order, 3 * len);
  const auto basis = gamma0_2_cusp_basis(weight, work);

  linalg::Matrix rows(dim, linalg::Vector(len));
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < len; ++j) rows[i][j] = basis[i].coeff(j + 1);
  if (linalg::rank(rows) != dim) throw std::logic_error("Gamma_0(2) basis is degenerate");

  linalg::Matrix t(dim, linalg::Vector(dim));
  for (int i = 0; i < dim; ++i) {
    QSeries img = hecke_apply(weight, 3, basis[i], 2, len);
    linalg::Vector target(len);
    for (int j = 0; j < len; ++j) target[j] = img.coeff(j + 1);
    auto c = linalg::solve_combination(rows, target);
    if (!c) throw std::logic_error("T_3 image not in the span of the basis");
    t[i] = *c;
  }
  // Old eigenvalues come from level-1 eigenforms g(tau), g(2 tau).
  std::vector<Rational> old;
  for (const auto& g : level1_eigenform(weight, 3)) {
    if (g.field() == Eigenform::Field::Rational) old.push_back(g.rational_series().coeff(3));
  }
  std::vector<Rational> fresh;
  for (const auto& r : linalg::rational_roots(linalg::charpoly(t))) {
    if (std::find(old.begin(), old.end(), r) == old.end() &&
        std::find(fresh.begin(), fresh.end(), r) == fresh.end())
      fresh.push_back(r);
  }
  if (fresh.size() != 1) {
    throw std::invalid_argument("level2_newform: weight " + std::to_string(weight) +
                                " does not have a single rational newform");
  }
  // Left eigenvector: x^T t = lambda x^T.
  linalg::Matrix a(dim, linalg::Vector(dim));
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) a[i][j] = t[j][i] - (i == j ? fresh[0] : Rational(0));
  auto ker = linalg::kernel(a);
  if (ker.size() != 1) throw std::logic_error("newform eigenspace is not one-dimensional");
  QSeries f = QSeries::zero(work);
  for (int i = 0; i < dim; ++i) f += basis[i] * ker[0][i];
  const Rational a1 = f.coeff(1);
  if (a1 == 0) throw std::logic_error("newform has a(1) = 0");
  f *= 1 / a1;
  Eigenform out(weight, 2, letter_label(2, weight, 0), f.truncate(order));
  atkin_lehner_sign(out, 2);  // throws unless a(2)^2 = 2^{k-2}
  return out;
}

}  // namespace mverify::modforms
