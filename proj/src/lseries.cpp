#include "lseries.hpp"

#include "parallel.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace mverify::lseries {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Block partial sums merged pairwise; the block size is fixed so the result
// does not depend on the number of workers.
template <class Term>
double deterministic_sum(int first, int last, Term term, double* abs_sum) {
  constexpr int kBlock = 2048;
  if (last < first) {
    if (abs_sum) *abs_sum = 0;
    return 0;
  }
  const int nblocks = (last - first) / kBlock + 1;
  std::vector<double> sums(nblocks, 0.0), abs_sums(nblocks, 0.0);
  parallel::for_each_index(static_cast<std::size_t>(nblocks), [&](std::size_t b) {
    const int lo = first + static_cast<int>(b) * kBlock;
    const int hi = std::min(last, lo + kBlock - 1);
    double s = 0, a = 0;
    for (int n = lo; n <= hi; ++n) {
      const double t = term(n);
      s += t;
      a += std::abs(t);
    }
    sums[b] = s;
    abs_sums[b] = a;
  });
  while (sums.size() > 1) {
    std::vector<double> next, next_abs;
    for (std::size_t i = 0; i < sums.size(); i += 2) {
      const bool pair = i + 1 < sums.size();
      next.push_back(sums[i] + (pair ? sums[i + 1] : 0.0));
      next_abs.push_back(abs_sums[i] + (pair ? abs_sums[i + 1] : 0.0));
    }
    sums = std::move(next);
    abs_sums = std::move(next_abs);
  }
  if (abs_sum) *abs_sum = abs_sums[0];
  return sums[0];
}

// a(n) n^{-(w-1)/2}, bounded by d(n) for newforms.
std::vector<double> normalized_coefficients(const Eigenform& f, int m) {
  if (f.order() < m)
    throw std::invalid_argument("eigenform " + f.label() + " is only known through q^" +
                                std::to_string(f.order()) + ", need q^" + std::to_string(m));
  std::vector<double> out(m + 1, 0.0);
  const double e = -(f.weight() - 1) / 2.0;
  for (int n = 1; n <= m; ++n) out[n] = f.coeff(n) * std::pow(static_cast<double>(n), e);
  return out;
}

// sum_{n <= M} lambda_f(n) lambda_g(n) n^{-s} with its tail and rounding.
Certified normalized_dirichlet(const RankinSpec& spec, double s, int m) {
  if (!(s > 1)) throw std::invalid_argument("Dirichlet series needs s > 1");
  if (m < 1) throw std::invalid_argument("truncation M must be >= 1");
  const auto lf = normalized_coefficients(spec.f(), m);
  const auto lg = normalized_coefficients(spec.g(), m);
  double abs_sum = 0;
  const double sum = deterministic_sum(
      1, m, [&](int n) { return lf[n] * lg[n] * std::pow(static_cast<double>(n), -s); }, &abs_sum);
  Certified c;
  c.value = sum;
  c.error_bound = divisor_square_tail(s, m) + rounding_slack(abs_sum, 8.0 + std::log2(m + 1.0));
  return c;
}

}  // namespace

Certified zeta(double s) {
  if (!(s > 1)) throw std::invalid_argument("zeta: s must exceed 1");
  constexpr int kN = 20;
  constexpr int kTerms = 10;
  double head = 0;
  for (int n = kN - 1; n >= 1; --n) head += std::pow(static_cast<double>(n), -s);
  const double nn = kN;
  double value = head + std::pow(nn, 1 - s) / (s - 1) + 0.5 * std::pow(nn, -s);
  // B_{2j}/(2j)! s(s+1)...(s+2j-2) N^{-s-2j+1}
  double rising = s;  // s(s+1)...(s+2j-2) for j = 1
  double last = 0;
  for (int j = 1; j <= kTerms + 1; ++j) {
    const double b = series::bernoulli_number(2 * j).get_d() /
                     series::factorial(2 * j).get_d();
    const double term = b * rising * std::pow(nn, -s - 2 * j + 1);
    if (j <= kTerms) value += term;
    else last = std::abs(term);
    rising *= (s + 2 * j - 1) * (s + 2 * j);
  }
  // For real s the remainder is at most the first omitted term.
  return {value, last + rounding_slack(std::abs(value), kN + 2.0 * kTerms)};
}

RankinSpec::RankinSpec(Eigenform f, Eigenform g) : f_(std::move(f)), g_(std::move(g)) {
  if (f_.weight() % 2 != 0) throw std::invalid_argument("RankinSpec: weight of f must be even");
  if (g_.weight() - f_.weight() != 8)
    throw std::invalid_argument("RankinSpec: weight(g) must equal weight(f) + 8, got " +
                                std::to_string(f_.weight()) + " and " +
                                std::to_string(g_.weight()));
  if (f_.level() != g_.level()) throw std::invalid_argument("RankinSpec: levels differ");
}

double divisor_square_tail(double s, int m) {
  if (!(s > 1)) throw std::invalid_argument("tail bound needs s > 1");
  double best = std::numeric_limits<double>::infinity();
  const double mm = std::max(1, m);
  // Geometric grid for t - 1 in (0, s - 1).
  for (int i = 1; i < 400; ++i) {
    const double eta = (s - 1) * std::pow(1e-4, 1.0 - i / 400.0);
    const double t = 1 + eta;
    if (!(t < s)) break;
    const auto z = zeta(t);
    const auto z2 = zeta(2 * t);
    const double zu = z.value.real() + z.error_bound;
    const double z2l = z2.value.real() - z2.error_bound;
    const double bound = std::pow(mm, t - s) * std::pow(zu, 4) / z2l;
    best = std::min(best, bound);
  }
  return best;
}

Certified rankin_dirichlet(const RankinSpec& spec, double s, int m) {
  const Certified d = normalized_dirichlet(spec, s, m);
  const Certified z = zeta(2 * s);
  Certified c;
  c.value = z.value * d.value;
  c.error_bound = std::abs(z.value) * d.error_bound + z.error_bound * std::abs(d.value) +
                  z.error_bound * d.error_bound + rounding_slack(std::abs(c.value), 2);
  return c;
}

std::complex<double> local_factor(const RankinSpec& spec, int p, double s) {
  const auto sf = modforms::satake_params(spec.f(), p);
  const auto sg = modforms::satake_params(spec.g(), p);
  const double ps = std::pow(static_cast<double>(p), -s);
  std::complex<double> prod = 1;
  for (const auto& a : {sf.alpha, sf.beta})
    for (const auto& b : {sg.alpha, sg.beta}) prod *= 1.0 - a * b * ps;
  return 1.0 / prod;
}

std::complex<double> ramified_local_factor(const RankinSpec& spec, int p, double s) {
  if (spec.level() % p != 0) throw std::invalid_argument("ramified_local_factor: p does not divide N");
  const double pp = p;
  const double lf = spec.f().coeff(p) * std::pow(pp, -(spec.f().weight() - 1) / 2.0);
  const double lg = spec.g().coeff(p) * std::pow(pp, -(spec.g().weight() - 1) / 2.0);
  return 1.0 / ((1.0 - std::pow(pp, -2 * s)) * (1.0 - lf * lg * std::pow(pp, -s)));
}

Certified rankin_euler(const RankinSpec& spec, double s, int primes_upto,
                       const LocalFactors& supplied) {
  if (!(s > 1)) throw std::invalid_argument("Euler product needs s > 1");
  const auto primes = modforms::primes_up_to(primes_upto);
  std::vector<std::complex<double>> factors(primes.size());
  for (std::size_t i = 0; i < primes.size(); ++i) {
    const int p = primes[i];
    if (spec.level() % p == 0) {
      const auto it = supplied.find(p);
      if (it == supplied.end())
        throw std::invalid_argument("ramified prime " + std::to_string(p) +
                                    " needs a supplied local factor");
      factors[i] = it->second;
    } else {
      factors[i] = local_factor(spec, p, s);
    }
  }
  std::complex<double> prod = 1;
  for (const auto& f : factors) prod *= f;
  // Every remaining prime contributes |log factor| <= 4 (-log(1 - p^{-s}))
  // <= 4 p^{-s} / (1 - p^{-s}).
  const double pnext = std::max(1, primes_upto) + 1.0;
  const double head = std::max(1, primes_upto);
  const double tail_sum = std::pow(head, 1 - s) / (s - 1);
  const double t = 4.0 / (1.0 - std::pow(pnext, -s)) * tail_sum;
  Certified c;
  c.value = prod;
  c.error_bound = std::abs(prod) * std::expm1(t) +
                  rounding_slack(std::abs(prod), 12.0 * (primes.size() + 1));
  if (spec.level() == 1 && std::abs(prod.imag()) > 1e-12)
    throw std::logic_error("Euler product of real eigenforms has an imaginary part");
  return c;
}

Integer gamma_factor_exact(int k) { return series::factorial(2 * k + 6); }

Certified closed_form_A(const RankinSpec& spec, int m) {
  const Certified d = normalized_dirichlet(spec, 4.0, m);
  const int e = spec.critical_exponent();
  const double log_c = std::log(gamma_factor_exact(spec.k()).get_d()) - e * std::log(4 * kPi);
  const double c = std::exp(log_c);
  Certified out;
  out.value = c * d.value;
  out.error_bound = c * d.error_bound + rounding_slack(std::abs(out.value), 2.0 * e);
  return out;
}

NonvanishingReport certify_nonvanishing(const RankinSpec& spec, double s, int m) {
  NonvanishingReport r;
  r.value = rankin_dirichlet(spec, s, m);
  r.margin = r.value.margin();
  r.certified = r.margin > 0;
  std::ostringstream msg;
  msg.precision(6);
  if (r.certified) {
    msg << "|L| = " << std::abs(r.value.value) << " exceeds the error bound "
        << r.value.error_bound << " by a factor " << std::abs(r.value.value) / r.value.error_bound;
  } else {
    msg << "inconclusive: error bound " << r.value.error_bound << " is not below |L| = "
        << std::abs(r.value.value) << " at M = " << m;
  }
  r.diagnostic = msg.str();
  return r;
}

Rational ramified_factor(int p) {
  if (!modforms::is_prime(p)) throw std::invalid_argument("ramified_factor: p must be prime");
  Rational r(Integer(p) * p * p * p, Integer(p + 1));
  r.canonicalize();
  return r;
}

}  // namespace mverify::lseries
