#include "quadrature.hpp"

#include "parallel.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace mverify::quadrature {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kEps = std::numeric_limits<double>::epsilon();

// zeta(s) <= 1 + 2^{-s} + 2^{1-s}/(s-1)
double zeta_upper(double s) { return 1 + std::pow(2.0, -s) + std::pow(2.0, 1 - s) / (s - 1); }

struct Rule {
  std::vector<double> nodes, weights;  // on [-1, 1]
};

const Rule& gauss_rule() {
  static const Rule rule = [] {
    using G = boost::math::quadrature::gauss<double, 20>;
    Rule r;
    const auto& a = G::abscissa();
    const auto& w = G::weights();
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] == 0) {
        r.nodes.push_back(0);
        r.weights.push_back(w[i]);
        continue;
      }
      r.nodes.push_back(-a[i]);
      r.weights.push_back(w[i]);
      r.nodes.push_back(a[i]);
      r.weights.push_back(w[i]);
    }
    return r;
  }();
  return rule;
}

long gcd_l(long a, long b) { return std::gcd(std::abs(a), std::abs(b)); }

std::vector<long> prime_factors(long n) {
  std::vector<long> out;
  for (const auto& [p, e] : modforms::factorize(n)) out.push_back(p);
  return out;
}

// Upper bound for int_{y1}^infty exp(-c y) y^a dy.
double exp_power_tail(double c, double a, double y1) {
  if (c <= 0) return std::numeric_limits<double>::infinity();
  const double head = std::pow(y1, a) * std::exp(-c * y1);
  if (a <= 0) return head / c;
  // log-derivative a/y - c stays below a/y1 - c on [y1, infinity)
  if (c * y1 <= a) return std::numeric_limits<double>::infinity();
  return head / (c - a / y1);
}

}  // namespace

FormEvaluator FormEvaluator::constant_one() {
  FormEvaluator f;
  f.coeffs_ = {1.0};
  return f;
}

FormEvaluator FormEvaluator::level_one(const QSeries& q, int weight, double tail_a,
                                       double tail_beta) {
  FormEvaluator f;
  f.weight_ = weight;
  f.coeffs_.resize(q.order() + 1);
  for (int n = 0; n <= q.order(); ++n) f.coeffs_[n] = q.coeff_double(n);
  f.tail_a_ = tail_a;
  f.tail_beta_ = tail_beta;
  return f;
}

FormEvaluator FormEvaluator::from_eigenform(const Eigenform& e, int order) {
  if (order > e.order()) throw std::invalid_argument("from_eigenform: order exceeds known coefficients");
  FormEvaluator f;
  f.weight_ = e.weight();
  f.level_ = e.level();
  f.coeffs_.assign(e.numeric().begin(), e.numeric().begin() + order + 1);
  f.tail_a_ = 2.0;
  f.tail_beta_ = e.weight() / 2.0;
  if (e.level() == 1) {
    f.kind_ = Kind::LevelOne;
  } else if (modforms::is_prime(e.level())) {
    f.kind_ = Kind::Newform;
    f.al_sign_ = modforms::atkin_lehner_sign(e, e.level());
  } else {
    throw std::invalid_argument("from_eigenform: only level 1 or prime level is supported");
  }
  return f;
}

FormEvaluator FormEvaluator::eisenstein(int k, int level, int order) {
  const double bk = series::bernoulli_number(k).get_d();
  const double a = std::abs(2.0 * k / bk) * zeta_upper(k - 1.0);
  auto base = std::make_shared<FormEvaluator>(level_one(modforms::eisenstein_q(k, order), k, a, k - 1.0));
  if (level == 1) return *base;
  if (!modforms::is_prime(level)) throw std::invalid_argument("eisenstein: level must be 1 or prime");
  // (p^k c(n/p) - c(n)) / (p^k - 1) obeys the same bound A n^{k-1}.
  FormEvaluator f = level_one(modforms::gamma0_eisenstein_infty(k, level, order), k, a, k - 1.0);
  f.level_ = level;
  f.kind_ = Kind::EisensteinInfinity;
  f.base_ = std::move(base);
  return f;
}

Certified FormEvaluator::eval(std::complex<double> tau) const {
  if (tau.imag() < y_min_)
    throw std::invalid_argument("eval: Im tau = " + std::to_string(tau.imag()) +
                                " is below the configured minimum " + std::to_string(y_min_));
  return eval_unchecked(tau);
}

Certified FormEvaluator::eval_unchecked(std::complex<double> tau) const {
  const double y = tau.imag();
  if (!(y > 0)) throw std::invalid_argument("eval: tau must lie in the upper half plane");
  const int m = order();
  const double r = std::exp(-2 * kPi * y);
  const std::complex<double> q = std::polar(r, 2 * kPi * tau.real());
  std::complex<double> sum = coeffs_[0];
  std::complex<double> qn = 1;
  double abs_sum = std::abs(coeffs_[0]);
  double rn = 1;
  for (int n = 1; n <= m; ++n) {
    qn *= q;
    rn *= r;
    sum += coeffs_[n] * qn;
    abs_sum += std::abs(coeffs_[n]) * rn;
  }
  double tail = 0;
  if (tail_a_ > 0) {
    const double rho = std::pow((m + 2.0) / (m + 1.0), tail_beta_) * r;
    if (rho >= 1) throw std::domain_error("eval: q-expansion tail bound does not converge here");
    tail = tail_a_ * std::pow(m + 1.0, tail_beta_) * std::pow(r, m + 1.0) / (1 - rho);
  }
  return {sum, tail + (4.0 * m + 8.0) * kEps * abs_sum};
}

Certified FormEvaluator::eval_slash_s(std::complex<double> u) const {
  switch (kind_) {
    case Kind::LevelOne:
      return eval_unchecked(u);
    case Kind::Newform: {
      const double p = level_;
      const double scale = al_sign_ * std::pow(p, -weight_ / 2.0);
      const auto v = eval_unchecked(u / p);
      return {scale * v.value, std::abs(scale) * v.error_bound + 4 * kEps * std::abs(scale * v.value)};
    }
    case Kind::EisensteinInfinity: {
      const double p = level_;
      const double denom = std::pow(p, weight_) - 1;
      const auto a = base_->eval_unchecked(u / p);
      const auto b = base_->eval_unchecked(u);
      const auto v = (a.value - b.value) / denom;
      return {v, (a.error_bound + b.error_bound) / denom +
                     4 * kEps * (std::abs(a.value) + std::abs(b.value)) / denom};
    }
  }
  throw std::logic_error("unreachable");
}

double FormEvaluator::nonconstant_sup(double y0) const {
  const int m = order();
  double s = 0;
  for (int n = 1; n <= m; ++n) s += std::abs(coeffs_[n]) * std::exp(-2 * kPi * (n - 1) * y0);
  if (tail_a_ > 0) {
    const double r = std::exp(-2 * kPi * y0);
    const double rho = std::pow((m + 2.0) / (m + 1.0), tail_beta_) * r;
    if (rho >= 1) return std::numeric_limits<double>::infinity();
    s += tail_a_ * std::pow(m + 1.0, tail_beta_) * std::pow(r, static_cast<double>(m)) / (1 - rho);
  }
  return s;
}

TailShape FormEvaluator::tail_shape(bool s_coset, double y1) const {
  TailShape t;
  if (!s_coset || kind_ == Kind::LevelOne) {
    t.constant = coeffs_[0];
    t.decays.push_back({nonconstant_sup(y1), 1.0});
    return t;
  }
  const double p = level_;
  if (kind_ == Kind::Newform) {
    const double scale = std::pow(p, -weight_ / 2.0);
    t.constant = al_sign_ * scale * coeffs_[0];
    t.decays.push_back({scale * nonconstant_sup(y1 / p), 1.0 / p});
    return t;
  }
  const double denom = std::pow(p, weight_) - 1;
  t.constant = 0;  // the constant terms of E_k(u/p) and E_k(u) cancel
  t.decays.push_back({base_->nonconstant_sup(y1 / p) / denom, 1.0 / p});
  t.decays.push_back({base_->nonconstant_sup(y1) / denom, 1.0});
  return t;
}

long gamma0_index(long n) {
  if (n < 1) throw std::invalid_argument("gamma0_index: N must be positive");
  long idx = n;
  for (long p : prime_factors(n)) idx = idx / p * (p + 1);
  return idx;
}

bool same_gamma0_coset(const Mat2& a, const Mat2& b, long n) {
  // a b^{-1} lies in Gamma_0(N) iff c_a d_b - d_a c_b = 0 mod N.
  const long v = a[2] * b[3] - a[3] * b[2];
  return ((v % n) + n) % n == 0;
}

std::vector<Mat2> coset_reps(long n) {
  if (n < 1 || !modforms::is_squarefree(n)) throw std::invalid_argument("coset_reps: N must be squarefree");
  std::vector<Mat2> reps;
  for (long c = 0; c < n; ++c) {
    for (long d = 0; d < n; ++d) {
      if (std::gcd(std::gcd(c, d), n) != 1) continue;
      Mat2 m{};
      if (c == 0) {
        m = {1, 0, 0, 1};
      } else {
        long dd = d;
        while (gcd_l(c, dd) != 1) dd += n;
        // a dd - b c = 1 by the extended Euclidean algorithm.
        long old_r = dd, r = c, old_s = 1, s = 0;
        while (r != 0) {
          const long qt = old_r / r;
          old_r -= qt * r;
          std::swap(old_r, r);
          old_s -= qt * s;
          std::swap(old_s, s);
        }
        const long a = old_s;
        const long b = (a * dd - 1) / c;
        m = {a, b, c, dd};
      }
      bool seen = false;
      for (const auto& r : reps)
        if (same_gamma0_coset(r, m, n)) seen = true;
      if (!seen) reps.push_back(m);
    }
  }
  if (static_cast<long>(reps.size()) != gamma0_index(n))
    throw std::logic_error("coset_reps: count does not match the index");
  return reps;
}

Certified eisenstein_direct_eval(int k, long level, std::complex<double> tau, long c_max) {
  if (k < 4) throw std::invalid_argument("eisenstein_direct_eval: k must be at least 4");
  if (level < 1) throw std::invalid_argument("eisenstein_direct_eval: level must be positive");
  if (!(tau.imag() > 0)) throw std::invalid_argument("eisenstein_direct_eval: tau not in H");
  std::complex<double> sum = 1;  // (c, d) = (0, 1)
  double abs_sum = 1;
  double count = 1;
  for (long c = level; c <= c_max; c += level) {
    for (long d = -c_max; d <= c_max; ++d) {
      if (gcd_l(c, d) != 1) continue;
      const std::complex<double> z = static_cast<double>(c) * tau + static_cast<double>(d);
      const std::complex<double> w = 1.0 / z;
      std::complex<double> t = 1;
      for (int i = 0; i < k; ++i) t *= w;
      sum += t;
      abs_sum += std::abs(t);
      count += 1;
    }
  }
  // |c tau + d|^2 >= lambda (c^2 + d^2) with lambda the smaller eigenvalue of
  // [[|tau|^2, x], [x, 1]]; at most 8m pairs have max(|c|,|d|) = m.
  const double x = tau.real();
  const double n2 = std::norm(tau);
  const double lambda = ((n2 + 1) - std::sqrt((n2 - 1) * (n2 - 1) + 4 * x * x)) / 2;
  const double tail = c_max == 0 ? std::numeric_limits<double>::infinity()
                                 : 4 * std::pow(lambda, -k / 2.0) *
                                       std::pow(static_cast<double>(c_max), 2.0 - k) / (k - 2);
  return {sum, tail + (count + 2.0 * k + 4) * kEps * abs_sum};
}

namespace {

struct Coset {
  bool s = false;
  long shift = 0;
};

struct Integrand {
  const FormEvaluator& f;
  const FormEvaluator& g;
  const FormEvaluator& e;
  double ypow;

  // value and error at tau in F, for the given coset.
  std::pair<std::complex<double>, double> operator()(const Coset& c, double x, double y) const {
    const std::complex<double> tau(x, y);
    Certified a, b, d;
    if (c.s) {
      const std::complex<double> u = tau + static_cast<double>(c.shift);
      a = f.eval_slash_s(u);
      b = g.eval_slash_s(u);
      d = e.eval_slash_s(u);
    } else {
      a = f.eval_unchecked(tau);
      b = g.eval_unchecked(tau);
      d = e.eval_unchecked(tau);
    }
    const double yp = std::pow(y, ypow);
    const std::complex<double> v = a.value * std::conj(b.value) * d.value * yp;
    const double ma = std::abs(a.value), mb = std::abs(b.value), md = std::abs(d.value);
    const double err = ((ma + a.error_bound) * (mb + b.error_bound) * (md + d.error_bound) -
                        ma * mb * md) * yp +
                       8 * kEps * std::abs(v);
    return {v, err};
  }
};

struct CompactResult {
  std::complex<double> value = 0;
  double eval_error = 0;
  double abs_sum = 0;
  long points = 0;
};

// Gauss-Legendre in x on x_panels panels; in t = log y from log sqrt(1-x^2)
// to log y1 on panels of width about h.
CompactResult compact_integral(const Integrand& integrand, const std::vector<Coset>& cosets,
                               double y1, int x_panels, double h) {
  const Rule& rule = gauss_rule();
  const std::size_t nx = static_cast<std::size_t>(x_panels) * rule.nodes.size();
  std::vector<CompactResult> per_x(nx);
  parallel::for_each_index(nx, [&](std::size_t ix) {
    const std::size_t panel = ix / rule.nodes.size();
    const std::size_t node = ix % rule.nodes.size();
    const double xw = 1.0 / x_panels;
    const double x = -0.5 + xw * (panel + 0.5 * (rule.nodes[node] + 1));
    const double wx = 0.5 * xw * rule.weights[node];
    const double t0 = 0.5 * std::log(1 - x * x);
    const double t1 = std::log(y1);
    const int tp = std::max(1, static_cast<int>(std::ceil((t1 - t0) / h)));
    const double tw = (t1 - t0) / tp;
    CompactResult r;
    for (int j = 0; j < tp; ++j) {
      for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
        const double t = t0 + tw * (j + 0.5 * (rule.nodes[k] + 1));
        const double y = std::exp(t);
        // dx dy / y^2 with dy = y dt
        const double w = wx * 0.5 * tw * rule.weights[k] / y;
        for (const auto& c : cosets) {
          const auto [v, err] = integrand(c, x, y);
          r.value += w * v;
          r.eval_error += w * err;
          r.abs_sum += w * std::abs(v);
          ++r.points;
        }
      }
    }
    per_x[ix] = r;
  });
  CompactResult total;
  for (const auto& r : per_x) {
    total.value += r.value;
    total.eval_error += r.eval_error;
    total.abs_sum += r.abs_sum;
    total.points += r.points;
  }
  return total;
}

// Exact constant-term contribution above y1 plus a bound for the rest.
std::pair<std::complex<double>, double> cusp_tail(const Integrand& in, const std::vector<Coset>& cosets,
                                                  double y1) {
  const double a = in.ypow - 2;
  std::complex<double> exact = 0;
  double bound = 0;
  for (const auto& c : cosets) {
    const TailShape shapes[3] = {in.f.tail_shape(c.s, y1), in.g.tail_shape(c.s, y1),
                                 in.e.tail_shape(c.s, y1)};
    const std::complex<double> consts[3] = {shapes[0].constant, std::conj(shapes[1].constant),
                                            shapes[2].constant};
    const std::complex<double> c0 = consts[0] * consts[1] * consts[2];
    if (c0 != 0.0) {
      if (a >= -1) throw std::invalid_argument("petersson_integral: the integral diverges at the cusp");
      exact += c0 * std::pow(y1, a + 1) / -(a + 1);
    }
    // Every other term of the product expansion picks at least one decay.
    std::vector<std::pair<double, double>> terms{{1.0, 0.0}};
    for (int i = 0; i < 3; ++i) {
      std::vector<std::pair<double, double>> next;
      for (const auto& [amp, mu] : terms) {
        next.push_back({amp * std::abs(consts[i]), mu});
        for (const auto& [k, m] : shapes[i].decays) next.push_back({amp * k, mu + m});
      }
      terms = std::move(next);
    }
    for (const auto& [amp, mu] : terms) {
      if (mu == 0 || amp == 0) continue;
      bound += amp * exp_power_tail(2 * kPi * mu, a, y1);
    }
  }
  return {exact, bound};
}

}  // namespace

QuadratureReport petersson_integral(const FormEvaluator& f, const FormEvaluator& g,
                                    const FormEvaluator& e, double ypow, long level) {
  if (f.weight() + e.weight() != g.weight() || ypow != g.weight())
    throw std::invalid_argument(
        "petersson_integral: need wt(f) + wt(e) = wt(g) = ypow for an invariant integrand");
  if (level != 1 && !modforms::is_prime(level))
    throw std::invalid_argument("petersson_integral: level must be 1 or prime");
  for (const FormEvaluator* h : {&f, &g, &e})
    if (h->level() != 1 && h->level() != level)
      throw std::invalid_argument("petersson_integral: form level does not divide N");

  // Gamma_0(p)\SL_2(Z) = {I} u {S T^j : 0 <= j < p}.
  std::vector<Coset> cosets{{false, 0}};
  if (level > 1)
    for (long j = 0; j < level; ++j) cosets.push_back({true, j});

  const Integrand in{f, g, e, ypow};
  double y1 = 6.0;
  const auto probe = compact_integral(in, cosets, y1, 2, 0.5);
  const double scale = std::max(std::abs(probe.value), 1e-300);
  auto tail = cusp_tail(in, cosets, y1);
  while (tail.second > 1e-11 * scale && y1 < 200) {
    y1 *= 1.25;
    tail = cusp_tail(in, cosets, y1);
  }

  const auto coarse = compact_integral(in, cosets, y1, 2, 0.5);
  const auto fine = compact_integral(in, cosets, y1, 4, 0.25);
  QuadratureReport rep;
  rep.y1 = y1;
  rep.compact_difference = std::abs(fine.value - coarse.value);
  rep.tail_bound = tail.second;
  rep.evaluation_bound = fine.eval_error;
  rep.points = fine.points;
  rep.value.value = fine.value + tail.first;
  rep.value.error_bound = rep.compact_difference + rep.tail_bound + rep.evaluation_bound +
                          rounding_slack(fine.abs_sum, 64);
  return rep;
}

}  // namespace mverify::quadrature
