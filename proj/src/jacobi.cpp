#include "jacobi.hpp"

#include "modforms.hpp"
#include "parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace mverify::jacobi {

namespace {

long isqrt(long v) {
  long s = static_cast<long>(std::sqrt(static_cast<double>(v)));
  while (s * s > v) --s;
  while ((s + 1) * (s + 1) <= v) ++s;
  return s;
}

int moebius(long n) {
  int mu = 1;
  for (const auto& [p, e] : modforms::factorize(n)) {
    if (e > 1) return 0;
    mu = -mu;
  }
  return mu;
}

Rational canonical(Rational q) {
  q.canonicalize();
  return q;
}

// Reduced positive definite keys with 4nm - r^2 <= 4 det_bound.
std::vector<Key> reduced_keys(long det_bound) {
  std::vector<Key> keys;
  const long d4 = 4 * det_bound;
  for (long n = 1; 3 * n * n <= d4; ++n)
    for (long r = 0; r <= n; ++r)
      for (long m = n; 4 * n * m - r * r <= d4; ++m)
        keys.emplace_back(static_cast<int>(n), static_cast<int>(r), static_cast<int>(m));
  std::sort(keys.begin(), keys.end());
  return keys;
}

Mat2 mul(const Mat2& a, const Mat2& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3], a[2] * b[0] + a[3] * b[2],
          a[2] * b[1] + a[3] * b[3]};
}

}  // namespace

int kronecker(long a, long n) {
  if (n == 0) return std::abs(a) == 1 ? 1 : 0;
  int result = 1;
  if (n < 0) {
    n = -n;
    if (a < 0) result = -result;
  }
  int v = 0;
  while (n % 2 == 0) {
    n /= 2;
    ++v;
  }
  if (v > 0) {
    if (a % 2 == 0) return 0;
    const long a8 = ((a % 8) + 8) % 8;
    if ((v & 1) && (a8 == 3 || a8 == 5)) result = -result;
  }
  a = ((a % n) + n) % n;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      const long n8 = n % 8;
      if (n8 == 3 || n8 == 5) result = -result;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) result = -result;
    a %= n;
  }
  return n == 1 ? result : 0;
}

std::pair<long, long> fundamental_part(long delta) {
  const long mod4 = ((delta % 4) + 4) % 4;
  if (delta == 0 || mod4 > 1) throw std::invalid_argument("fundamental_part: not a discriminant");
  long s = delta < 0 ? -1 : 1;
  for (const auto& [p, e] : modforms::factorize(std::abs(delta)))
    if (e % 2) s *= p;
  const long d0 = ((s % 4) + 4) % 4 == 1 ? s : 4 * s;
  const long f = isqrt(delta / d0);
  if (f * f * d0 != delta) throw std::logic_error("fundamental_part: decomposition failed");
  return {d0, f};
}

Rational dirichlet_l_negative(int r, long d0) {
  // B_{r,chi} = f^{r-1} sum_{a=1}^{f} chi(a) B_r(a/f)
  const long f = std::abs(d0);
  Rational sum = 0;
  for (long a = 1; a <= f; ++a) {
    const int chi = kronecker(d0, a);
    if (chi == 0) continue;
    sum += chi * series::bernoulli_polynomial(r, canonical(Rational(a, f)));
  }
  Integer fp;
  mpz_pow_ui(fp.get_mpz_t(), Integer(f).get_mpz_t(), static_cast<unsigned long>(r - 1));
  return canonical(-(sum * fp) / r);
}

Rational cohen_H(int r, long n) {
  if (r < 1) throw std::invalid_argument("cohen_H: r must be at least 1, got " + std::to_string(r));
  if (n < 0) throw std::invalid_argument("cohen_H: N must be nonnegative");
  if (n == 0) return canonical(-series::bernoulli_number(2 * r) / (2 * r));
  const long delta = r % 2 ? -n : n;
  const long mod4 = ((delta % 4) + 4) % 4;
  if (mod4 > 1) return 0;
  const auto [d0, f] = fundamental_part(delta);
  Rational sum = 0;
  for (long d = 1; d <= f; ++d) {
    if (f % d) continue;
    const int mu = moebius(d);
    const int chi = kronecker(d0, d);
    if (mu == 0 || chi == 0) continue;
    Integer dp;
    mpz_pow_ui(dp.get_mpz_t(), Integer(d).get_mpz_t(), static_cast<unsigned long>(r - 1));
    sum += mu * chi * dp * series::divisor_sigma(2 * r - 1, f / d);
  }
  return canonical(dirichlet_l_negative(r, d0) * sum);
}

JacobiForm1::JacobiForm1(int weight, std::vector<Rational> c) : weight_(weight), c_(std::move(c)) {
  if (c_.empty()) throw std::invalid_argument("JacobiForm1: no coefficients");
  for (std::size_t d = 0; d < c_.size(); ++d) {
    c_[d].canonicalize();
    if ((d % 4 == 1 || d % 4 == 2) && c_[d] != 0)
      throw std::invalid_argument("JacobiForm1: c(" + std::to_string(d) + ") must vanish");
  }
}

const Rational& JacobiForm1::coeff(long d) const {
  static const Rational zero = 0;
  if (d < 0) return zero;
  if (d > max_d()) throw std::out_of_range("JacobiForm1: D = " + std::to_string(d) + " beyond max_D");
  return c_[static_cast<std::size_t>(d)];
}

JacobiForm1 JacobiForm1::truncate(long max_d) const {
  if (max_d > this->max_d()) throw std::invalid_argument("JacobiForm1::truncate: cannot extend");
  return JacobiForm1(weight_, std::vector<Rational>(c_.begin(), c_.begin() + max_d + 1));
}

JacobiForm1 multiply(const QSeries& f, int f_weight, const JacobiForm1& phi) {
  const long max_d = std::min(phi.max_d(), 4L * f.order() + 3);
  std::vector<Rational> c(max_d + 1);
  for (long d = 0; d <= max_d; ++d) {
    Rational s = 0;
    for (long j = 0; 4 * j <= d; ++j) s += f.coeff(static_cast<int>(j)) * phi.coeff(d - 4 * j);
    c[d] = s;
  }
  return JacobiForm1(f_weight + phi.weight(), std::move(c));
}

namespace {

JacobiForm1 combine(const JacobiForm1& a, const JacobiForm1& b, int sign) {
  if (a.weight() != b.weight()) throw std::invalid_argument("JacobiForm1: weights differ");
  const long max_d = std::min(a.max_d(), b.max_d());
  std::vector<Rational> c(max_d + 1);
  for (long d = 0; d <= max_d; ++d) c[d] = a.coeff(d) + sign * b.coeff(d);
  return JacobiForm1(a.weight(), std::move(c));
}

}  // namespace

JacobiForm1 operator+(const JacobiForm1& a, const JacobiForm1& b) { return combine(a, b, 1); }
JacobiForm1 operator-(const JacobiForm1& a, const JacobiForm1& b) { return combine(a, b, -1); }

JacobiForm1 operator*(const Rational& s, const JacobiForm1& a) {
  std::vector<Rational> c(a.max_d() + 1);
  for (long d = 0; d <= a.max_d(); ++d) c[d] = s * a.coeff(d);
  return JacobiForm1(a.weight(), std::move(c));
}

JacobiForm1 jacobi_eisenstein(int k, long max_d) {
  if (k != 4 && k != 6) throw std::invalid_argument("jacobi_eisenstein: k must be 4 or 6");
  if (max_d < 0) throw std::invalid_argument("jacobi_eisenstein: max_D must be nonnegative");
  const Rational z = cohen_H(k - 1, 0);
  std::vector<Rational> c(max_d + 1);
  parallel::for_each_index(static_cast<std::size_t>(max_d + 1), [&](std::size_t d) {
    c[d] = cohen_H(k - 1, static_cast<long>(d)) / z;
  });
  return JacobiForm1(k, std::move(c));
}

JacobiForm1 jacobi_theta_e8(long max_d) {
  if (max_d < 0) throw std::invalid_argument("jacobi_theta_e8: max_D must be nonnegative");
  const lattice::GramLattice e8(lattice::builtin_gram("E8"));
  // A little beyond ceil(max_D / 4) so most D have several representatives.
  const long nmax = max_d / 4 + 2;
  const auto& g = e8.gram();
  std::map<std::pair<long, long>, long> count;  // (n, r) -> #x
  for (const auto& v : lattice::short_vectors(e8, 2 * nmax)) {
    long r = 0;
    for (std::size_t j = 0; j < v.x.size(); ++j) r += g[0][j] * v.x[j];
    const long n = v.norm / 2;
    if (v.norm == 0) {
      ++count[{0, 0}];
      continue;
    }
    ++count[{n, r}];
    ++count[{n, -r}];
  }
  std::vector<Rational> c(max_d + 1);
  std::vector<bool> seen(max_d + 1, false);
  for (long n = 0; n <= nmax; ++n) {
    for (long r = -2 * n; r <= 2 * n; ++r) {
      const long d = 4 * n - r * r;
      if (d < 0 || d > max_d) continue;
      const auto it = count.find({n, r});
      const long val = it == count.end() ? 0 : it->second;
      if (!seen[d]) {
        c[d] = val;
        seen[d] = true;
      } else if (c[d] != val) {
        throw std::logic_error("jacobi_theta_e8: coefficient at (" + std::to_string(n) + ", " +
                               std::to_string(r) + ") differs from another representative of D = " +
                               std::to_string(d));
      }
    }
  }
  for (const auto& [key, val] : count) {
    const long d = 4 * key.first - key.second * key.second;
    if (d < 0) throw std::logic_error("jacobi_theta_e8: vector violates Cauchy-Schwarz");
  }
  return JacobiForm1(4, std::move(c));
}

JacobiForm1 jacobi_cusp_form(int k, long max_d) {
  if (k != 10 && k != 12) throw std::invalid_argument("jacobi_cusp_form: k must be 10 or 12");
  if (max_d < 4) throw std::invalid_argument("jacobi_cusp_form: max_D must be at least 4");
  const int order = static_cast<int>(max_d / 4) + 1;
  const auto e4 = modforms::eisenstein_q(4, order);
  const auto e6 = modforms::eisenstein_q(6, order);
  const auto e41 = jacobi_eisenstein(4, max_d);
  const auto e61 = jacobi_eisenstein(6, max_d);
  JacobiForm1 phi = k == 10 ? multiply(e6, 6, e41) - multiply(e4, 4, e61)
                            : multiply(e4 * e4, 8, e41) - multiply(e6, 6, e61);
  if (!phi.is_cusp()) throw std::logic_error("jacobi_cusp_form: constant term survived");
  const Rational c3 = phi.coeff(3);
  return canonical(1 / c3) * phi;
}

SiegelDeg2Form::SiegelDeg2Form(int weight, long det_bound, std::map<Key, Rational> a)
    : weight_(weight), det_bound_(det_bound), a_(std::move(a)) {
  for (auto& [key, val] : a_) {
    const auto [n, r, m] = key;
    if (lattice::reduce_binary(n, r, m) != key)
      throw std::invalid_argument("SiegelDeg2Form: key is not reduced");
    if (4L * n * m - static_cast<long>(r) * r > 4 * det_bound_)
      throw std::invalid_argument("SiegelDeg2Form: key beyond det_bound");
    val.canonicalize();
  }
}

const Rational& SiegelDeg2Form::at(long n, long r, long m) const {
  const auto it = a_.find(lattice::reduce_binary(n, r, m));
  if (it == a_.end()) throw std::out_of_range("SiegelDeg2Form: T outside the table");
  return it->second;
}

void write_table(std::ostream& out, const SiegelDeg2Form& f) {
  out << "# weight=" << f.weight() << " det_bound=" << f.det_bound() << "\n";
  for (const auto& [key, val] : f.coefficients()) {
    const auto [n, r, m] = key;
    out << n << ' ' << r << ' ' << m << ' ' << val.get_num().get_str() << '/'
        << val.get_den().get_str() << '\n';
  }
}

SiegelDeg2Form read_table(std::istream& in) {
  std::string line;
  int weight = -1;
  long det_bound = -1;
  std::map<Key, Rational> a;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream hs(line.substr(1));
      std::string kv;
      while (hs >> kv) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) continue;
        const auto key = kv.substr(0, eq);
        if (key == "weight") weight = std::stoi(kv.substr(eq + 1));
        if (key == "det_bound") det_bound = std::stol(kv.substr(eq + 1));
      }
      continue;
    }
    std::istringstream ls(line);
    long n, r, m;
    std::string val;
    if (!(ls >> n >> r >> m >> val))
      throw std::invalid_argument("read_table: malformed line " + std::to_string(lineno));
    Rational q;
    if (q.set_str(val, 10) != 0)
      throw std::invalid_argument("read_table: bad rational on line " + std::to_string(lineno));
    a[{static_cast<int>(n), static_cast<int>(r), static_cast<int>(m)}] = q;
  }
  if (weight < 0 || det_bound < 0) throw std::invalid_argument("read_table: missing header");
  return SiegelDeg2Form(weight, det_bound, std::move(a));
}

SiegelDeg2Form maass_lift(const JacobiForm1& phi, long det_bound) {
  if (!phi.is_cusp()) throw std::invalid_argument("maass_lift: c(0) != 0, input is not a cusp form");
  if (det_bound < 1) throw std::invalid_argument("maass_lift: det_bound must be positive");
  if (phi.max_d() < 4 * det_bound)
    throw std::invalid_argument("maass_lift: Jacobi form known only through D = " +
                                std::to_string(phi.max_d()));
  const int k = phi.weight();
  std::map<Key, Rational> a;
  for (const auto& key : reduced_keys(det_bound)) {
    const auto [n, r, m] = key;
    const long g = std::gcd(std::gcd(n, r), m);
    const long d4 = 4L * n * m - static_cast<long>(r) * r;
    Rational s = 0;
    for (long d = 1; d <= g; ++d) {
      if (g % d) continue;
      Integer dp;
      mpz_pow_ui(dp.get_mpz_t(), Integer(d).get_mpz_t(), static_cast<unsigned long>(k - 1));
      s += dp * phi.coeff(d4 / (d * d));
    }
    a[key] = s;
  }
  return SiegelDeg2Form(k, det_bound, std::move(a));
}

SiegelDeg2Form sk_lift(int k, long det_bound) {
  return maass_lift(jacobi_cusp_form(k, std::max(4L, 4 * det_bound)), det_bound);
}

std::vector<Mat2> automorphisms(long n, long r, long m, long bound, bool* boundary) {
  if (n <= 0 || 4 * n * m - r * r <= 0)
    throw std::invalid_argument("automorphisms: T must be positive definite");
  // Rows u with u T u^t = t: solve n x^2 + r y x + (m y^2 - t) = 0 for x.
  auto rows = [&](long t) {
    std::vector<std::pair<long, long>> out;
    for (long y = -bound; y <= bound; ++y) {
      const long disc = r * r * y * y - 4 * n * (m * y * y - t);
      if (disc < 0) continue;
      const long s = isqrt(disc);
      if (s * s != disc) continue;
      for (long num : {-r * y - s, -r * y + s}) {
        if (num % (2 * n)) continue;
        const long x = num / (2 * n);
        if (std::abs(x) <= bound && std::find(out.begin(), out.end(), std::pair{x, y}) == out.end())
          out.emplace_back(x, y);
      }
    }
    return out;
  };
  const auto first = rows(n);
  const auto second = rows(m);
  std::vector<Mat2> found;
  bool hit = false;
  for (const auto& [a, b] : first) {
    for (const auto& [c, d] : second) {
      const long det = a * d - b * c;
      if (det != 1 && det != -1) continue;
      if (2 * n * a * c + r * (a * d + b * c) + 2 * m * b * d != r) continue;
      found.push_back({a, b, c, d});
      for (long e : {a, b, c, d})
        if (std::abs(e) == bound) hit = true;
    }
  }
  if (boundary) *boundary = hit;
  std::sort(found.begin(), found.end());
  return found;
}

int epsilon(long n, long r, long m) {
  long bound = 4 * ((m + n - 1) / n);
  bool hit = false;
  auto auts = automorphisms(n, r, m, bound, &hit);
  if (hit) {
    bound *= 2;
    auts = automorphisms(n, r, m, bound, &hit);
    if (hit)
      throw std::runtime_error("epsilon: automorphism on the search boundary " + std::to_string(bound) +
                               " for T = (" + std::to_string(n) + ", " + std::to_string(r) + ", " +
                               std::to_string(m) + ")");
  }
  const std::set<Mat2> group(auts.begin(), auts.end());
  const bool has_pm_one = group.count({1, 0, 0, 1}) && group.count({-1, 0, 0, -1});
  bool closed = has_pm_one;
  for (const auto& u : group) {
    const long det = u[0] * u[3] - u[1] * u[2];
    if (!group.count({det * u[3], -det * u[1], -det * u[2], det * u[0]})) closed = false;
    for (const auto& v : group)
      if (!group.count(mul(u, v))) closed = false;
  }
  if (!closed) throw std::logic_error("epsilon: automorphisms found do not form a group");
  return static_cast<int>(group.size());
}

std::vector<ReducedForm> reduced_forms(long det_bound) {
  if (det_bound < 1) throw std::invalid_argument("reduced_forms: det_bound must be positive");
  const auto keys = reduced_keys(det_bound);
  std::vector<ReducedForm> out(keys.size());
  parallel::for_each_index(keys.size(), [&](std::size_t i) {
    const auto [n, r, m] = keys[i];
    out[i] = {n, r, m, epsilon(n, r, m)};
  });
  return out;
}

ConvolutionResult rankin_convolution(const SiegelDeg2Form& f, const SiegelDeg2Form& g, double s,
                                     long det_bound) {
  if (f.weight() != g.weight())
    throw std::invalid_argument("rankin_convolution: weights differ (" + std::to_string(f.weight()) +
                                " and " + std::to_string(g.weight()) + ")");
  if (det_bound < 1) throw std::invalid_argument("rankin_convolution: det_bound must be positive");
  if (f.det_bound() < det_bound || g.det_bound() < det_bound)
    throw std::invalid_argument("rankin_convolution: coefficients are not known up to det_bound");
  const auto forms = reduced_forms(det_bound);
  std::vector<double> terms(forms.size());
  parallel::for_each_index(forms.size(), [&](std::size_t i) {
    const auto& t = forms[i];
    const double a = f.at(t.n, t.r, t.m).get_d();
    const double b = g.at(t.n, t.r, t.m).get_d();
    terms[i] = a * b / (t.epsilon * std::pow(t.four_det() / 4.0, s));
  });
  double full = 0, half = 0, abs_sum = 0;
  const long half_bound = 4 * (det_bound / 2);
  for (std::size_t i = 0; i < forms.size(); ++i) {
    full += terms[i];
    abs_sum += std::abs(terms[i]);
    if (forms[i].four_det() <= half_bound) half += terms[i];
  }
  ConvolutionResult res;
  res.terms = static_cast<long>(forms.size());
  res.value.value = full;
  res.value.error_bound = std::abs(full - half) + rounding_slack(abs_sum, forms.size() + 8.0);
  return res;
}

}  // namespace mverify::jacobi
