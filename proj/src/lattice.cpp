#include "lattice.hpp"

#include "linalg.hpp"
#include "parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace mverify::lattice {

using series::Integer;
using series::Rational;

namespace {

std::vector<std::vector<Integer>> to_mpz(const IntMatrix& m) {
  std::vector<std::vector<Integer>> out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (auto v : m[i]) out[i].push_back(Integer(static_cast<long>(v)));
  return out;
}

std::int64_t to_i64(const Integer& z) {
  if (!z.fits_slong_p()) throw std::overflow_error("lattice: integer overflow");
  return z.get_si();
}

// Lattice points x with (s x + o)^T A (s x + o) <= bound, found by
// Fincke-Pohst on the float Cholesky form with a padded radius and then
// filtered on the exact integer value.
class Ellipsoid {
 public:
  Ellipsoid(const IntMatrix& a, std::int64_t scale, IntVector offset, std::int64_t bound)
      : a_(a), n_(static_cast<int>(a.size())), s_(scale), o_(std::move(offset)), bound_(bound) {
    q_.assign(n_, std::vector<double>(n_, 0.0));
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) q_[i][j] = static_cast<double>(a[i][j]);
    for (int i = 0; i < n_; ++i) {
      for (int j = i + 1; j < n_; ++j) {
        q_[j][i] = q_[i][j];
        q_[i][j] /= q_[i][i];
      }
      for (int k = i + 1; k < n_; ++k)
        for (int l = k; l < n_; ++l) q_[k][l] -= q_[k][i] * q_[i][l];
    }
    center_.resize(n_);
    for (int i = 0; i < n_; ++i)
      center_[i] = -static_cast<double>(o_[i]) / static_cast<double>(s_);
    const double s2 = static_cast<double>(s_) * static_cast<double>(s_);
    fbound_ = static_cast<double>(bound_) / s2 * (1.0 + 1e-9) + 1e-9;
  }

  int dim() const { return n_; }

  // Range of the last coordinate; each value is one stratum.
  std::pair<std::int64_t, std::int64_t> strata() const {
    if (n_ == 0) return {0, 0};
    const double r = std::sqrt(fbound_ / q_[n_ - 1][n_ - 1]);
    const double c = center_[n_ - 1];
    return {static_cast<std::int64_t>(std::ceil(c - r)),
            static_cast<std::int64_t>(std::floor(c + r))};
  }

  // fn(const IntVector& x, std::int64_t exact_value) for every point whose
  // last coordinate equals `last`.
  template <class Fn>
  void enumerate_stratum(std::int64_t last, Fn&& fn) const {
    State st(n_);
    if (n_ == 0) {
      fn(st.x, std::int64_t{0});
      return;
    }
    const int i = n_ - 1;
    const double d = static_cast<double>(last) - center_[i];
    const double rem = fbound_ - q_[i][i] * d * d;
    if (rem < 0) return;
    place(st, i, last);
    descend(st, i - 1, rem, fn);
  }

  template <class Fn>
  void enumerate_all(Fn&& fn) const {
    const auto [lo, hi] = strata();
    for (std::int64_t v = lo; v <= hi; ++v) enumerate_stratum(v, fn);
  }

 private:
  struct State {
    explicit State(int n)
        : x(n, 0), u(n, 0), partial(n + 1, 0), g(n + 1, IntVector(n, 0)) {}
    IntVector x, u;
    // partial[i] = exact value restricted to coordinates >= i.
    IntVector partial;
    // g[i][k] = sum_{l >= i} A[k][l] u[l].
    std::vector<IntVector> g;
  };

  void place(State& st, int i, std::int64_t xi) const {
    st.x[i] = xi;
    const std::int64_t ui = s_ * xi + o_[i];
    st.u[i] = ui;
    st.partial[i] = st.partial[i + 1] + a_[i][i] * ui * ui + 2 * ui * st.g[i + 1][i];
    for (int k = 0; k < i; ++k) st.g[i][k] = st.g[i + 1][k] + a_[k][i] * ui;
  }

  template <class Fn>
  void descend(State& st, int i, double remaining, Fn& fn) const {
    if (i < 0) {
      if (st.partial[0] <= bound_) fn(st.x, st.partial[0]);
      return;
    }
    double t = 0;
    for (int j = i + 1; j < n_; ++j) t += q_[i][j] * (static_cast<double>(st.x[j]) - center_[j]);
    const double c = center_[i] - t;
    const double r = std::sqrt(std::max(0.0, remaining / q_[i][i]));
    const auto lo = static_cast<std::int64_t>(std::ceil(c - r));
    const auto hi = static_cast<std::int64_t>(std::floor(c + r));
    for (std::int64_t v = lo; v <= hi; ++v) {
      const double d = static_cast<double>(v) - c;
      const double rem = remaining - q_[i][i] * d * d;
      if (rem < 0) continue;
      place(st, i, v);
      descend(st, i - 1, rem, fn);
    }
  }

  IntMatrix a_;
  int n_;
  std::int64_t s_;
  IntVector o_;
  std::int64_t bound_;
  std::vector<std::vector<double>> q_;
  std::vector<double> center_;
  double fbound_ = 0;
};

bool is_rep(const IntVector& x) {
  for (auto it = x.rbegin(); it != x.rend(); ++it)
    if (*it != 0) return *it > 0;
  return true;
}

// Flat storage of enumerated vectors sorted by (norm, coordinates).
struct VectorSet {
  int dim = 0;
  std::vector<std::int64_t> norms;
  std::vector<std::int32_t> coords;

  std::size_t size() const { return norms.size(); }
  const std::int32_t* at(std::size_t i) const { return coords.data() + i * dim; }
};

VectorSet collect(const GramLattice& l, std::int64_t bound, bool reps_only, std::size_t cap) {
  const Ellipsoid e(l.gram(), 1, IntVector(l.dim(), 0), bound);
  const auto [lo, hi] = e.strata();
  const std::size_t nstrata = static_cast<std::size_t>(hi - lo + 1);
  std::vector<VectorSet> parts(nstrata);
  std::atomic<std::size_t> total{0};
  parallel::for_each_index(nstrata, [&](std::size_t k) {
    const std::int64_t last = lo + static_cast<std::int64_t>(k);
    if (reps_only && last < 0) return;
    auto& part = parts[k];
    part.dim = l.dim();
    e.enumerate_stratum(last, [&](const IntVector& x, std::int64_t v) {
      if (reps_only && !is_rep(x)) return;
      if (total.fetch_add(1) >= cap)
        throw std::length_error("lattice enumeration exceeded the cap of " +
                                std::to_string(cap) + " vectors (bound " +
                                std::to_string(bound) + ")");
      part.norms.push_back(v);
      for (auto c : x) {
        if (c > INT32_MAX || c < INT32_MIN) throw std::overflow_error("coordinate overflow");
        part.coords.push_back(static_cast<std::int32_t>(c));
      }
    });
  });
  VectorSet merged;
  merged.dim = l.dim();
  for (auto& p : parts) {
    merged.norms.insert(merged.norms.end(), p.norms.begin(), p.norms.end());
    merged.coords.insert(merged.coords.end(), p.coords.begin(), p.coords.end());
  }
  std::vector<std::size_t> idx(merged.size());
  std::iota(idx.begin(), idx.end(), 0);
  const int d = merged.dim;
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    if (merged.norms[a] != merged.norms[b]) return merged.norms[a] < merged.norms[b];
    return std::lexicographical_compare(merged.at(a), merged.at(a) + d, merged.at(b),
                                        merged.at(b) + d);
  });
  VectorSet sorted;
  sorted.dim = d;
  sorted.norms.reserve(idx.size());
  sorted.coords.reserve(idx.size() * d);
  for (auto i : idx) {
    sorted.norms.push_back(merged.norms[i]);
    sorted.coords.insert(sorted.coords.end(), merged.at(i), merged.at(i) + d);
  }
  return sorted;
}

// Every vector of the given norm, both signs.
std::vector<IntVector> full_shell(const VectorSet& reps, std::int64_t norm) {
  std::vector<IntVector> out;
  for (std::size_t i = 0; i < reps.size(); ++i) {
    if (reps.norms[i] != norm) continue;
    IntVector x(reps.at(i), reps.at(i) + reps.dim);
    out.push_back(x);
    if (norm != 0) {
      for (auto& c : x) c = -c;
      out.push_back(std::move(x));
    }
  }
  return out;
}

std::vector<std::int64_t> theta_counts_direct(const GramLattice& l, std::int64_t bound) {
  const Ellipsoid e(l.gram(), 1, IntVector(l.dim(), 0), bound);
  const auto [lo, hi] = e.strata();
  const std::size_t nstrata = static_cast<std::size_t>(hi - lo + 1);
  std::vector<std::vector<std::int64_t>> parts(nstrata,
                                               std::vector<std::int64_t>(bound + 1, 0));
  parallel::for_each_index(nstrata, [&](std::size_t k) {
    e.enumerate_stratum(lo + static_cast<std::int64_t>(k),
                        [&](const IntVector&, std::int64_t v) { ++parts[k][v]; });
  });
  std::vector<std::int64_t> counts(bound + 1, 0);
  for (const auto& p : parts)
    for (std::int64_t v = 0; v <= bound; ++v) counts[v] += p[v];
  return counts;
}

std::int64_t floor_mod(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

// Norm counts through `bound` by splitting the coordinates into a bottom
// block A (first h) and the rest. With D = det A, adj = D A^{-1}, W = adj B,
// DS = D C - B^T W and u = D x1 + W y:
//   D^2 Q(x1, y) = u^T A u + D * y^T DS y,
// and the distribution of u^T A u depends on y only through W y mod D.
std::vector<std::int64_t> theta_counts_split(const GramLattice& l, std::int64_t bound) {
  const int n = l.dim();
  const int h = n / 2;
  const int t = n - h;
  const auto& g = l.gram();

  linalg::Matrix a_q(h, linalg::Vector(2 * h, Rational(0)));
  IntMatrix a(h, IntVector(h));
  for (int i = 0; i < h; ++i) {
    for (int j = 0; j < h; ++j) {
      a[i][j] = g[i][j];
      a_q[i][j] = Rational(static_cast<long>(g[i][j]));
    }
    a_q[i][h + i] = 1;
  }
  const std::int64_t det = to_i64(linalg::integer_determinant(to_mpz(a)));
  const auto inv = linalg::rref(a_q);
  IntMatrix adj(h, IntVector(h));
  for (int i = 0; i < h; ++i) {
    for (int j = 0; j < h; ++j) {
      const Rational v = inv[i][h + j] * Rational(static_cast<long>(det));
      if (v.get_den() != 1) throw std::logic_error("adjugate not integral");
      adj[i][j] = to_i64(v.get_num());
    }
  }
  IntMatrix w(h, IntVector(t, 0));
  for (int i = 0; i < h; ++i)
    for (int j = 0; j < t; ++j)
      for (int k = 0; k < h; ++k) w[i][j] += adj[i][k] * g[k][h + j];
  IntMatrix ds(t, IntVector(t, 0));
  for (int i = 0; i < t; ++i) {
    for (int j = 0; j < t; ++j) {
      std::int64_t acc = det * g[h + i][h + j];
      for (int k = 0; k < h; ++k) acc -= g[k][h + i] * w[k][j];
      ds[i][j] = acc;
    }
  }

  const std::int64_t top_bound = det * bound;
  const std::int64_t bottom_bound = det * det * bound;
  if (bottom_bound > 50'000'000) return theta_counts_direct(l, bound);

  // Top: tally (class of W y mod D, y^T DS y).
  using ClassKey = std::vector<std::int64_t>;
  const Ellipsoid top(ds, 1, IntVector(t, 0), top_bound);
  const auto [lo, hi] = top.strata();
  const std::size_t nstrata = static_cast<std::size_t>(hi - lo + 1);
  std::vector<std::map<ClassKey, std::vector<std::int64_t>>> parts(nstrata);
  parallel::for_each_index(nstrata, [&](std::size_t k) {
    auto& local = parts[k];
    ClassKey key(h);
    top.enumerate_stratum(lo + static_cast<std::int64_t>(k),
                          [&](const IntVector& y, std::int64_t ts) {
                            for (int i = 0; i < h; ++i) {
                              std::int64_t acc = 0;
                              for (int j = 0; j < t; ++j) acc += w[i][j] * y[j];
                              key[i] = floor_mod(acc, det);
                            }
                            auto it = local.find(key);
                            if (it == local.end())
                              it = local.emplace(key, std::vector<std::int64_t>(top_bound + 1, 0))
                                       .first;
                            ++it->second[ts];
                          });
  });
  std::map<ClassKey, std::vector<std::int64_t>> tally;
  for (auto& p : parts) {
    for (auto& [key, counts] : p) {
      auto& dst = tally[key];
      if (dst.empty()) dst.assign(top_bound + 1, 0);
      for (std::int64_t v = 0; v <= top_bound; ++v) dst[v] += counts[v];
    }
  }

  // Bottom: histogram of u^T A u over u = D x1 + c for each class c.
  std::vector<ClassKey> classes;
  for (const auto& kv : tally) classes.push_back(kv.first);
  std::vector<std::vector<std::int64_t>> hist(classes.size());
  parallel::for_each_index(classes.size(), [&](std::size_t ci) {
    hist[ci].assign(bottom_bound + 1, 0);
    const Ellipsoid bottom(a, det, classes[ci], bottom_bound);
    bottom.enumerate_all([&](const IntVector&, std::int64_t v) { ++hist[ci][v]; });
  });

  std::vector<std::int64_t> counts(bound + 1, 0);
  for (std::size_t ci = 0; ci < classes.size(); ++ci) {
    const auto& tc = tally.at(classes[ci]);
    for (std::int64_t ts = 0; ts <= top_bound; ++ts) {
      if (tc[ts] == 0) continue;
      for (std::int64_t nv = 0; nv <= bound; ++nv) {
        const std::int64_t idx = det * det * nv - det * ts;
        if (idx < 0 || idx > bottom_bound) continue;
        counts[nv] += tc[ts] * hist[ci][idx];
      }
    }
  }
  return counts;
}

}  // namespace

GramLattice::GramLattice(IntMatrix gram) : gram_(std::move(gram)) {
  const std::size_t n = gram_.size();
  if (n == 0) throw std::invalid_argument("empty Gram matrix");
  for (std::size_t i = 0; i < n; ++i) {
    if (gram_[i].size() != n) throw std::invalid_argument("Gram matrix is not square");
    for (std::size_t j = 0; j < i; ++j)
      if (gram_[i][j] != gram_[j][i]) throw std::invalid_argument("Gram matrix is not symmetric");
  }
  // Fraction-free elimination without pivoting: the k-th pivot is the k-th
  // leading principal minor.
  auto m = to_mpz(gram_);
  Integer prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    if (m[k][k] <= 0) throw std::invalid_argument("Gram matrix is not positive definite");
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i][j] = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        mpz_divexact(m[i][j].get_mpz_t(), m[i][j].get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = m[k][k];
  }
}

std::int64_t GramLattice::norm(const IntVector& x) const { return inner(x, x); }

std::int64_t GramLattice::inner(const IntVector& x, const IntVector& y) const {
  std::int64_t s = 0;
  for (int i = 0; i < dim(); ++i) {
    std::int64_t row = 0;
    for (int j = 0; j < dim(); ++j) row += gram_[i][j] * y[j];
    s += x[i] * row;
  }
  return s;
}

namespace {

IntMatrix e8_cartan() {
  IntMatrix g(8, IntVector(8, 0));
  for (int i = 0; i < 8; ++i) g[i][i] = 2;
  // Bourbaki labels 1..8: chain 1-3-4-5-6-7-8 with 2 attached to 4.
  const int edges[][2] = {{1, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {7, 8}, {2, 4}};
  for (const auto& e : edges) g[e[0] - 1][e[1] - 1] = g[e[1] - 1][e[0] - 1] = -1;
  return g;
}

IntMatrix v_gram() {
  return {{2, 0, 0, 0, 0, -1, -1, -1}, {0, 2, 0, 0, 1, -1, 1, 0},
          {0, 0, 2, 0, 1, 0, -1, 1},   {0, 0, 0, 2, 1, 1, 0, -1},
          {0, 1, 1, 1, 2, 0, 0, 0},    {-1, -1, 0, 1, 0, 2, 0, 0},
          {-1, 1, -1, 0, 0, 0, 2, 0},  {-1, 0, 1, -1, 0, 0, 0, 2}};
}

IntMatrix d16_plus() {
  const int n = 16;
  std::vector<std::vector<Rational>> basis;
  // e_2 - e_3, ..., e_15 - e_16, e_15 + e_16 span D_15 on the last fifteen
  // coordinates; with the glue vector they also reach e_1 - e_2.
  for (int i = 1; i < 15; ++i) {
    std::vector<Rational> v(n, Rational(0));
    v[i] = 1;
    v[i + 1] = -1;
    basis.push_back(v);
  }
  std::vector<Rational> v(n, Rational(0));
  v[14] = 1;
  v[15] = 1;
  basis.push_back(v);
  basis.emplace_back(n, Rational(1, 2));
  IntMatrix g(n, IntVector(n, 0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      Rational s = 0;
      for (int k = 0; k < n; ++k) s += basis[i][k] * basis[j][k];
      if (s.get_den() != 1) throw std::logic_error("D16+ Gram is not integral");
      g[i][j] = to_i64(s.get_num());
    }
  }
  if (linalg::integer_determinant(to_mpz(g)) != 1)
    throw std::logic_error("D16+ Gram is not unimodular");
  return g;
}

}  // namespace

GramLattice builtin_gram(const std::string& name) {
  if (name == "V") return GramLattice(v_gram());
  if (name == "E8") return GramLattice(e8_cartan());
  if (name == "E8E8") return block_sum(GramLattice(e8_cartan()), GramLattice(e8_cartan()));
  if (name == "D16PLUS") return GramLattice(d16_plus());
  throw std::invalid_argument("unknown builtin lattice '" + name + "'");
}

GramLattice block_sum(const GramLattice& a, const GramLattice& b) {
  const int n = a.dim() + b.dim();
  IntMatrix g(n, IntVector(n, 0));
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) g[i][j] = a.gram()[i][j];
  for (int i = 0; i < b.dim(); ++i)
    for (int j = 0; j < b.dim(); ++j) g[a.dim() + i][a.dim() + j] = b.gram()[i][j];
  return GramLattice(std::move(g));
}

GramLattice parse_gram(const std::string& text) {
  std::istringstream in(text);
  long n = 0;
  if (!(in >> n) || n <= 0 || n > 64) throw std::invalid_argument("Gram file: bad dimension");
  IntMatrix g(n, IntVector(n));
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j)
      if (!(in >> g[i][j])) throw std::invalid_argument("Gram file: too few entries");
  std::string extra;
  if (in >> extra) throw std::invalid_argument("Gram file: trailing data");
  return GramLattice(std::move(g));
}

GramLattice read_gram_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open Gram file " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_gram(ss.str());
}

std::string format_gram(const GramLattice& l) {
  std::ostringstream out;
  out << l.dim() << '\n';
  for (const auto& row : l.gram()) {
    for (std::size_t j = 0; j < row.size(); ++j) out << (j ? " " : "") << row[j];
    out << '\n';
  }
  return out.str();
}

Integer determinant(const GramLattice& l) { return linalg::integer_determinant(to_mpz(l.gram())); }

bool is_even(const GramLattice& l) {
  for (int i = 0; i < l.dim(); ++i)
    if (l.gram()[i][i] % 2 != 0) return false;
  return true;
}

bool is_even_unimodular(const GramLattice& l) { return is_even(l) && determinant(l) == 1; }

std::vector<ShortVector> short_vectors(const GramLattice& l, std::int64_t bound, std::size_t cap) {
  if (bound < 0) throw std::invalid_argument("short_vectors: negative bound");
  const VectorSet vs = collect(l, bound, true, cap);
  std::vector<ShortVector> out(vs.size());
  for (std::size_t i = 0; i < vs.size(); ++i) {
    out[i].x.assign(vs.at(i), vs.at(i) + vs.dim);
    out[i].norm = vs.norms[i];
  }
  return out;
}

series::QSeries theta_deg1(const GramLattice& l, int order) {
  if (!is_even(l)) throw std::invalid_argument("theta_deg1: lattice is not even");
  if (order < 0) throw std::invalid_argument("theta_deg1: negative order");
  const std::int64_t bound = 2 * static_cast<std::int64_t>(order);
  const auto counts = l.dim() >= 4 ? theta_counts_split(l, bound) : theta_counts_direct(l, bound);
  std::vector<Integer> c(order + 1);
  for (int k = 0; k <= order; ++k) c[k] = Integer(static_cast<long>(counts[2 * k]));
  return series::QSeries::from_integers(c);
}

Deg2Key reduce_binary(std::int64_t n, std::int64_t r, std::int64_t m) {
  if (n < 0 || m < 0 || 4 * n * m - r * r < 0)
    throw std::invalid_argument("reduce_binary: form is not positive semidefinite");
  for (;;) {
    if (n > m) std::swap(n, m);
    if (n == 0) {
      r = 0;
      break;
    }
    if (r > n || r < -n) {
      // x -> x + k y keeps the form equivalent and moves r by 2kn.
      const std::int64_t num = n - r, den = 2 * n;
      const std::int64_t k = num >= 0 ? num / den : -((-num + den - 1) / den);
      m = n * k * k + r * k + m;
      r += 2 * k * n;
      continue;
    }
    if (n > m) continue;
    break;
  }
  return {static_cast<int>(n), static_cast<int>(r < 0 ? -r : r), static_cast<int>(m)};
}

std::int64_t Deg2ThetaTable::at(int n, int r, int m) const {
  const auto key = reduce_binary(n, r, m);
  const auto it = counts_.find(key);
  if (it == counts_.end()) throw std::out_of_range("degree-2 key outside the table");
  return it->second;
}

Deg2ThetaTable theta_deg2(const GramLattice& l, int trace_bound, std::size_t cap) {
  if (trace_bound < 0) throw std::invalid_argument("theta_deg2: negative trace bound");
  if (!is_even_unimodular(l)) throw std::invalid_argument("theta_deg2: lattice is not even unimodular");
  const VectorSet reps = collect(l, 2 * static_cast<std::int64_t>(trace_bound), true, cap);
  std::vector<std::int64_t> reps_by_half_norm(trace_bound + 1, 0);
  for (auto v : reps.norms) ++reps_by_half_norm[v / 2];

  std::map<Deg2Key, std::int64_t> table;
  for (int m = 0; m <= trace_bound; ++m)
    table[{0, 0, m}] = m == 0 ? 1 : 2 * reps_by_half_norm[m];

  const int d = l.dim();
  for (int n = 1; 2 * n <= trace_bound; ++n) {
    const auto xs = full_shell(reps, 2 * n);
    // Cauchy-Schwarz: |x.y| <= 2 sqrt(nm) <= n + m.
    const int rmax = trace_bound;
    const int width = 2 * rmax + 1;
    const int mspan = trace_bound - 2 * n + 1;
    std::vector<std::vector<std::int64_t>> tallies(xs.size());
    parallel::for_each_index(xs.size(), [&](std::size_t xi) {
      auto& tally = tallies[xi];
      tally.assign(static_cast<std::size_t>(mspan) * width, 0);
      IntVector gx(d, 0);
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) gx[i] += l.gram()[i][j] * xs[xi][j];
      for (std::size_t yi = 0; yi < reps.size(); ++yi) {
        const std::int64_t mm = reps.norms[yi] / 2;
        if (mm < n || mm > trace_bound - n) continue;
        const std::int32_t* y = reps.at(yi);
        std::int64_t s = 0;
        for (int i = 0; i < d; ++i) s += gx[i] * y[i];
        tally[(mm - n) * width + (s + rmax)] += 1;
      }
    });
    for (int m = n; m <= trace_bound - n; ++m) {
      for (int r = 0; r <= n; ++r) {
        // Each rep y stands for y and -y, which flip the sign of x.y.
        std::int64_t c = 0;
        for (const auto& tally : tallies) {
          c += tally[(m - n) * width + (r + rmax)];
          c += tally[(m - n) * width + (-r + rmax)];
        }
        table[{n, r, m}] = c;
      }
    }
  }
  return Deg2ThetaTable(trace_bound, std::move(table));
}

std::int64_t count_pairs(const GramLattice& l, int n, int r, int m) {
  if (n < 0 || m < 0) throw std::invalid_argument("count_pairs: negative norm");
  if (4 * static_cast<std::int64_t>(n) * m - static_cast<std::int64_t>(r) * r < 0) return 0;
  const VectorSet reps = collect(l, 2 * static_cast<std::int64_t>(std::max(n, m)), true,
                                 kDefaultVectorCap);
  const auto xs = full_shell(reps, 2 * n);
  const auto ys = full_shell(reps, 2 * m);
  std::int64_t c = 0;
  for (const auto& x : xs)
    for (const auto& y : ys)
      if (l.inner(x, y) == r) ++c;
  return c;
}

}  // namespace mverify::lattice
