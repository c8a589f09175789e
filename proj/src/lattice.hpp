#pragma once

// Positive definite integral lattices given by Gram matrices: short vector
// enumeration, degree-1 theta series and degree-2 theta coefficient tables.

#include "qseries.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <tuple>
#include <vector>

namespace mverify::lattice {

using IntMatrix = std::vector<std::vector<std::int64_t>>;
using IntVector = std::vector<std::int64_t>;

class GramLattice {
 public:
  // Validates symmetry and positive definiteness (leading minors, exact).
  explicit GramLattice(IntMatrix gram);

  int dim() const { return static_cast<int>(gram_.size()); }
  const IntMatrix& gram() const { return gram_; }
  std::int64_t norm(const IntVector& x) const;
  std::int64_t inner(const IntVector& x, const IntVector& y) const;

 private:
  IntMatrix gram_;
};

// "V", "E8", "E8E8" or "D16PLUS".
GramLattice builtin_gram(const std::string& name);
GramLattice block_sum(const GramLattice& a, const GramLattice& b);

// Text format: dimension on the first line, then the rows.
GramLattice parse_gram(const std::string& text);
GramLattice read_gram_file(const std::string& path);
std::string format_gram(const GramLattice& l);

series::Integer determinant(const GramLattice& l);
bool is_even(const GramLattice& l);
bool is_even_unimodular(const GramLattice& l);

struct ShortVector {
  IntVector x;
  std::int64_t norm = 0;
};

constexpr std::size_t kDefaultVectorCap = 20'000'000;

// All x with x^T G x <= bound, one per +-pair (last nonzero coordinate
// positive) plus zero, sorted by (norm, coordinates). Throws
// std::length_error past the cap.
std::vector<ShortVector> short_vectors(const GramLattice& l, std::int64_t bound,
                                       std::size_t cap = kDefaultVectorCap);

// Coefficient n counts vectors of norm 2n, n <= order. Even lattices only.
series::QSeries theta_deg1(const GramLattice& l, int order);

// Key (n, r, m) stands for T = [n, r/2; r/2, m].
using Deg2Key = std::tuple<int, int, int>;

// GL_2(Z) reduction to 0 <= r <= n <= m (positive semidefinite forms).
Deg2Key reduce_binary(std::int64_t n, std::int64_t r, std::int64_t m);

class Deg2ThetaTable {
 public:
  Deg2ThetaTable(int trace_bound, std::map<Deg2Key, std::int64_t> counts)
      : trace_bound_(trace_bound), counts_(std::move(counts)) {}

  int trace_bound() const { return trace_bound_; }
  const std::map<Deg2Key, std::int64_t>& counts() const { return counts_; }
  // Reduces first; throws std::out_of_range outside the table.
  std::int64_t at(int n, int r, int m) const;

  bool operator==(const Deg2ThetaTable&) const = default;

 private:
  int trace_bound_ = 0;
  std::map<Deg2Key, std::int64_t> counts_;
};

// Ordered pairs (x, y) with norms 2n, 2m and x^T G y = r, for every reduced
// positive semidefinite key with n + m <= trace_bound.
Deg2ThetaTable theta_deg2(const GramLattice& l, int trace_bound,
                          std::size_t cap = kDefaultVectorCap);

// Direct count of pairs with Gram matrix [n, r/2; r/2, m], any n, r, m.
std::int64_t count_pairs(const GramLattice& l, int n, int r, int m);

}  // namespace mverify::lattice
