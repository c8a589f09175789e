#pragma once

// Index-one Jacobi forms, Cohen's numbers H(r, N), the Maass lift to degree
// two and the degree-two Rankin convolution over reduced binary forms.

#include "certified.hpp"
#include "lattice.hpp"
#include "qseries.hpp"

#include <array>
#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <vector>

namespace mverify::jacobi {

using series::Integer;
using series::QSeries;
using series::Rational;
using Key = lattice::Deg2Key;

// Kronecker symbol (a / n).
int kronecker(long a, long n);

// Delta = D0 f^2 with D0 a fundamental discriminant (Delta != 0, Delta = 0,1 mod 4).
std::pair<long, long> fundamental_part(long delta);

// L(1 - r, chi_D0) = -B_{r,chi}/r, exact.
Rational dirichlet_l_negative(int r, long d0);

Rational cohen_H(int r, long n);

// c(D), D = 4n - r^2.
class JacobiForm1 {
 public:
  JacobiForm1(int weight, std::vector<Rational> c);

  int weight() const { return weight_; }
  long max_d() const { return static_cast<long>(c_.size()) - 1; }
  // Zero for D < 0; throws std::out_of_range beyond max_D.
  const Rational& coeff(long d) const;
  // Coefficient of q^n zeta^r.
  const Rational& coeff(long n, long r) const { return coeff(4 * n - r * r); }
  bool is_cusp() const { return c_[0] == 0; }

  JacobiForm1 truncate(long max_d) const;
  bool operator==(const JacobiForm1&) const = default;

 private:
  int weight_;
  std::vector<Rational> c_;
};

// Product with an elliptic modular form: sum_j a(j) c(D - 4j).
JacobiForm1 multiply(const QSeries& f, int f_weight, const JacobiForm1& phi);
JacobiForm1 operator+(const JacobiForm1& a, const JacobiForm1& b);
JacobiForm1 operator-(const JacobiForm1& a, const JacobiForm1& b);
JacobiForm1 operator*(const Rational& s, const JacobiForm1& a);

// E_{k,1}: c(D) = H(k-1, D) / zeta(3 - 2k).
JacobiForm1 jacobi_eisenstein(int k, long max_d);

// Theta series of E8 with the elliptic variable along a root.
JacobiForm1 jacobi_theta_e8(long max_d);

// phi_{10,1} and phi_{12,1}, normalized by c(3) = 1.
JacobiForm1 jacobi_cusp_form(int k, long max_d);

class SiegelDeg2Form {
 public:
  SiegelDeg2Form(int weight, long det_bound, std::map<Key, Rational> a);

  int weight() const { return weight_; }
  // Coefficients are known for 4nm - r^2 <= 4 det_bound.
  long det_bound() const { return det_bound_; }
  const std::map<Key, Rational>& coefficients() const { return a_; }
  // Reduces T first; throws std::out_of_range outside the table.
  const Rational& at(long n, long r, long m) const;

  bool operator==(const SiegelDeg2Form&) const = default;

 private:
  int weight_;
  long det_bound_;
  std::map<Key, Rational> a_;
};

// Lines "n r m num/den" after a "# weight=.. det_bound=.." header.
void write_table(std::ostream& out, const SiegelDeg2Form& f);
SiegelDeg2Form read_table(std::istream& in);

// A(n, r, m) = sum_{d | (n, r, m)} d^{k-1} c((4nm - r^2)/d^2).
SiegelDeg2Form maass_lift(const JacobiForm1& phi, long det_bound);
// The lift of phi_{k,1} for k in {10, 12}.
SiegelDeg2Form sk_lift(int k, long det_bound);

struct ReducedForm {
  long n = 0, r = 0, m = 0;
  int epsilon = 0;
  // 4 det T = 4nm - r^2
  long four_det() const { return 4 * n * m - r * r; }
};

using Mat2 = std::array<long, 4>;

// U in GL_2(Z) with U T U^t = T, found in the box |u_ij| <= bound.
// Sets *boundary when some U touches the box.
std::vector<Mat2> automorphisms(long n, long r, long m, long bound, bool* boundary = nullptr);

// Brute-force epsilon(T) with enlarge-and-retry and a group closure check.
int epsilon(long n, long r, long m);

// Reduced positive definite T with 4 det T <= 4 det_bound, sorted by (n, r, m).
std::vector<ReducedForm> reduced_forms(long det_bound);

struct ConvolutionResult {
  // The error bound is |R(B) - R(B/2)|, an empirical estimate.
  Certified value;
  long terms = 0;
  bool heuristic_bound = true;
};

// sum over reduced T with det T <= B of a_F(T) conj(a_G(T)) / (eps(T) det(T)^s).
ConvolutionResult rankin_convolution(const SiegelDeg2Form& f, const SiegelDeg2Form& g, double s,
                                     long det_bound);

}  // namespace mverify::jacobi
