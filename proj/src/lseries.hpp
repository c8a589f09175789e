#pragma once

// Rankin-Selberg L-functions of pairs of eigenforms of weights 2k and 2k+8:
// Dirichlet series and Euler products with certified truncation errors, the
// unfolded closed form A and the non-vanishing certificate.

#include "certified.hpp"
#include "modforms.hpp"

#include <map>
#include <string>

namespace mverify::lseries {

using modforms::Eigenform;
using series::Integer;
using series::Rational;

// zeta(s) for real s > 1 by Euler-Maclaurin with the remainder bound.
Certified zeta(double s);

class RankinSpec {
 public:
  // Requires weight(g) = weight(f) + 8, equal levels, even weight(f).
  RankinSpec(Eigenform f, Eigenform g);

  const Eigenform& f() const { return f_; }
  const Eigenform& g() const { return g_; }
  int k() const { return f_.weight() / 2; }
  int level() const { return f_.level(); }
  // 2k + 7
  int critical_exponent() const { return 2 * k() + 7; }

 private:
  Eigenform f_;
  Eigenform g_;
};

// sum_{n > M} d(n)^2 n^{-s}, bounded by M^{t-s} zeta(t)^4 / zeta(2t) and
// minimized over 1 < t < s.
double divisor_square_tail(double s, int m);

// zeta(2s) sum_{n <= M} a(n) b(n) n^{-(s+2k+3)}.
Certified rankin_dirichlet(const RankinSpec& spec, double s, int m);

// prod_{i,j} (1 - alpha_i beta_j p^{-s})^{-1} for p not dividing the level.
std::complex<double> local_factor(const RankinSpec& spec, int p, double s);

// (1 - p^{-2s})^{-1} (1 - lambda_f(p) lambda_g(p) p^{-s})^{-1} for p || N,
// the Euler factor matching the Dirichlet series of newforms at p.
std::complex<double> ramified_local_factor(const RankinSpec& spec, int p, double s);

using LocalFactors = std::map<int, std::complex<double>>;

// Product of local factors over p <= P. Ramified primes must be supplied.
Certified rankin_euler(const RankinSpec& spec, double s, int primes_upto,
                       const LocalFactors& supplied = {});

// (2k+6)!
Integer gamma_factor_exact(int k);

// (4 pi)^{-(2k+7)} (2k+6)! sum_{n <= M} a(n) b(n) n^{-(2k+7)}.
Certified closed_form_A(const RankinSpec& spec, int m);

struct NonvanishingReport {
  bool certified = false;
  Certified value;
  double margin = 0;
  std::string diagnostic;
};

NonvanishingReport certify_nonvanishing(const RankinSpec& spec, double s, int m);

// [K_p : K_0(p)]^{-1} p^4 = p^4 / (p + 1).
Rational ramified_factor(int p);

}  // namespace mverify::lseries
