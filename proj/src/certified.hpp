#pragma once

#include <cmath>
#include <complex>
#include <limits>

namespace mverify {

// A value together with a bound on its distance from the true value.
struct Certified {
  std::complex<double> value;
  double error_bound = 0;

  double real() const { return value.real(); }
  // |value| - error_bound; positive means provably nonzero.
  double margin() const { return std::abs(value) - error_bound; }
};

inline bool agree(const Certified& a, const Certified& b) {
  return std::abs(a.value - b.value) <= a.error_bound + b.error_bound;
}

// Rounding allowance for a sum of `terms` double operations.
inline double rounding_slack(double magnitude, double terms) {
  return 4.0 * terms * std::numeric_limits<double>::epsilon() * magnitude;
}

}  // namespace mverify
