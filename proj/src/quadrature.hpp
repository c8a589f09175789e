#pragma once

// Certified evaluation of modular forms on the upper half plane and
// Petersson-type integrals over SL_2(Z)\H and Gamma_0(p)\H, computed on the
// standard fundamental domain F after pulling each coset back.

#include "certified.hpp"
#include "modforms.hpp"

#include <array>
#include <complex>
#include <memory>
#include <vector>

namespace mverify::quadrature {

using modforms::Eigenform;
using series::QSeries;

// |F(tau) - c0| <= sum_r K_r exp(-2 pi mu_r y) for Im tau = y >= y1.
struct TailShape {
  std::complex<double> constant;
  std::vector<std::pair<double, double>> decays;  // (K, mu)
};

class FormEvaluator {
 public:
  // How the form transforms under S = [[0,-1],[1,0]]:
  //   LevelOne: invariant. Newform of prime level p with Atkin-Lehner sign
  //   eps: (f|S)(u) = eps p^{-k/2} f(u/p). EisensteinInfinity for Gamma_0(p):
  //   (E|S)(u) = (E_k(u/p) - E_k(u)) / (p^k - 1).
  enum class Kind { LevelOne, Newform, EisensteinInfinity };

  static FormEvaluator constant_one();
  // Coefficients c_0..c_M of a level-one form with |c_n| <= A n^beta beyond M.
  static FormEvaluator level_one(const QSeries& q, int weight, double tail_a, double tail_beta);
  // Cusp eigenform; Deligne's bound gives |a(n)| <= 2 n^{w/2}.
  static FormEvaluator from_eigenform(const Eigenform& f, int order);
  // E_k for level 1, E_k^{(p),infinity} for prime p.
  static FormEvaluator eisenstein(int k, int level, int order);

  int weight() const { return weight_; }
  int level() const { return level_; }
  Kind kind() const { return kind_; }
  int order() const { return static_cast<int>(coeffs_.size()) - 1; }
  double tail_constant() const { return tail_a_; }
  double y_min() const { return y_min_; }
  void set_y_min(double y) { y_min_ = y; }

  // Rejects Im tau < y_min.
  Certified eval(std::complex<double> tau) const;

  // Internal entry points used by the integrator.
  Certified eval_unchecked(std::complex<double> tau) const;
  Certified eval_slash_s(std::complex<double> u) const;
  TailShape tail_shape(bool s_coset, double y1) const;

 private:
  FormEvaluator() = default;
  // sup over y >= y0 of |F(tau) - c0| exp(2 pi y).
  double nonconstant_sup(double y0) const;

  int weight_ = 0;
  int level_ = 1;
  Kind kind_ = Kind::LevelOne;
  std::vector<double> coeffs_;
  double tail_a_ = 0;
  double tail_beta_ = 0;
  double y_min_ = 0.5;
  int al_sign_ = 1;
  // E_k of level one, for the S-slash of EisensteinInfinity.
  std::shared_ptr<const FormEvaluator> base_;
};

// Integer 2x2 matrix {a, b, c, d}.
using Mat2 = std::array<long, 4>;

// Representatives of Gamma_0(N)\SL_2(Z) for squarefree N, one per point of
// P^1(Z/N).
std::vector<Mat2> coset_reps(long n);
bool same_gamma0_coset(const Mat2& a, const Mat2& b, long n);
long gamma0_index(long n);

// sum over coprime (c, d), N | c, max(|c|,|d|) <= C, modulo +-, of
// (c tau + d)^{-k}, with the tail beyond C bounded.
Certified eisenstein_direct_eval(int k, long level, std::complex<double> tau, long c_max = 200);

struct QuadratureReport {
  Certified value;
  double y1 = 0;
  double compact_difference = 0;  // |fine - coarse|
  double tail_bound = 0;
  double evaluation_bound = 0;
  long points = 0;
};

// Integral over Gamma_0(N)\H (N = 1 or prime) of f conj(g) e y^ypow d*tau,
// d*tau = dx dy / y^2. Requires wt(f) + wt(e) = wt(g) = ypow.
QuadratureReport petersson_integral(const FormEvaluator& f, const FormEvaluator& g,
                                    const FormEvaluator& e, double ypow, long level);

}  // namespace mverify::quadrature
