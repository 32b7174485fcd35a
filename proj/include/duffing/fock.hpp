#pragma once

#include <Eigen/Dense>
#include <complex>

namespace duffing {

using Complex = std::complex<double>;

// Dense operator in the truncated number basis. All operators built by this
// module are Hermitian by construction.
using OperatorMatrix = Eigen::MatrixXcd;

// Truncation used throughout unless a caller asks otherwise.
inline constexpr int kDefaultDim = 51;

// Pure state expanded over the first `dim` number states. Immutable after
// construction; normalized() fixes both the norm and the global phase
// (first nonzero coefficient real positive).
class FockState {
 public:
  explicit FockState(Eigen::VectorXcd coeffs);

  static FockState basis_state(int n, int dim);

  int dim() const { return static_cast<int>(coeffs_.size()); }
  const Eigen::VectorXcd& coeffs() const { return coeffs_; }
  Complex coeff(int n) const { return coeffs_(n); }

  double norm() const;
  FockState normalized() const;

 private:
  Eigen::VectorXcd coeffs_;
};

// Annihilation operator: a[n-1][n] = sqrt(n).
OperatorMatrix ladder_matrix(int dim);

// x = (a + a†)/sqrt(2), p = i(a† - a)/sqrt(2); [x,p] = i, vacuum variance 1/2.
struct QuadraturePair {
  OperatorMatrix x;
  OperatorMatrix p;
};
QuadraturePair quadrature_matrices(int dim);

// Exact matrix elements of x^2, p^2 and x^4 (not truncated operator
// products): <n|x^2|n> = n + 1/2, <n+2|x^2|n> = sqrt((n+1)(n+2))/2, etc.
OperatorMatrix position_squared_matrix(int dim);
OperatorMatrix momentum_squared_matrix(int dim);

// x^4 couples |n> only to |n>, |n±2>, |n±4>:
//   <n|x^4|n>     = (6n^2 + 6n + 3)/4
//   <n+2|x^4|n>   = (2n+3) sqrt((n+1)(n+2))/2
//   <n+4|x^4|n>   = sqrt((n+1)(n+2)(n+3)(n+4))/4
OperatorMatrix quartic_matrix(int dim);

// psi_n(x) = pi^{-1/4} (2^n n!)^{-1/2} H_n(x) exp(-x^2/2), evaluated by the
// normalized three-term recurrence (weight carried inside, stable to n ~ 60).
double harmonic_wavefunction(int n, double x);

// <a|b> = sum conj(a_n) b_n; the shorter state is zero-padded.
Complex inner_product(const FockState& a, const FockState& b);

}  // namespace duffing
