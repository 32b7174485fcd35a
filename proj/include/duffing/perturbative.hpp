#pragma once

#include "duffing/fock.hpp"
#include "duffing/hamiltonian.hpp"

namespace duffing {

// The first-order driven amplitudes carry 1/(omega^2 - 1); reject drive
// frequencies closer to resonance than this.
inline constexpr double kResonanceGuard = 1e-6;

// Stationary perturbation theory for the ground state is validated against
// exact diagonalization up to this epsilon.
inline constexpr double kValidatedEpsilonMax = 0.8;

struct PerturbativeGroundState {
  FockState state;
  // Set when epsilon exceeds kValidatedEpsilonMax.
  bool beyond_validated_epsilon;
};

// First-order stationary ground state
//   N [ |0> - (3 eps / 8 sqrt 2) |2> - (sqrt 3 eps / 16 sqrt 2) |4> ],
//   N = 1/sqrt(1 + 39 eps^2 / 512),
// embedded at `dim`, normalized and phase fixed.
PerturbativeGroundState ground_state_perturbative(double epsilon,
                                                  int dim = kDefaultDim);

// First-order transition amplitude out of |l>:
//   c_n(t) = -i \int_0^t e^{i (n-l) t'} <n| (eps/4) x^4 - x F cos(omega t') |l> dt'
// in closed form. The drive couples |n-l| = 1, the quartic |n-l| in {0,2,4}.
// Linear separately in epsilon and force. Throws resonance_error when
// force != 0 and |omega^2 - 1| <= kResonanceGuard.
Complex first_order_coefficient(int n, int l, const DuffingParams& params);

// Driven ground state evolved from |0>, first order in both epsilon and
// force, coefficients in the Schrödinger picture (e^{-i E_n t} phases
// applied). Normalized and phase fixed. Throws resonance_error near
// omega = 1.
FockState driven_ground_state(const DuffingParams& params,
                              int dim = kDefaultDim);

}  // namespace duffing
