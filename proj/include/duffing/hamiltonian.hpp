#pragma once

#include "duffing/fock.hpp"

namespace duffing {

// Parameters of H = (p^2 + x^2)/2 + (epsilon/4) x^4 - x F cos(omega t).
// epsilon >= 0 (stiffening quartic); force/omega/time only matter for the
// driven operations.
struct DuffingParams {
  double epsilon = 0.0;
  double force = 0.0;
  double omega = 1.018;
  double time = 1.0;
};

// Undriven Hamiltonian diag(n + 1/2) + (epsilon/4) x^4; real symmetric.
OperatorMatrix build_hamiltonian(double epsilon, int dim);

struct GroundState {
  FockState state;
  double energy;
};

// Lowest eigenpair of the undriven Hamiltonian via dense symmetric
// eigendecomposition; the returned state is normalized and phase fixed.
// Throws convergence_error if the eigen-residual exceeds 1e-10.
GroundState ground_state_numeric(double epsilon, int dim);

// |<a|b>|^2 for normalized pure states. Throws contract_violation when a
// norm deviates from 1 by more than 1e-6.
double fidelity(const FockState& a, const FockState& b);

}  // namespace duffing
