#pragma once

#include "duffing/fock.hpp"

namespace duffing {

// First moments and symmetrized covariance of a state; the vacuum has
// cov = diag(1/2, 1/2) in this convention, and det(cov) >= 1/4 for every
// physical state.
struct GaussianMoments {
  Eigen::Vector2d mean;  // (<x>, <p>)
  Eigen::Matrix2d cov;   // [[sxx, sxp], [sxp, spp]]
};

// Bures-distance nonlinearity of a ground state against the harmonic one:
// sqrt(1 - |<0|state>|), in [0, 1]. Requires a normalized state.
double bures_nonlinearity(const FockState& state);

GaussianMoments moments(const FockState& state);

// h(x) = (x + 1/2) ln(x + 1/2) - (x - 1/2) ln(x - 1/2); the entropy of a
// Gaussian state with symplectic eigenvalue x. h(1/2) = 0 exactly.
// Throws std::domain_error for x < 1/2 - 1e-12.
double entropy_h(double x);

// Entropy of the moment-matched reference Gaussian: h(sqrt(det cov)).
// Zero exactly on pure Gaussian states, positive otherwise.
double non_gaussianity(const FockState& state);

}  // namespace duffing
