#include "duffing/hamiltonian.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

#include "duffing/errors.hpp"

namespace duffing {

OperatorMatrix build_hamiltonian(double epsilon, int dim) {
  if (dim < 5) {
    throw std::invalid_argument("build_hamiltonian: dimension must be >= 5");
  }
  if (epsilon < 0.0) {
    throw std::domain_error("build_hamiltonian: epsilon must be >= 0");
  }
  OperatorMatrix h = 0.25 * epsilon * quartic_matrix(dim);
  for (int n = 0; n < dim; ++n) {
    h(n, n) += n + 0.5;
  }
  return h;
}

GroundState ground_state_numeric(double epsilon, int dim) {
  const OperatorMatrix h = build_hamiltonian(epsilon, dim);
  const Eigen::MatrixXd hr = h.real();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(hr);
  if (solver.info() != Eigen::Success) {
    throw convergence_error("ground_state_numeric: eigensolver failed", -1.0);
  }
  const double energy = solver.eigenvalues()(0);
  const Eigen::VectorXd v = solver.eigenvectors().col(0);

  const double residual = (hr * v - energy * v).lpNorm<Eigen::Infinity>();
  if (!(residual < 1e-10)) {
    throw convergence_error("ground_state_numeric: eigen-residual too large",
                            residual);
  }

  Eigen::VectorXcd c = v.cast<Complex>();
  return GroundState{FockState(std::move(c)).normalized(), energy};
}

double fidelity(const FockState& a, const FockState& b) {
  if (std::abs(a.norm() - 1.0) > 1e-6 || std::abs(b.norm() - 1.0) > 1e-6) {
    throw contract_violation("fidelity: states must be normalized");
  }
  const double overlap = std::abs(inner_product(a, b));
  return overlap * overlap;
}

}  // namespace duffing
