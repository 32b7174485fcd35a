#include "duffing/measures.hpp"

#include <cmath>
#include <stdexcept>

#include "duffing/errors.hpp"

namespace duffing {

namespace {

void require_normalized(const FockState& state, const char* who) {
  if (std::abs(state.norm() - 1.0) > 1e-6) {
    throw contract_violation(std::string(who) + ": state must be normalized");
  }
}

}  // namespace

double bures_nonlinearity(const FockState& state) {
  require_normalized(state, "bures_nonlinearity");
  const double overlap = std::abs(state.coeff(0));
  return std::sqrt(std::max(0.0, 1.0 - overlap));
}

GaussianMoments moments(const FockState& state) {
  require_normalized(state, "moments");
  const QuadraturePair q = quadrature_matrices(state.dim());
  const Eigen::VectorXcd& c = state.coeffs();
  const Eigen::VectorXcd xc = q.x * c;
  const Eigen::VectorXcd pc = q.p * c;

  const double mx = c.dot(xc).real();
  const double mp = c.dot(pc).real();
  const double xx = xc.squaredNorm();
  const double pp = pc.squaredNorm();
  const double xp_sym = xc.dot(pc).real();  // <xp + px>/2

  GaussianMoments m;
  m.mean << mx, mp;
  m.cov << xx - mx * mx, xp_sym - mx * mp, xp_sym - mx * mp, pp - mp * mp;
  return m;
}

double entropy_h(double x) {
  if (x < 0.5 - 1e-12) {
    throw std::domain_error("entropy_h: symplectic eigenvalue below 1/2");
  }
  const double plus = (x + 0.5) * std::log(x + 0.5);
  const double d = x - 0.5;
  const double minus = d > 0.0 ? d * std::log(d) : 0.0;
  return std::max(0.0, plus - minus);
}

double non_gaussianity(const FockState& state) {
  const GaussianMoments m = moments(state);
  const double det = m.cov.determinant();
  return entropy_h(std::sqrt(std::max(0.0, det)));
}

}  // namespace duffing
