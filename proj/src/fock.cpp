#include "duffing/fock.hpp"

#include <cmath>
#include <stdexcept>

#include "duffing/errors.hpp"

namespace duffing {

FockState::FockState(Eigen::VectorXcd coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.size() < 1) {
    throw std::invalid_argument("FockState: dimension must be >= 1");
  }
}

FockState FockState::basis_state(int n, int dim) {
  if (dim < 1 || n < 0 || n >= dim) {
    throw std::invalid_argument("FockState::basis_state: need 0 <= n < dim");
  }
  Eigen::VectorXcd c = Eigen::VectorXcd::Zero(dim);
  c(n) = 1.0;
  return FockState(std::move(c));
}

double FockState::norm() const { return coeffs_.norm(); }

FockState FockState::normalized() const {
  Eigen::VectorXcd c = coeffs_;
  const double n2 = c.squaredNorm();
  if (n2 == 0.0) {
    throw std::domain_error("FockState::normalized: zero state");
  }
  // Skip the division when already normalized so repeated calls are
  // bit-for-bit idempotent.
  if (std::abs(n2 - 1.0) > 1e-14) {
    c /= std::sqrt(n2);
  }
  for (Eigen::Index i = 0; i < c.size(); ++i) {
    if (c(i) != Complex(0.0, 0.0)) {
      const double mag = std::abs(c(i));
      const Complex rot = std::conj(c(i)) / mag;
      if (rot != Complex(1.0, 0.0)) {
        c *= rot;
        c(i) = Complex(mag, 0.0);
      }
      break;
    }
  }
  return FockState(std::move(c));
}

OperatorMatrix ladder_matrix(int dim) {
  if (dim < 1) {
    throw std::invalid_argument("ladder_matrix: dimension must be >= 1");
  }
  OperatorMatrix a = OperatorMatrix::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) {
    a(n - 1, n) = std::sqrt(static_cast<double>(n));
  }
  return a;
}

QuadraturePair quadrature_matrices(int dim) {
  const OperatorMatrix a = ladder_matrix(dim);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  QuadraturePair q;
  q.x = (a + a.adjoint()) * inv_sqrt2;
  q.p = Complex(0.0, 1.0) * (a.adjoint() - a) * inv_sqrt2;
  return q;
}

OperatorMatrix position_squared_matrix(int dim) {
  if (dim < 1) {
    throw std::invalid_argument("position_squared_matrix: dimension must be >= 1");
  }
  OperatorMatrix m = OperatorMatrix::Zero(dim, dim);
  for (int n = 0; n < dim; ++n) {
    m(n, n) = n + 0.5;
    if (n + 2 < dim) {
      const double v = 0.5 * std::sqrt(double(n + 1) * double(n + 2));
      m(n + 2, n) = v;
      m(n, n + 2) = v;
    }
  }
  return m;
}

OperatorMatrix momentum_squared_matrix(int dim) {
  if (dim < 1) {
    throw std::invalid_argument("momentum_squared_matrix: dimension must be >= 1");
  }
  OperatorMatrix m = OperatorMatrix::Zero(dim, dim);
  for (int n = 0; n < dim; ++n) {
    m(n, n) = n + 0.5;
    if (n + 2 < dim) {
      const double v = -0.5 * std::sqrt(double(n + 1) * double(n + 2));
      m(n + 2, n) = v;
      m(n, n + 2) = v;
    }
  }
  return m;
}

OperatorMatrix quartic_matrix(int dim) {
  if (dim < 1) {
    throw std::invalid_argument("quartic_matrix: dimension must be >= 1");
  }
  OperatorMatrix m = OperatorMatrix::Zero(dim, dim);
  for (int n = 0; n < dim; ++n) {
    m(n, n) = 0.25 * (6.0 * n * n + 6.0 * n + 3.0);
    if (n + 2 < dim) {
      const double v =
          0.5 * (2.0 * n + 3.0) * std::sqrt(double(n + 1) * double(n + 2));
      m(n + 2, n) = v;
      m(n, n + 2) = v;
    }
    if (n + 4 < dim) {
      const double v = 0.25 * std::sqrt(double(n + 1) * double(n + 2) *
                                        double(n + 3) * double(n + 4));
      m(n + 4, n) = v;
      m(n, n + 4) = v;
    }
  }
  return m;
}

double harmonic_wavefunction(int n, double x) {
  if (n < 0) {
    throw std::invalid_argument("harmonic_wavefunction: n must be >= 0");
  }
  const double w0 = std::pow(M_PI, -0.25) * std::exp(-0.5 * x * x);
  if (n == 0) {
    return w0;
  }
  double prev = w0;
  double cur = std::sqrt(2.0) * x * w0;
  for (int k = 1; k < n; ++k) {
    const double next = x * std::sqrt(2.0 / (k + 1.0)) * cur -
                        std::sqrt(k / (k + 1.0)) * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

Complex inner_product(const FockState& a, const FockState& b) {
  const int d = std::min(a.dim(), b.dim());
  Complex acc(0.0, 0.0);
  for (int n = 0; n < d; ++n) {
    acc += std::conj(a.coeff(n)) * b.coeff(n);
  }
  return acc;
}

}  // namespace duffing
