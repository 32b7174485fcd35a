#include "duffing/perturbative.hpp"

#include <cmath>
#include <stdexcept>

#include "duffing/errors.hpp"

namespace duffing {

namespace {

void check_resonance(double omega) {
  if (std::abs(omega * omega - 1.0) <= kResonanceGuard) {
    throw resonance_error(
        "drive frequency within the resonance guard of omega = 1");
  }
}

// \int_0^t e^{i d t'} dt'
Complex phase_integral(int d, double t) {
  if (d == 0) {
    return Complex(t, 0.0);
  }
  const Complex i(0.0, 1.0);
  return (std::exp(i * double(d) * t) - 1.0) / (i * double(d));
}

// \int_0^t e^{i d t'} cos(omega t') dt', valid for d + omega != 0 != d - omega
Complex cosine_phase_integral(int d, double omega, double t) {
  const Complex i(0.0, 1.0);
  const double sp = d + omega;
  const double sm = d - omega;
  return (std::exp(i * sp * t) - 1.0) / (2.0 * i * sp) +
         (std::exp(i * sm * t) - 1.0) / (2.0 * i * sm);
}

// <m|x^4|n> for m >= n, zero unless m - n in {0, 2, 4}
double quartic_element(int m, int n) {
  if (m < n) {
    return quartic_element(n, m);
  }
  switch (m - n) {
    case 0:
      return 0.25 * (6.0 * n * n + 6.0 * n + 3.0);
    case 2:
      return 0.5 * (2.0 * n + 3.0) * std::sqrt(double(n + 1) * double(n + 2));
    case 4:
      return 0.25 * std::sqrt(double(n + 1) * double(n + 2) * double(n + 3) *
                              double(n + 4));
    default:
      return 0.0;
  }
}

// <m|x|n>, nonzero only for |m - n| = 1
double position_element(int m, int n) {
  if (std::abs(m - n) != 1) {
    return 0.0;
  }
  return std::sqrt(0.5 * std::max(m, n));
}

}  // namespace

PerturbativeGroundState ground_state_perturbative(double epsilon, int dim) {
  if (dim < 5) {
    throw std::invalid_argument(
        "ground_state_perturbative: dimension must be >= 5");
  }
  if (epsilon < 0.0) {
    throw std::domain_error("ground_state_perturbative: epsilon must be >= 0");
  }
  Eigen::VectorXcd c = Eigen::VectorXcd::Zero(dim);
  c(0) = 1.0;
  c(2) = -3.0 * epsilon / (8.0 * std::sqrt(2.0));
  c(4) = -std::sqrt(3.0) * epsilon / (16.0 * std::sqrt(2.0));
  return PerturbativeGroundState{FockState(std::move(c)).normalized(),
                                 epsilon > kValidatedEpsilonMax};
}

Complex first_order_coefficient(int n, int l, const DuffingParams& params) {
  if (n < 0 || l < 0) {
    throw std::invalid_argument("first_order_coefficient: need n, l >= 0");
  }
  if (params.force != 0.0) {
    check_resonance(params.omega);
  }
  const int d = n - l;
  Complex c(0.0, 0.0);
  const Complex minus_i(0.0, -1.0);

  const int ad = std::abs(d);
  if (params.epsilon != 0.0 && (ad == 0 || ad == 2 || ad == 4)) {
    c += minus_i * (0.25 * params.epsilon * quartic_element(n, l)) *
         phase_integral(d, params.time);
  }
  if (params.force != 0.0 && ad == 1) {
    c += minus_i * (-params.force * position_element(n, l)) *
         cosine_phase_integral(d, params.omega, params.time);
  }
  return c;
}

FockState driven_ground_state(const DuffingParams& params, int dim) {
  if (dim < 5) {
    throw std::invalid_argument("driven_ground_state: dimension must be >= 5");
  }
  if (params.epsilon < 0.0) {
    throw std::domain_error("driven_ground_state: epsilon must be >= 0");
  }
  check_resonance(params.omega);

  const Complex i(0.0, 1.0);
  const double t = params.time;
  const double w = params.omega;
  const double eps = params.epsilon;
  // e^{-i E_n t} with E_n = n + 1/2
  const auto sp = [&](double energy) { return std::exp(-i * energy * t); };

  Eigen::VectorXcd c = Eigen::VectorXcd::Zero(dim);
  c(0) = (1.0 - 3.0 * i * t * eps / 16.0) * sp(0.5);
  c(1) = params.force *
         (1.0 - std::exp(i * t) * (std::cos(w * t) - i * w * std::sin(w * t))) /
         (std::sqrt(2.0) * (w * w - 1.0)) * sp(1.5);
  c(2) = (eps / 16.0) * 3.0 * std::sqrt(2.0) * (sp(2.5) - sp(0.5));
  c(4) = (eps / 16.0) * 0.25 * (sp(4.5) - sp(0.5));
  return FockState(std::move(c)).normalized();
}

}  // namespace duffing
