#pragma once

#include <stdexcept>
#include <string>

namespace duffing {

// Input violates an operation contract (e.g. an unnormalized state where a
// normalized one is required).
class contract_violation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Drive frequency too close to the oscillator resonance: the first-order
// driven amplitudes carry a 1/(omega^2 - 1) factor.
class resonance_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A numerical routine failed to reach its accuracy target.
class convergence_error : public std::runtime_error {
 public:
  convergence_error(const std::string& msg, double residual)
      : std::runtime_error(msg), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

// Two quadrature refinement levels disagree beyond tolerance.
class accuracy_error : public std::runtime_error {
 public:
  accuracy_error(const std::string& msg, double coarse, double fine)
      : std::runtime_error(msg), coarse_(coarse), fine_(fine) {}
  double coarse_estimate() const { return coarse_; }
  double fine_estimate() const { return fine_; }

 private:
  double coarse_;
  double fine_;
};

// Least-squares design matrix is rank deficient.
class degenerate_fit_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace duffing
