#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "duffing/hamiltonian.hpp"
#include "duffing/wigner.hpp"

namespace duffing {

// One sweep point: parameters plus the three measures, and (undriven only)
// the fidelity between the perturbative and numeric ground states.
struct MeasureRecord {
  DuffingParams params;
  double eta_b = 0.0;
  double eta_ng = 0.0;
  double nu = 0.0;
  std::optional<double> fidelity;
};

struct FitResult {
  std::vector<double> coefficients;
  double residual_rms = 0.0;
  std::string model_tag;
};

// Undriven point: measures on the perturbative ground state (or the numeric
// one when use_numeric_state is set), fidelity always perturbative-vs-numeric.
MeasureRecord undriven_record(double epsilon, int dim,
                              const QuadratureConfig& quad,
                              bool use_numeric_state = false);
MeasureRecord driven_record(const DuffingParams& params, int dim,
                            const QuadratureConfig& quad);

// Uniform epsilon grids, endpoints included. Records are computed
// concurrently and assembled in epsilon order; identical inputs give
// bit-identical outputs.
std::vector<MeasureRecord> sweep_undriven(double eps_min, double eps_max,
                                          int steps, int dim,
                                          const QuadratureConfig& quad,
                                          bool use_numeric_state = false);
std::vector<MeasureRecord> sweep_driven(const DuffingParams& base,
                                        double eps_min, double eps_max,
                                        int steps, int dim,
                                        const QuadratureConfig& quad);

// Ordinary least squares in the basis {1, sqrt(x)} (coefficients (a, b))
// and {1, sqrt(x), x} (coefficients (c0, c1, c2)), solved by column-pivoted
// QR. Throws degenerate_fit_error on rank-deficient designs.
FitResult fit_sqrt_model(std::span<const double> xs,
                         std::span<const double> ys);
FitResult fit_sqrt_linear_model(std::span<const double> xs,
                                std::span<const double> ys);

// CSV with header epsilon,force,omega,time,eta_b,eta_ng,nu,fidelity
// (fidelity field empty when absent); 17 significant digits so that
// re-parsing reproduces every value bit-exactly.
std::string to_csv(std::span<const MeasureRecord> records);
std::vector<MeasureRecord> records_from_csv(const std::string& csv);

// JSON array of flat objects with the same keys; fidelity omitted when
// absent.
std::string to_json_text(std::span<const MeasureRecord> records);

}  // namespace duffing
