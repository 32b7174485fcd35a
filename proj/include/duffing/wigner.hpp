#pragma once

#include <string>
#include <vector>

#include "duffing/fock.hpp"

namespace duffing {

// Square phase-space window [-extent, extent]^2 sampled with the given
// spacing. `refine` asks negativity_volume to re-estimate on a grid with
// half the step and twice the extent and fail if the two disagree.
struct QuadratureConfig {
  double extent = 6.0;
  double step = 0.02;
  bool refine = false;

  void validate() const;
};

// Sampled Wigner values on a uniform rectangle, row-major in x.
struct WignerGrid {
  std::vector<double> values;
  double x_min = 0.0, x_max = 0.0;
  double p_min = 0.0, p_max = 0.0;
  int nx = 0, np = 0;

  double at(int ix, int ip) const { return values[size_t(ix) * np + ip]; }
  double x_at(int ix) const {
    return x_min + ix * (x_max - x_min) / (nx - 1);
  }
  double p_at(int ip) const {
    return p_min + ip * (p_max - p_min) / (np - 1);
  }
  double cell_area() const {
    return (x_max - x_min) / (nx - 1) * (p_max - p_min) / (np - 1);
  }
  // Riemann sum of values * cell area (deterministic summation order).
  double riemann_sum() const;
  double min_value() const;
  double max_abs() const;
};

// W(x, p) of a Fock-expanded pure state, normalized so the full-plane
// integral is 1; vacuum peak 1/pi. Closed-form Gaussian-Laguerre kernel
// summation, O(d^2) per point over the state's support.
double wigner_point(const FockState& state, double x, double p);

// Grid evaluation is parallel over rows (OpenMP); the _serial variants are
// the plain reference loops and produce bit-identical results.
WignerGrid wigner_grid(const FockState& state, const QuadratureConfig& config);
WignerGrid wigner_grid_serial(const FockState& state,
                              const QuadratureConfig& config);

// Negative volume eta = \int |W| dx dp - 1 >= 0 by grid Riemann sum.
// With config.refine set, compares against the half-step/double-extent
// estimate and throws accuracy_error if they differ by more than 1e-4.
double negativity_volume(const FockState& state,
                         const QuadratureConfig& config);
double negativity_volume_serial(const FockState& state,
                                const QuadratureConfig& config);

// nu = eta / (1 + eta) in [0, 1).
double nonclassicality(const FockState& state, const QuadratureConfig& config);

// Plot-ready text: header "# a_min a_max b_min b_max na nb", then one
// "a b value" triple per line, row-major in the first axis, 17 significant
// digits.
std::string grid_to_text(const std::vector<double>& values, double a_min,
                         double a_max, double b_min, double b_max, int na,
                         int nb);
std::string to_grid_text(const WignerGrid& grid);

}  // namespace duffing
