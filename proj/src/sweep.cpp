#include "duffing/sweep.hpp"

#include <Eigen/QR>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "duffing/errors.hpp"
#include "duffing/measures.hpp"
#include "duffing/perturbative.hpp"

namespace duffing {

namespace {

std::vector<double> epsilon_grid(double eps_min, double eps_max, int steps) {
  if (steps < 2) {
    throw std::invalid_argument("sweep: need at least 2 steps");
  }
  if (!(eps_min >= 0.0) || !(eps_min < eps_max)) {
    throw std::invalid_argument("sweep: need 0 <= eps_min < eps_max");
  }
  std::vector<double> grid(steps);
  for (int i = 0; i < steps; ++i) {
    grid[i] = eps_min + i * (eps_max - eps_min) / (steps - 1);
  }
  return grid;
}

char* format_double(char* p, double v) {
  return p + std::snprintf(p, 32, "%.17g", v);
}

FitResult least_squares(const Eigen::MatrixXd& design,
                        std::span<const double> ys,
                        const std::string& model_tag) {
  const Eigen::Map<const Eigen::VectorXd> y(ys.data(), ys.size());
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  if (qr.rank() < design.cols()) {
    throw degenerate_fit_error("fit: rank-deficient design matrix (" +
                               model_tag + ")");
  }
  const Eigen::VectorXd coeff = qr.solve(y);
  const double rms =
      std::sqrt((design * coeff - y).squaredNorm() / double(ys.size()));
  FitResult r;
  r.coefficients.assign(coeff.data(), coeff.data() + coeff.size());
  r.residual_rms = rms;
  r.model_tag = model_tag;
  return r;
}

void check_fit_inputs(std::span<const double> xs, std::span<const double> ys,
                      size_t min_points) {
  if (xs.size() != ys.size()) {
    throw std::invalid_argument("fit: xs and ys must have equal length");
  }
  if (xs.size() < min_points) {
    throw std::invalid_argument("fit: too few points");
  }
  for (double x : xs) {
    if (!(x >= 0.0)) {
      throw std::domain_error("fit: sqrt basis needs xs >= 0");
    }
  }
}

}  // namespace

MeasureRecord undriven_record(double epsilon, int dim,
                              const QuadratureConfig& quad,
                              bool use_numeric_state) {
  const FockState pert = ground_state_perturbative(epsilon, dim).state;
  const FockState num = ground_state_numeric(epsilon, dim).state;
  const FockState& measured = use_numeric_state ? num : pert;

  MeasureRecord rec;
  rec.params.epsilon = epsilon;
  rec.params.force = 0.0;
  rec.params.omega = 0.0;
  rec.params.time = 0.0;
  rec.eta_b = bures_nonlinearity(measured);
  rec.eta_ng = non_gaussianity(measured);
  rec.nu = nonclassicality(measured, quad);
  rec.fidelity = fidelity(pert, num);
  return rec;
}

MeasureRecord driven_record(const DuffingParams& params, int dim,
                            const QuadratureConfig& quad) {
  const FockState state = driven_ground_state(params, dim);
  MeasureRecord rec;
  rec.params = params;
  rec.eta_b = bures_nonlinearity(state);
  rec.eta_ng = non_gaussianity(state);
  rec.nu = nonclassicality(state, quad);
  return rec;
}

namespace {

// Records are independent; compute them concurrently, assemble by index.
// Exceptions cannot unwind out of the parallel region, so the first one is
// captured and rethrown afterwards.
template <class PointFn>
std::vector<MeasureRecord> run_sweep(const std::vector<double>& grid,
                                     PointFn&& point) {
  std::vector<MeasureRecord> records(grid.size());
  std::exception_ptr error = nullptr;
  const int steps = static_cast<int>(grid.size());
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < steps; ++i) {
    try {
      records[i] = point(grid[i]);
    } catch (...) {
#pragma omp critical
      {
        if (!error) {
          error = std::current_exception();
        }
      }
    }
  }
  if (error) {
    std::rethrow_exception(error);
  }
  return records;
}

}  // namespace

std::vector<MeasureRecord> sweep_undriven(double eps_min, double eps_max,
                                          int steps, int dim,
                                          const QuadratureConfig& quad,
                                          bool use_numeric_state) {
  const std::vector<double> grid = epsilon_grid(eps_min, eps_max, steps);
  return run_sweep(grid, [&](double eps) {
    return undriven_record(eps, dim, quad, use_numeric_state);
  });
}

std::vector<MeasureRecord> sweep_driven(const DuffingParams& base,
                                        double eps_min, double eps_max,
                                        int steps, int dim,
                                        const QuadratureConfig& quad) {
  const std::vector<double> grid = epsilon_grid(eps_min, eps_max, steps);
  return run_sweep(grid, [&](double eps) {
    DuffingParams p = base;
    p.epsilon = eps;
    return driven_record(p, dim, quad);
  });
}

FitResult fit_sqrt_model(std::span<const double> xs,
                         std::span<const double> ys) {
  check_fit_inputs(xs, ys, 3);
  Eigen::MatrixXd design(xs.size(), 2);
  for (size_t i = 0; i < xs.size(); ++i) {
    design(i, 0) = 1.0;
    design(i, 1) = std::sqrt(xs[i]);
  }
  return least_squares(design, ys, "a+b*sqrt(x)");
}

FitResult fit_sqrt_linear_model(std::span<const double> xs,
                                std::span<const double> ys) {
  check_fit_inputs(xs, ys, 4);
  Eigen::MatrixXd design(xs.size(), 3);
  for (size_t i = 0; i < xs.size(); ++i) {
    design(i, 0) = 1.0;
    design(i, 1) = std::sqrt(xs[i]);
    design(i, 2) = xs[i];
  }
  return least_squares(design, ys, "c0+c1*sqrt(x)+c2*x");
}

std::string to_csv(std::span<const MeasureRecord> records) {
  std::string out = "epsilon,force,omega,time,eta_b,eta_ng,nu,fidelity\n";
  char buf[320];
  for (const MeasureRecord& r : records) {
    char* p = buf;
    p = format_double(p, r.params.epsilon);
    *p++ = ',';
    p = format_double(p, r.params.force);
    *p++ = ',';
    p = format_double(p, r.params.omega);
    *p++ = ',';
    p = format_double(p, r.params.time);
    *p++ = ',';
    p = format_double(p, r.eta_b);
    *p++ = ',';
    p = format_double(p, r.eta_ng);
    *p++ = ',';
    p = format_double(p, r.nu);
    *p++ = ',';
    if (r.fidelity) {
      p = format_double(p, *r.fidelity);
    }
    *p++ = '\n';
    out.append(buf, p - buf);
  }
  return out;
}

std::vector<MeasureRecord> records_from_csv(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  if (!std::getline(in, line) ||
      line != "epsilon,force,omega,time,eta_b,eta_ng,nu,fidelity") {
    throw std::invalid_argument("records_from_csv: bad header");
  }
  std::vector<MeasureRecord> records;
  while (std::getline(in, line)) {
    if (line.empty()) {
      continue;
    }
    std::vector<std::string> fields;
    size_t start = 0;
    for (size_t i = 0; i <= line.size(); ++i) {
      if (i == line.size() || line[i] == ',') {
        fields.push_back(line.substr(start, i - start));
        start = i + 1;
      }
    }
    if (fields.size() != 8) {
      throw std::invalid_argument("records_from_csv: bad field count");
    }
    const auto num = [](const std::string& s) {
      return std::strtod(s.c_str(), nullptr);
    };
    MeasureRecord r;
    r.params.epsilon = num(fields[0]);
    r.params.force = num(fields[1]);
    r.params.omega = num(fields[2]);
    r.params.time = num(fields[3]);
    r.eta_b = num(fields[4]);
    r.eta_ng = num(fields[5]);
    r.nu = num(fields[6]);
    if (!fields[7].empty()) {
      r.fidelity = num(fields[7]);
    }
    records.push_back(r);
  }
  return records;
}

std::string to_json_text(std::span<const MeasureRecord> records) {
  nlohmann::json arr = nlohmann::json::array();
  for (const MeasureRecord& r : records) {
    nlohmann::json obj = {
        {"epsilon", r.params.epsilon}, {"force", r.params.force},
        {"omega", r.params.omega},     {"time", r.params.time},
        {"eta_b", r.eta_b},            {"eta_ng", r.eta_ng},
        {"nu", r.nu},
    };
    if (r.fidelity) {
      obj["fidelity"] = *r.fidelity;
    }
    arr.push_back(std::move(obj));
  }
  return arr.dump(2) + "\n";
}

}  // namespace duffing
