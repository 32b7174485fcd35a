// Command-line front end: parameter sweeps, Wigner grids, fidelity scans,
// fits, and potential profiles, emitted as CSV/JSON/plot-grid files.
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "duffing/errors.hpp"
#include "duffing/hamiltonian.hpp"
#include "duffing/measures.hpp"
#include "duffing/perturbative.hpp"
#include "duffing/sweep.hpp"
#include "duffing/wigner.hpp"

namespace {

using namespace duffing;

std::filesystem::path resolve_out(const std::string& out) {
  std::filesystem::path p(out);
  if (p.is_relative()) {
    if (const char* dir = std::getenv("DUFFING_OUT_DIR")) {
      p = std::filesystem::path(dir) / p;
    }
  }
  return p;
}

// Write-then-rename so a failed run never leaves a partial file at the
// destination.
void write_file_atomic(const std::filesystem::path& path,
                       const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) {
      throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    }
    f << content;
    f.flush();
    if (!f.good()) {
      f.close();
      std::filesystem::remove(tmp);
      throw std::runtime_error("failed writing " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw std::runtime_error("cannot move output into place at " +
                             path.string() + ": " + ec.message());
  }
}

std::string format_records(const std::vector<MeasureRecord>& records,
                           const std::string& format) {
  if (format == "json") {
    return to_json_text(records);
  }
  return to_csv(records);
}

void warn_outside_validated(double eps_max) {
  if (eps_max > kValidatedEpsilonMax) {
    std::cerr << "warning: eps_max " << eps_max
              << " is outside the validated range [0, "
              << kValidatedEpsilonMax << "]\n";
  }
}

struct SweepOpts {
  double eps_min = 0.0;
  double eps_max = 0.8;
  int steps = 81;
  int dim = kDefaultDim;
  QuadratureConfig quad;
  std::string out;
  std::string format = "csv";
};

void add_quad_options(CLI::App* cmd, QuadratureConfig& quad) {
  cmd->add_option("--extent", quad.extent,
                  "half-width of the phase-space window")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--step", quad.step, "phase-space grid spacing")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_flag("--refine", quad.refine,
                "cross-check negativity on a refined grid");
}

void add_sweep_options(CLI::App* cmd, SweepOpts& o, bool with_out = true) {
  cmd->add_option("--eps-min", o.eps_min, "lower end of the epsilon grid")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  cmd->add_option("--eps-max", o.eps_max, "upper end of the epsilon grid")
      ->capture_default_str();
  cmd->add_option("--steps", o.steps, "number of grid points")
      ->check(CLI::Range(2, 1000000))
      ->capture_default_str();
  cmd->add_option("--dim", o.dim, "Fock-space truncation")
      ->check(CLI::Range(5, 2000))
      ->capture_default_str();
  add_quad_options(cmd, o.quad);
  if (with_out) {
    cmd->add_option("--out", o.out, "output file")->required();
    cmd->add_option("--format", o.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
  }
}

int run_sweep_undriven(const SweepOpts& o, bool use_numeric) {
  warn_outside_validated(o.eps_max);
  const auto records =
      sweep_undriven(o.eps_min, o.eps_max, o.steps, o.dim, o.quad, use_numeric);
  write_file_atomic(resolve_out(o.out), format_records(records, o.format));
  std::printf("sweep-undriven: %d records, eps in [%g, %g], dim %d -> %s\n",
              int(records.size()), o.eps_min, o.eps_max, o.dim, o.out.c_str());
  return 0;
}

int run_sweep_driven(const SweepOpts& o, const DuffingParams& base) {
  warn_outside_validated(o.eps_max);
  const auto records =
      sweep_driven(base, o.eps_min, o.eps_max, o.steps, o.dim, o.quad);
  write_file_atomic(resolve_out(o.out), format_records(records, o.format));
  std::printf(
      "sweep-driven: %d records, eps in [%g, %g], F=%g omega=%g t=%g -> %s\n",
      int(records.size()), o.eps_min, o.eps_max, base.force, base.omega,
      base.time, o.out.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Ground-state nonlinearity and nonclassicality of the quantum "
      "Duffing oscillator"};
  app.require_subcommand(1);

  // sweep-undriven -----------------------------------------------------
  SweepOpts su;
  bool su_numeric = false;
  CLI::App* cmd_su = app.add_subcommand(
      "sweep-undriven",
      "sweep epsilon, recording eta_B, eta_NG, nu and fidelity");
  add_sweep_options(cmd_su, su);
  cmd_su->add_flag("--numeric", su_numeric,
                   "measure the numeric ground state instead of the "
                   "perturbative one");

  // sweep-driven -------------------------------------------------------
  SweepOpts sd;
  DuffingParams sd_base;
  sd_base.force = 0.015;
  CLI::App* cmd_sd = app.add_subcommand(
      "sweep-driven", "sweep epsilon for the driven oscillator");
  add_sweep_options(cmd_sd, sd);
  cmd_sd->add_option("--force", sd_base.force, "drive amplitude")
      ->capture_default_str();
  cmd_sd->add_option("--omega", sd_base.omega, "drive frequency")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd_sd->add_option("--time", sd_base.time, "evaluation time")
      ->capture_default_str();

  // wigner ---------------------------------------------------------------
  DuffingParams wg_params;
  int wg_dim = kDefaultDim;
  QuadratureConfig wg_quad;
  std::string wg_out;
  std::string wg_state = "pert";
  CLI::App* cmd_wg =
      app.add_subcommand("wigner", "sample the Wigner function on a grid");
  cmd_wg->add_option("--epsilon", wg_params.epsilon, "anharmonicity")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  cmd_wg->add_option("--force", wg_params.force, "drive amplitude (driven)")
      ->capture_default_str();
  cmd_wg->add_option("--omega", wg_params.omega, "drive frequency (driven)")
      ->capture_default_str();
  cmd_wg->add_option("--time", wg_params.time, "evaluation time (driven)")
      ->capture_default_str();
  cmd_wg->add_option("--dim", wg_dim, "Fock-space truncation")
      ->check(CLI::Range(5, 2000))
      ->capture_default_str();
  cmd_wg
      ->add_option("--state", wg_state,
                   "which ground state to sample: pert, numeric or driven")
      ->check(CLI::IsMember({"pert", "numeric", "driven"}))
      ->capture_default_str();
  add_quad_options(cmd_wg, wg_quad);
  cmd_wg->add_option("--out", wg_out, "output grid file")->required();

  // fidelity ---------------------------------------------------------------
  SweepOpts fi;
  CLI::App* cmd_fi = app.add_subcommand(
      "fidelity", "fidelity between perturbative and numeric ground states");
  add_sweep_options(cmd_fi, fi, /*with_out=*/false);
  cmd_fi->add_option("--out", fi.out, "optional epsilon,fidelity CSV");

  // fit ---------------------------------------------------------------
  SweepOpts ft;
  bool ft_numeric = false;
  CLI::App* cmd_ft = app.add_subcommand(
      "fit", "sweep and fit eta_B vs eta_NG and eta_NG vs nu");
  add_sweep_options(cmd_ft, ft, /*with_out=*/false);
  cmd_ft->add_flag("--numeric", ft_numeric,
                   "fit measures of the numeric ground state");
  cmd_ft->add_option("--out", ft.out, "optional JSON report");

  // potential ---------------------------------------------------------------
  DuffingParams po_params;
  po_params.force = 0.0;
  double po_tmax = 0.0;
  double po_xmax = 3.0;
  int po_xsteps = 601;
  int po_tsteps = 101;
  std::string po_out;
  CLI::App* cmd_po = app.add_subcommand(
      "potential", "sample V(x) or the driven V(x, t) on a grid");
  cmd_po->add_option("--epsilon", po_params.epsilon, "anharmonicity")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  cmd_po->add_option("--force", po_params.force, "drive amplitude")
      ->capture_default_str();
  cmd_po->add_option("--omega", po_params.omega, "drive frequency")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd_po->add_option("--t-max", po_tmax, "sample times in [0, t-max]")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  cmd_po->add_option("--x-max", po_xmax, "sample positions in [-x-max, x-max]")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd_po->add_option("--x-steps", po_xsteps, "position samples")
      ->check(CLI::Range(2, 1000000))
      ->capture_default_str();
  cmd_po->add_option("--t-steps", po_tsteps, "time samples when t-max > 0")
      ->check(CLI::Range(2, 1000000))
      ->capture_default_str();
  cmd_po->add_option("--out", po_out, "output grid file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (cmd_su->parsed()) {
      return run_sweep_undriven(su, su_numeric);
    }
    if (cmd_sd->parsed()) {
      return run_sweep_driven(sd, sd_base);
    }
    if (cmd_wg->parsed()) {
      FockState state = [&] {
        if (wg_state == "numeric") {
          return ground_state_numeric(wg_params.epsilon, wg_dim).state;
        }
        if (wg_state == "driven") {
          return driven_ground_state(wg_params, wg_dim);
        }
        const auto pert = ground_state_perturbative(wg_params.epsilon, wg_dim);
        if (pert.beyond_validated_epsilon) {
          std::cerr << "warning: epsilon outside the validated range\n";
        }
        return pert.state;
      }();
      const WignerGrid grid = wigner_grid(state, wg_quad);
      write_file_atomic(resolve_out(wg_out), to_grid_text(grid));
      std::printf(
          "wigner: %dx%d grid, min=%.6g, max|W|=%.6g, mass=%.9g -> %s\n",
          grid.nx, grid.np, grid.min_value(), grid.max_abs(),
          grid.riemann_sum(), wg_out.c_str());
      return 0;
    }
    if (cmd_fi->parsed()) {
      warn_outside_validated(fi.eps_max);
      double min_fid = 1.0, min_eps = fi.eps_min;
      std::string csv = "epsilon,fidelity\n";
      char buf[96];
      for (int i = 0; i < fi.steps; ++i) {
        const double eps =
            fi.eps_min + i * (fi.eps_max - fi.eps_min) / (fi.steps - 1);
        const double f = fidelity(ground_state_perturbative(eps, fi.dim).state,
                                  ground_state_numeric(eps, fi.dim).state);
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", eps, f);
        csv += buf;
        if (f < min_fid) {
          min_fid = f;
          min_eps = eps;
        }
      }
      if (!fi.out.empty()) {
        write_file_atomic(resolve_out(fi.out), csv);
      }
      std::printf("fidelity: min %.6f at eps=%g over %d points, dim %d\n",
                  min_fid, min_eps, fi.steps, fi.dim);
      return 0;
    }
    if (cmd_ft->parsed()) {
      warn_outside_validated(ft.eps_max);
      const auto records = sweep_undriven(ft.eps_min, ft.eps_max, ft.steps,
                                          ft.dim, ft.quad, ft_numeric);
      std::vector<double> ng, b, nu;
      for (const auto& r : records) {
        ng.push_back(r.eta_ng);
        b.push_back(r.eta_b);
        nu.push_back(r.nu);
      }
      const FitResult bures_fit = fit_sqrt_model(ng, b);
      const FitResult ng_fit = fit_sqrt_linear_model(nu, ng);
      if (!ft.out.empty()) {
        nlohmann::json j = {
            {"records", nlohmann::json::parse(to_json_text(records))},
            {"fit_eta_b_vs_eta_ng",
             {{"model", bures_fit.model_tag},
              {"coefficients", bures_fit.coefficients},
              {"residual_rms", bures_fit.residual_rms}}},
            {"fit_eta_ng_vs_nu",
             {{"model", ng_fit.model_tag},
              {"coefficients", ng_fit.coefficients},
              {"residual_rms", ng_fit.residual_rms}}},
        };
        write_file_atomic(resolve_out(ft.out), j.dump(2) + "\n");
      }
      std::printf(
          "fit: eta_b=a+b*sqrt(eta_ng): a=%.6g b=%.6g rms=%.3g | "
          "eta_ng=c0+c1*sqrt(nu)+c2*nu: c0=%.6g c1=%.6g c2=%.6g rms=%.3g\n",
          bures_fit.coefficients[0], bures_fit.coefficients[1],
          bures_fit.residual_rms, ng_fit.coefficients[0],
          ng_fit.coefficients[1], ng_fit.coefficients[2],
          ng_fit.residual_rms);
      return 0;
    }
    if (cmd_po->parsed()) {
      const int nt = po_tmax > 0.0 ? po_tsteps : 1;
      std::vector<double> values(size_t(po_xsteps) * nt);
      for (int ix = 0; ix < po_xsteps; ++ix) {
        const double x = -po_xmax + ix * (2.0 * po_xmax) / (po_xsteps - 1);
        for (int it = 0; it < nt; ++it) {
          const double t = nt == 1 ? 0.0 : po_tmax * it / (nt - 1);
          values[size_t(ix) * nt + it] =
              0.25 * po_params.epsilon * x * x * x * x -
              x * po_params.force * std::cos(po_params.omega * t);
        }
      }
      const std::string text = grid_to_text(values, -po_xmax, po_xmax, 0.0,
                                            po_tmax, po_xsteps, nt);
      write_file_atomic(resolve_out(po_out), text);
      std::printf("potential: %dx%d grid, eps=%g F=%g -> %s\n", po_xsteps, nt,
                  po_params.epsilon, po_params.force, po_out.c_str());
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
