#include <doctest.h>

#include <cmath>
#include <vector>

#include "duffing/errors.hpp"
#include "duffing/sweep.hpp"

using namespace duffing;

namespace {

QuadratureConfig fast_quad() {
  QuadratureConfig q;
  q.step = 0.05;
  return q;
}

}  // namespace

TEST_CASE("undriven sweep: endpoint record, fidelity band, monotone measures") {
  const auto records = sweep_undriven(0.0, 0.3, 7, 31, fast_quad());
  REQUIRE(records.size() == 7);

  CHECK(records.front().params.epsilon == 0.0);
  CHECK(records.back().params.epsilon == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(records.front().eta_b == 0.0);
  CHECK(records.front().eta_ng <= 1e-12);
  CHECK(records.front().nu == 0.0);
  REQUIRE(records.front().fidelity.has_value());
  CHECK(*records.front().fidelity == doctest::Approx(1.0).epsilon(1e-12));

  for (size_t i = 0; i < records.size(); ++i) {
    REQUIRE(records[i].fidelity.has_value());
    CHECK(*records[i].fidelity >= 0.95);
    CHECK(records[i].eta_b >= 0.0);
    CHECK(records[i].eta_b <= 1.0);
    CHECK(records[i].eta_ng >= 0.0);
    CHECK(records[i].nu >= 0.0);
    CHECK(records[i].nu < 1.0);
    if (i > 0) {
      CHECK(records[i].eta_b > records[i - 1].eta_b);
      CHECK(records[i].eta_ng > records[i - 1].eta_ng);
      CHECK(records[i].nu > records[i - 1].nu);
    }
  }
}

TEST_CASE("sweep assembly matches a serial loop and is deterministic") {
  const QuadratureConfig q = fast_quad();
  const auto par = sweep_undriven(0.0, 0.2, 5, 21, q);
  for (int i = 0; i < 5; ++i) {
    const MeasureRecord ref = undriven_record(0.05 * i, 21, q);
    CHECK(par[i].eta_b == ref.eta_b);
    CHECK(par[i].eta_ng == ref.eta_ng);
    CHECK(par[i].nu == ref.nu);
    CHECK(*par[i].fidelity == *ref.fidelity);
  }

  const auto again = sweep_undriven(0.0, 0.2, 5, 21, q);
  CHECK(to_csv(par) == to_csv(again));

  CHECK_THROWS_AS(sweep_undriven(0.2, 0.1, 5, 21, q), std::invalid_argument);
  CHECK_THROWS_AS(sweep_undriven(0.0, 0.2, 1, 21, q), std::invalid_argument);
}

TEST_CASE("driven sweep: record fields and resonance propagation") {
  DuffingParams base;
  base.force = 0.015;
  base.omega = 1.018;
  base.time = 1.0;
  const auto records = sweep_driven(base, 0.0, 0.1, 3, 21, fast_quad());
  REQUIRE(records.size() == 3);
  for (const auto& r : records) {
    CHECK_FALSE(r.fidelity.has_value());
    CHECK(r.params.force == base.force);
    CHECK(r.params.omega == base.omega);
  }
  // drive admixture alone leaves no measurable negative volume
  CHECK(records.front().nu < 1e-4);
  CHECK(records.front().eta_ng > 0.0);

  DuffingParams resonant = base;
  resonant.omega = 1.0;
  CHECK_THROWS_AS(sweep_driven(resonant, 0.0, 0.1, 3, 21, fast_quad()),
                  resonance_error);
}

TEST_CASE("sqrt fit: exact recovery, constant data, degeneracy") {
  std::vector<double> xs, ys;
  for (int i = 0; i <= 20; ++i) {
    const double x = 0.05 * i;
    xs.push_back(x);
    ys.push_back(0.1 + 0.5 * std::sqrt(x));
  }
  const FitResult fit = fit_sqrt_model(xs, ys);
  REQUIRE(fit.coefficients.size() == 2);
  CHECK(fit.coefficients[0] == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(fit.coefficients[1] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(fit.residual_rms < 1e-12);
  CHECK(fit.model_tag == "a+b*sqrt(x)");

  std::vector<double> flat(xs.size(), 2.5);
  const FitResult fit_flat = fit_sqrt_model(xs, flat);
  CHECK(std::abs(fit_flat.coefficients[1]) < 1e-12);
  CHECK(fit_flat.coefficients[0] == doctest::Approx(2.5).epsilon(1e-12));

  const std::vector<double> same(5, 1.0);
  CHECK_THROWS_AS(fit_sqrt_model(same, same), degenerate_fit_error);
  CHECK_THROWS_AS(fit_sqrt_model(std::vector<double>{1.0, 2.0},
                                 std::vector<double>{1.0, 2.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(fit_sqrt_model(std::vector<double>{-1.0, 1.0, 2.0},
                                 std::vector<double>{1.0, 2.0, 3.0}),
                  std::domain_error);
}

TEST_CASE("sqrt+linear fit: exact recovery and nested-model comparison") {
  std::vector<double> xs, ys;
  for (int i = 0; i <= 30; ++i) {
    const double x = 0.01 * i;
    xs.push_back(x);
    ys.push_back(0.002 + 0.2 * std::sqrt(x) + 2.7 * x);
  }
  const FitResult fit = fit_sqrt_linear_model(xs, ys);
  REQUIRE(fit.coefficients.size() == 3);
  CHECK(fit.coefficients[0] == doctest::Approx(0.002).epsilon(1e-10));
  CHECK(fit.coefficients[1] == doctest::Approx(0.2).epsilon(1e-10));
  CHECK(fit.coefficients[2] == doctest::Approx(2.7).epsilon(1e-10));
  CHECK(fit.residual_rms < 1e-10);

  // dropping the sqrt column must hurt on sqrt-shaped data
  Eigen::MatrixXd reduced(xs.size(), 2);
  Eigen::VectorXd y(xs.size());
  for (size_t i = 0; i < xs.size(); ++i) {
    reduced(i, 0) = 1.0;
    reduced(i, 1) = xs[i];
    y(i) = ys[i];
  }
  const Eigen::VectorXd beta = reduced.colPivHouseholderQr().solve(y);
  const double rms_reduced =
      std::sqrt((reduced * beta - y).squaredNorm() / double(xs.size()));
  CHECK(rms_reduced > 10.0 * fit.residual_rms);

  const std::vector<double> same(6, 2.0);
  CHECK_THROWS_AS(fit_sqrt_linear_model(same, same), degenerate_fit_error);
}

TEST_CASE("csv round trip is bit exact") {
  const auto records = sweep_undriven(0.0, 0.2, 4, 21, fast_quad());
  const std::string csv = to_csv(records);
  const auto parsed = records_from_csv(csv);
  REQUIRE(parsed.size() == records.size());
  for (size_t i = 0; i < records.size(); ++i) {
    CHECK(parsed[i].params.epsilon == records[i].params.epsilon);
    CHECK(parsed[i].eta_b == records[i].eta_b);
    CHECK(parsed[i].eta_ng == records[i].eta_ng);
    CHECK(parsed[i].nu == records[i].nu);
    CHECK(parsed[i].fidelity.has_value() == records[i].fidelity.has_value());
    if (records[i].fidelity) {
      CHECK(*parsed[i].fidelity == *records[i].fidelity);
    }
  }
  CHECK(to_csv(parsed) == csv);

  CHECK_THROWS_AS(records_from_csv("bad header\n"), std::invalid_argument);
}

TEST_CASE("csv and json carry the driven/undriven fidelity distinction") {
  DuffingParams base;
  base.force = 0.015;
  base.omega = 1.018;
  base.time = 1.0;
  const auto driven = sweep_driven(base, 0.0, 0.1, 2, 21, fast_quad());
  const std::string csv = to_csv(driven);
  CHECK(csv.find(",\n") != std::string::npos);  // empty trailing field
  const auto parsed = records_from_csv(csv);
  CHECK_FALSE(parsed.front().fidelity.has_value());

  const std::string json = to_json_text(driven);
  CHECK(json.find("\"eta_b\"") != std::string::npos);
  CHECK(json.find("\"fidelity\"") == std::string::npos);

  const auto undriven = sweep_undriven(0.0, 0.1, 2, 21, fast_quad());
  CHECK(to_json_text(undriven).find("\"fidelity\"") != std::string::npos);
}
