#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "duffing/errors.hpp"
#include "duffing/hamiltonian.hpp"
#include "duffing/perturbative.hpp"
#include "duffing/wigner.hpp"
#include "oracles.hpp"

using namespace duffing;

namespace {

constexpr double kPi = 3.14159265358979323846;

FockState random_support_state(int dim, int support, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::VectorXcd c = Eigen::VectorXcd::Zero(dim);
  for (int n = 0; n < support; ++n) {
    c(n) = Complex(g(rng), g(rng));
  }
  return FockState(std::move(c)).normalized();
}

// Direct kernel sum with library Laguerre polynomials and explicit
// factorial ratios; returns the full complex value.
Complex naive_kernel_sum(const FockState& s, double x, double p) {
  const double r2 = x * x + p * p;
  const Complex zbar = std::sqrt(2.0) * Complex(x, -p);
  Complex acc(0.0, 0.0);
  for (int m = 0; m < s.dim(); ++m) {
    for (int n = 0; n < s.dim(); ++n) {
      const int lo = std::min(m, n);
      const int hi = std::max(m, n);
      double ratio = 1.0;
      for (int k = lo + 1; k <= hi; ++k) {
        ratio /= k;
      }
      const double lag = std::assoc_laguerre(lo, hi - lo, 2.0 * r2);
      Complex ang = std::pow(zbar, hi - lo);
      if (n > m) {
        ang = std::conj(ang);
      }
      const double sign = (lo % 2 == 0) ? 1.0 : -1.0;
      acc += s.coeff(m) * std::conj(s.coeff(n)) * sign * std::sqrt(ratio) *
             std::exp(-r2) * ang * lag / kPi;
    }
  }
  return acc;
}

}  // namespace

TEST_CASE("wigner values at the origin") {
  CHECK(wigner_point(FockState::basis_state(0, 6), 0.0, 0.0) ==
        doctest::Approx(1.0 / kPi).epsilon(1e-14));
  CHECK(wigner_point(FockState::basis_state(1, 6), 0.0, 0.0) ==
        doctest::Approx(-1.0 / kPi).epsilon(1e-14));
}

TEST_CASE("one-photon superpositions have the documented closed forms") {
  // (|0> + |1>)/sqrt2 -> (1/pi) e^{-r^2} (r^2 + sqrt2 x)
  Eigen::VectorXcd cp(4);
  cp << 1.0, 1.0, 0.0, 0.0;
  const FockState plus = FockState(cp).normalized();
  // (|0> + i|1>)/sqrt2 -> (1/pi) e^{-r^2} (r^2 + sqrt2 p)
  Eigen::VectorXcd ci(4);
  ci << 1.0, Complex(0.0, 1.0), 0.0, 0.0;
  const FockState plus_i = FockState(ci).normalized();

  for (const auto& [x, p] :
       {std::pair{0.7, -0.3}, {0.0, 1.1}, {-1.4, 0.6}, {0.3, 0.0}}) {
    const double r2 = x * x + p * p;
    CHECK(wigner_point(plus, x, p) ==
          doctest::Approx(std::exp(-r2) * (r2 + std::sqrt(2.0) * x) / kPi)
              .epsilon(1e-12));
    CHECK(wigner_point(plus_i, x, p) ==
          doctest::Approx(std::exp(-r2) * (r2 + std::sqrt(2.0) * p) / kPi)
              .epsilon(1e-12));
  }
}

TEST_CASE("recurrence evaluator agrees with the naive kernel sum") {
  const FockState s = random_support_state(8, 6, 11u);
  for (const auto& [x, p] :
       {std::pair{0.0, 0.0}, {0.9, -1.3}, {-2.1, 0.4}, {3.0, 2.5}}) {
    const Complex naive = naive_kernel_sum(s, x, p);
    CHECK(std::abs(naive.imag()) < 1e-12);
    CHECK(wigner_point(s, x, p) == doctest::Approx(naive.real()).epsilon(1e-11));
  }
}

TEST_CASE("closed-form kernel matches the characteristic-function transform") {
  std::vector<std::pair<double, double>> pts;
  for (int ix = -2; ix <= 2; ++ix) {
    for (int ip = -2; ip <= 2; ++ip) {
      pts.emplace_back(double(ix), double(ip));
    }
  }

  const FockState pert = ground_state_perturbative(0.4, 5).state;
  const FockState rnd = random_support_state(5, 5, 23u);
  for (const FockState& s : {pert, rnd}) {
    const std::vector<double> direct = oracle::wigner_transform(s, pts);
    for (size_t j = 0; j < pts.size(); ++j) {
      CHECK(std::abs(wigner_point(s, pts[j].first, pts[j].second) -
                     direct[j]) < 1e-6);
    }
  }
}

TEST_CASE("fock states are rotationally symmetric in phase space") {
  const FockState three = FockState::basis_state(3, 8);
  for (double r : {0.5, 1.3, 2.2}) {
    double lo = 1e300, hi = -1e300;
    for (int k = 0; k < 32; ++k) {
      const double th = 2.0 * kPi * k / 32.0;
      const double w = wigner_point(three, r * std::cos(th), r * std::sin(th));
      lo = std::min(lo, w);
      hi = std::max(hi, w);
    }
    CHECK(hi - lo < 1e-10);
  }
}

TEST_CASE("grids: normalization, signs, bound, serial/parallel identity") {
  QuadratureConfig cfg;
  cfg.step = 0.05;

  const WignerGrid vac = wigner_grid(FockState::basis_state(0, 6), cfg);
  CHECK(std::abs(vac.riemann_sum() - 1.0) < 1e-4);
  CHECK(vac.min_value() >= 0.0);
  CHECK(vac.max_abs() <= 1.0 / kPi + 1e-9);

  const FockState gs = ground_state_perturbative(0.1, 12).state;
  const WignerGrid g = wigner_grid(gs, cfg);
  CHECK(std::abs(g.riemann_sum() - 1.0) < 1e-4);
  CHECK(g.min_value() < -1e-5);  // negative regions at eps = 0.1
  CHECK(g.max_abs() <= 1.0 / kPi + 1e-9);

  const WignerGrid ref = wigner_grid_serial(gs, cfg);
  CHECK(g.values == ref.values);
  CHECK(negativity_volume(gs, cfg) == negativity_volume_serial(gs, cfg));

  const FockState num = ground_state_numeric(0.3, 51).state;
  const WignerGrid gn = wigner_grid(num, cfg);
  CHECK(std::abs(gn.riemann_sum() - 1.0) < 1e-4);
  CHECK(gn.max_abs() <= 1.0 / kPi + 1e-9);

  DuffingParams drv;
  drv.epsilon = 0.1;
  drv.force = 0.015;
  drv.omega = 1.018;
  drv.time = 1.0;
  const WignerGrid gd = wigner_grid(driven_ground_state(drv, 12), cfg);
  CHECK(std::abs(gd.riemann_sum() - 1.0) < 1e-4);
  CHECK(gd.max_abs() <= 1.0 / kPi + 1e-9);
}

TEST_CASE("negativity volume: analytic one-photon value and vacuum floor") {
  QuadratureConfig cfg;  // default extent 6, step 0.02

  const double eta1 = negativity_volume(FockState::basis_state(1, 6), cfg);
  const double analytic = 4.0 * std::exp(-0.5) - 2.0;
  CHECK(std::abs(analytic - 0.426123) < 1e-6);
  const double radial = oracle::fock1_negativity_radial();
  CHECK(std::abs(radial - analytic) < 1e-8);
  CHECK(std::abs(eta1 - analytic) < 1e-4);

  CHECK(negativity_volume(FockState::basis_state(0, 6), cfg) < 1e-6);

  const double lo = negativity_volume(ground_state_perturbative(0.1, 12).state, cfg);
  const double hi = negativity_volume(ground_state_perturbative(0.2, 12).state, cfg);
  CHECK(lo > 0.0);
  CHECK(hi > lo);

  CHECK(nonclassicality(FockState::basis_state(1, 6), cfg) ==
        doctest::Approx(analytic / (1.0 + analytic)).epsilon(1e-4));
  CHECK(nonclassicality(FockState::basis_state(1, 6), cfg) ==
        doctest::Approx(0.29880).epsilon(1e-3));
  CHECK(nonclassicality(FockState::basis_state(0, 6), cfg) < 1e-6);
}

TEST_CASE("negativity refinement: convergence check") {
  QuadratureConfig ok;
  ok.extent = 6.0;
  ok.step = 0.04;
  ok.refine = true;
  const FockState gs = ground_state_perturbative(0.1, 12).state;
  const double eta_refined = negativity_volume(gs, ok);
  QuadratureConfig plain = ok;
  plain.refine = false;
  CHECK(std::abs(eta_refined - negativity_volume(gs, plain)) < 1e-4);

  // window far too small for |4>: the doubled-extent estimate disagrees
  QuadratureConfig tight;
  tight.extent = 2.0;
  tight.step = 0.1;
  tight.refine = true;
  CHECK_THROWS_AS(negativity_volume(FockState::basis_state(4, 6), tight),
                  accuracy_error);
  try {
    negativity_volume(FockState::basis_state(4, 6), tight);
  } catch (const accuracy_error& e) {
    CHECK(std::abs(e.coarse_estimate() - e.fine_estimate()) > 1e-4);
  }
}

TEST_CASE("quadrature config validation") {
  QuadratureConfig bad;
  bad.step = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad.step = 1.0;
  bad.extent = 6.0;  // step > extent/10
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad.extent = -1.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("momentum marginal reproduces the position density") {
  const FockState gs = ground_state_perturbative(0.3, 12).state;
  const double dp = 0.02;
  for (double x : {0.0, 0.7, 1.4}) {
    double marg = 0.0;
    for (double p = -6.0; p <= 6.0 + 1e-12; p += dp) {
      marg += wigner_point(gs, x, p);
    }
    marg *= dp;
    double psi = 0.0;
    for (int n = 0; n < gs.dim(); ++n) {
      psi += gs.coeff(n).real() * harmonic_wavefunction(n, x);
    }
    CHECK(std::abs(marg - psi * psi) < 1e-6);
  }
}

TEST_CASE("negative volume is invariant under area-preserving rotation") {
  const FockState gs = ground_state_perturbative(0.5, 12).state;
  QuadratureConfig cfg;
  cfg.step = 0.02;
  const double eta = negativity_volume(gs, cfg);

  const double th = 0.37;
  const double c = std::cos(th), s = std::sin(th);
  double mass = 0.0;
  const int n = int(std::lround(2.0 * cfg.extent / cfg.step)) + 1;
  for (int ix = 0; ix < n; ++ix) {
    const double x = -cfg.extent + ix * cfg.step;
    double row = 0.0;
    for (int ip = 0; ip < n; ++ip) {
      const double p = -cfg.extent + ip * cfg.step;
      row += std::abs(wigner_point(gs, c * x - s * p, s * x + c * p));
    }
    mass += row;
  }
  const double eta_rotated = mass * cfg.step * cfg.step - 1.0;
  CHECK(std::abs(eta - eta_rotated) < 1e-4);
}

TEST_CASE("grid text format") {
  QuadratureConfig cfg;
  cfg.extent = 1.0;
  cfg.step = 0.1;
  const WignerGrid g = wigner_grid(FockState::basis_state(0, 4), cfg);
  const std::string text = to_grid_text(g);

  std::istringstream in(text);
  std::string header;
  REQUIRE(std::getline(in, header));
  std::istringstream hs(header);
  std::string hash;
  double xmin, xmax, pmin, pmax;
  int nx, np;
  hs >> hash >> xmin >> xmax >> pmin >> pmax >> nx >> np;
  CHECK(hash == "#");
  CHECK(xmin == -1.0);
  CHECK(xmax == 1.0);
  CHECK(nx == 21);
  CHECK(np == 21);

  // row-major in x: first row keeps x = x_min while p advances
  double x0, p0, w0, x1, p1, w1;
  in >> x0 >> p0 >> w0 >> x1 >> p1 >> w1;
  CHECK(x0 == -1.0);
  CHECK(p0 == -1.0);
  CHECK(x1 == -1.0);
  CHECK(p1 == doctest::Approx(-0.9).epsilon(1e-15));
  CHECK(w0 == g.at(0, 0));
  CHECK(w1 == g.at(0, 1));

  int lines = 1;
  std::string line;
  std::istringstream again(text);
  while (std::getline(again, line)) {
    ++lines;
  }
  CHECK(lines == 1 + 21 * 21 + 1);
}
