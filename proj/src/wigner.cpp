#include "duffing/wigner.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "duffing/errors.hpp"

namespace duffing {

namespace {

constexpr double kPi = 3.14159265358979323846;

void require_normalized(const FockState& state, const char* who) {
  if (std::abs(state.norm() - 1.0) > 1e-6) {
    throw contract_violation(std::string(who) + ": state must be normalized");
  }
}

// Evaluates W(x, p) = (1/pi) sum_{delta, n} (-1)^n M_n^delta(r)
//                     * Re[ pair(delta, n) * ((x - ip)/r)^delta ]
// where M_n^delta = sqrt(n!/(n+delta)!) e^{-r^2} (sqrt2 r)^delta
//                   L_n^delta(2 r^2)
// is bounded by 1 and satisfies the normalized three-term recurrence
//   M_{n+1} = [(2n + 1 + delta - u) M_n - sqrt(n(n+delta)) M_{n-1}]
//             / sqrt((n+1)(n+1+delta)),      u = 2 r^2.
// Carrying the Gaussian and the sqrt(n!/m!) prefactor inside the recurrence
// keeps every intermediate O(1) up to n ~ 50.
class WignerEvaluator {
 public:
  explicit WignerEvaluator(const FockState& state) {
    const Eigen::VectorXcd& c = state.coeffs();
    d_ = 1;
    for (int n = 0; n < state.dim(); ++n) {
      if (c(n) != Complex(0.0, 0.0)) {
        d_ = n + 1;
      }
    }
    diag_.resize(d_);
    for (int n = 0; n < d_; ++n) {
      diag_[n] = std::norm(c(n));
    }
    pairs_.resize(size_t(d_) * (d_ - 1) / 2);
    size_t k = 0;
    for (int delta = 1; delta < d_; ++delta) {
      for (int n = 0; n + delta < d_; ++n) {
        pairs_[k++] = 2.0 * c(n + delta) * std::conj(c(n));
      }
    }
    rt_.resize(size_t(2) * d_ * d_ + 1);
    for (size_t i = 0; i < rt_.size(); ++i) {
      rt_[i] = std::sqrt(double(i));
    }
  }

  int support_dim() const { return d_; }

  double operator()(double x, double p) const {
    const double r2 = x * x + p * p;
    const double u = 2.0 * r2;
    const double base = std::exp(-r2);
    double acc = 0.0;

    {  // delta = 0
      double prev = 0.0, cur = base, sign = 1.0;
      for (int n = 0; n < d_; ++n) {
        acc += sign * cur * diag_[n];
        const double next =
            ((2.0 * n + 1.0 - u) * cur - rt_[size_t(n) * n] * prev) /
            double(n + 1);
        prev = cur;
        cur = next;
        sign = -sign;
      }
    }

    if (r2 > 0.0 && d_ > 1) {
      const double r = std::sqrt(r2);
      const Complex zph(x / r, -p / r);  // unit-modulus angular factor
      Complex ph(1.0, 0.0);
      double m0 = base;
      size_t k = 0;
      for (int delta = 1; delta < d_; ++delta) {
        m0 *= std::sqrt(2.0) * r / rt_[delta];
        ph *= zph;
        double prev = 0.0, cur = m0, sign = 1.0;
        for (int n = 0; n + delta < d_; ++n) {
          const Complex w = pairs_[k++] * ph;
          acc += sign * cur * w.real();
          const double next = ((2.0 * n + 1.0 + delta - u) * cur -
                               rt_[size_t(n) * (n + delta)] * prev) /
                              rt_[size_t(n + 1) * (n + 1 + delta)];
          prev = cur;
          cur = next;
          sign = -sign;
        }
      }
    }
    return acc / kPi;
  }

 private:
  int d_;                       // effective support (trailing exact zeros cut)
  std::vector<double> diag_;    // |c_n|^2
  std::vector<Complex> pairs_;  // 2 c_{n+delta} conj(c_n), packed by delta
  std::vector<double> rt_;      // sqrt(k) lookup
};

struct GridSpec {
  double x0, p0, dx, dp;
  int nx, np;
};

GridSpec make_spec(const QuadratureConfig& cfg) {
  cfg.validate();
  GridSpec s;
  s.nx = int(std::lround(2.0 * cfg.extent / cfg.step)) + 1;
  s.np = s.nx;
  s.x0 = -cfg.extent;
  s.p0 = -cfg.extent;
  s.dx = 2.0 * cfg.extent / (s.nx - 1);
  s.dp = 2.0 * cfg.extent / (s.np - 1);
  return s;
}

// Fixed-order pairwise reduction over [lo, hi).
double pairwise_sum(const std::vector<double>& v, size_t lo, size_t hi) {
  const size_t n = hi - lo;
  if (n <= 8) {
    double s = 0.0;
    for (size_t i = lo; i < hi; ++i) {
      s += v[i];
    }
    return s;
  }
  const size_t mid = lo + n / 2;
  return pairwise_sum(v, lo, mid) + pairwise_sum(v, mid, hi);
}

double kahan_row_abs(const WignerEvaluator& w, double x, double p0, double dp,
                     int np) {
  double sum = 0.0, comp = 0.0;
  for (int ip = 0; ip < np; ++ip) {
    const double val = std::abs(w(x, p0 + ip * dp)) - comp;
    const double t = sum + val;
    comp = (t - sum) - val;
    sum = t;
  }
  return sum;
}

WignerGrid fill_grid_header(const GridSpec& s) {
  WignerGrid g;
  g.x_min = s.x0;
  g.x_max = s.x0 + (s.nx - 1) * s.dx;
  g.p_min = s.p0;
  g.p_max = s.p0 + (s.np - 1) * s.dp;
  g.nx = s.nx;
  g.np = s.np;
  g.values.resize(size_t(s.nx) * s.np);
  return g;
}

double raw_negativity(const std::vector<double>& row_abs, const GridSpec& s) {
  const double mass = pairwise_sum(row_abs, 0, row_abs.size()) * s.dx * s.dp;
  return std::max(0.0, mass - 1.0);
}

double negativity_once(const FockState& state, const QuadratureConfig& cfg,
                       bool parallel) {
  const GridSpec s = make_spec(cfg);
  const WignerEvaluator w(state);
  std::vector<double> row_abs(s.nx);
  if (parallel) {
#pragma omp parallel for schedule(static)
    for (int ix = 0; ix < s.nx; ++ix) {
      row_abs[ix] = kahan_row_abs(w, s.x0 + ix * s.dx, s.p0, s.dp, s.np);
    }
  } else {
    for (int ix = 0; ix < s.nx; ++ix) {
      row_abs[ix] = kahan_row_abs(w, s.x0 + ix * s.dx, s.p0, s.dp, s.np);
    }
  }
  return raw_negativity(row_abs, s);
}

double negativity_impl(const FockState& state, const QuadratureConfig& cfg,
                       bool parallel) {
  require_normalized(state, "negativity_volume");
  const double eta = negativity_once(state, cfg, parallel);
  if (!cfg.refine) {
    return eta;
  }
  QuadratureConfig fine = cfg;
  fine.refine = false;
  fine.step = 0.5 * cfg.step;
  fine.extent = 2.0 * cfg.extent;
  const double eta_fine = negativity_once(state, fine, parallel);
  if (std::abs(eta - eta_fine) > 1e-4) {
    throw accuracy_error("negativity_volume: refinement did not converge", eta,
                         eta_fine);
  }
  return eta_fine;
}

}  // namespace

void QuadratureConfig::validate() const {
  if (!(extent > 0.0) || !(step > 0.0) || step > extent / 10.0) {
    throw std::invalid_argument(
        "QuadratureConfig: need extent > 0, step > 0, step <= extent/10");
  }
}

double WignerGrid::riemann_sum() const {
  std::vector<double> row(nx);
  for (int ix = 0; ix < nx; ++ix) {
    double sum = 0.0, comp = 0.0;
    for (int ip = 0; ip < np; ++ip) {
      const double val = at(ix, ip) - comp;
      const double t = sum + val;
      comp = (t - sum) - val;
      sum = t;
    }
    row[ix] = sum;
  }
  return pairwise_sum(row, 0, row.size()) * cell_area();
}

double WignerGrid::min_value() const {
  double m = values.empty() ? 0.0 : values[0];
  for (double v : values) {
    m = std::min(m, v);
  }
  return m;
}

double WignerGrid::max_abs() const {
  double m = 0.0;
  for (double v : values) {
    m = std::max(m, std::abs(v));
  }
  return m;
}

double wigner_point(const FockState& state, double x, double p) {
  require_normalized(state, "wigner_point");
  return WignerEvaluator(state)(x, p);
}

WignerGrid wigner_grid(const FockState& state, const QuadratureConfig& cfg) {
  require_normalized(state, "wigner_grid");
  const GridSpec s = make_spec(cfg);
  const WignerEvaluator w(state);
  WignerGrid g = fill_grid_header(s);
#pragma omp parallel for schedule(static)
  for (int ix = 0; ix < s.nx; ++ix) {
    const double x = s.x0 + ix * s.dx;
    double* row = g.values.data() + size_t(ix) * s.np;
    for (int ip = 0; ip < s.np; ++ip) {
      row[ip] = w(x, s.p0 + ip * s.dp);
    }
  }
  return g;
}

WignerGrid wigner_grid_serial(const FockState& state,
                              const QuadratureConfig& cfg) {
  require_normalized(state, "wigner_grid_serial");
  const GridSpec s = make_spec(cfg);
  const WignerEvaluator w(state);
  WignerGrid g = fill_grid_header(s);
  for (int ix = 0; ix < s.nx; ++ix) {
    const double x = s.x0 + ix * s.dx;
    double* row = g.values.data() + size_t(ix) * s.np;
    for (int ip = 0; ip < s.np; ++ip) {
      row[ip] = w(x, s.p0 + ip * s.dp);
    }
  }
  return g;
}

double negativity_volume(const FockState& state, const QuadratureConfig& cfg) {
  return negativity_impl(state, cfg, true);
}

double negativity_volume_serial(const FockState& state,
                                const QuadratureConfig& cfg) {
  return negativity_impl(state, cfg, false);
}

double nonclassicality(const FockState& state, const QuadratureConfig& cfg) {
  const double eta = negativity_volume(state, cfg);
  return eta / (1.0 + eta);
}

std::string grid_to_text(const std::vector<double>& values, double a_min,
                         double a_max, double b_min, double b_max, int na,
                         int nb) {
  if (na < 1 || nb < 1 || values.size() != size_t(na) * nb) {
    throw std::invalid_argument("grid_to_text: inconsistent grid shape");
  }
  std::string out;
  out.reserve(values.size() * 48 + 128);
  char buf[128];
  std::snprintf(buf, sizeof(buf), "# %.17g %.17g %.17g %.17g %d %d\n", a_min,
                a_max, b_min, b_max, na, nb);
  out += buf;
  const double da = na > 1 ? (a_max - a_min) / (na - 1) : 0.0;
  const double db = nb > 1 ? (b_max - b_min) / (nb - 1) : 0.0;
  for (int ia = 0; ia < na; ++ia) {
    const double a = a_min + ia * da;
    for (int ib = 0; ib < nb; ++ib) {
      std::snprintf(buf, sizeof(buf), "%.17g %.17g %.17g\n", a, b_min + ib * db,
                    values[size_t(ia) * nb + ib]);
      out += buf;
    }
  }
  return out;
}

std::string to_grid_text(const WignerGrid& g) {
  return grid_to_text(g.values, g.x_min, g.x_max, g.p_min, g.p_max, g.nx, g.np);
}

}  // namespace duffing
