#include "sturm/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "sturm/basis.hpp"
#include "sturm/errors.hpp"

namespace sturm {

double perturbation_qao(const SystemParams& sys, double k, double eps, int n,
                        int order) {
  if (k <= 0.0) throw ConfigError("perturbation_qao: k must be positive");
  if (n < 0) throw ConfigError("perturbation_qao: n must be non-negative");
  if (order != 0 && order != 1)
    throw ConfigError("perturbation_qao: order must be 0 or 1");
  const double e0 = sys.hbar * std::sqrt(k / sys.mass) * (n + 0.5);
  if (order == 0) return e0;
  return e0 + 3.0 * sys.hbar * sys.hbar * eps * (2.0 * n * n + 2.0 * n + 1.0) /
                  (4.0 * sys.mass * k);
}

double perturbation_gaussian_ground(const SystemParams& sys, double lambda,
                                    double eps, int order) {
  if (lambda <= 0.0 || eps <= 0.0)
    throw ConfigError(
        "perturbation_gaussian_ground: lambda and eps must be positive");
  if (order != 0 && order != 1)
    throw ConfigError("perturbation_gaussian_ground: order must be 0 or 1");
  const double hb2 = sys.hbar * sys.hbar;
  const double r =
      16.0 * lambda * lambda * sys.mass * sys.mass / (hb2 * hb2 * eps * eps);
  const double rq = std::pow(r, -0.25);
  if (order == 0) return -lambda * (1.0 - rq);
  return -lambda / std::sqrt(1.0 + rq);
}

namespace {

double csa_diagonal(const SystemParams& sys, double k0, int n,
                    const Potential& v, double script_e) {
  const SturmianSlice slice = make_slice(sys, k0, n, script_e);
  return matrix_element(slice, slice, v);
}

}  // namespace

double conventional_sturmian_order0(const SystemParams& sys, double k0, int n,
                                    const Potential& v, CsaMode mode) {
  if (k0 <= 0.0)
    throw ConfigError("conventional_sturmian_order0: k0 must be positive");
  if (n < 0)
    throw ConfigError("conventional_sturmian_order0: n must be non-negative");
  const double seed = sys.hbar * std::sqrt(k0 / sys.mass) * (n + 0.5);
  if (mode == CsaMode::harmonic_seed)
    return csa_diagonal(sys, k0, n, v, seed) + 0.5 * seed;

  // Fixed point script_e = 2 W(script_e).
  auto f = [&](double se) { return 2.0 * csa_diagonal(sys, k0, n, v, se); };
  double se = seed;
  for (int i = 0; i < 200; ++i) {
    double g = 0.0;
    try {
      g = f(se);
    } catch (const Error&) {
      break;
    }
    if (!(g > 0.0) || !std::isfinite(g)) break;
    const double next = 0.5 * (se + g);
    if (std::abs(next - se) <= 1e-13 * se) return next;
    se = next;
  }

  // Bisection fallback on f(se) - se over a logarithmic range.
  auto h = [&](double se_val) { return f(se_val) - se_val; };
  double prev_se = 1e-6 * seed;
  double prev_h = 0.0;
  bool have_prev = false;
  double lo = 0.0, hi = 0.0;
  for (double cur = prev_se; cur <= 1e6 * seed; cur *= 1.25) {
    double cur_h;
    try {
      cur_h = h(cur);
    } catch (const Error&) {
      have_prev = false;
      continue;
    }
    if (have_prev && ((prev_h > 0.0) != (cur_h > 0.0))) {
      lo = prev_se;
      hi = cur;
      break;
    }
    prev_se = cur;
    prev_h = cur_h;
    have_prev = true;
  }
  if (hi == 0.0)
    throw NoFixedPoint(
        "conventional_sturmian_order0: script_e = 2 W(script_e) has no "
        "positive solution in (0, 1e6 * seed]");
  const bool lo_positive = h(lo) > 0.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if ((h(mid) > 0.0) == lo_positive)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

double wkb_quartic_action_constant() {
  return std::tgamma(0.25) * std::tgamma(1.5) / (2.0 * std::tgamma(1.75));
}

double wkb_quartic_order0(const SystemParams& sys, double eps, int n) {
  if (eps <= 0.0)
    throw ConfigError("wkb_quartic_order0: eps must be positive");
  if (n < 0) throw ConfigError("wkb_quartic_order0: n must be non-negative");
  const double c = wkb_quartic_action_constant();
  const double base = M_PI * sys.hbar * (n + 0.5) / c;
  return std::pow(base, 4.0 / 3.0) * std::cbrt(eps) /
         std::pow(2.0 * sys.mass, 2.0 / 3.0);
}

double gaussian_asymptotics(double lambda, double r, AsymptoticRegime regime,
                            std::string* warning) {
  if (r <= 0.0) throw ConfigError("gaussian_asymptotics: r must be positive");
  if (warning && r >= 0.1 && r <= 10.0) {
    std::ostringstream msg;
    msg << "gaussian_asymptotics: r = " << r
        << " lies between the regimes; the truncated "
        << (regime == AsymptoticRegime::large_r ? "large-r" : "small-r")
        << " series is unreliable here";
    *warning = msg.str();
  }
  if (regime == AsymptoticRegime::large_r) {
    const double q = std::pow(r, -0.25);
    return -lambda * (1.0 - q + (3.0 / 8.0) * q * q - (1.0 / 32.0) * q * q * q -
                      (1.0 / 128.0) * q * q * q * q);
  }
  return -0.5 * lambda * std::sqrt(r) *
         (1.0 - r + 3.0 * r * r - 13.0 * r * r * r + 68.0 * r * r * r * r);
}

DeltaLimitPair delta_limit_pair(const SystemParams& sys, double a) {
  if (a <= 0.0) throw ConfigError("delta_limit_pair: a must be positive");
  const double hb2 = sys.hbar * sys.hbar;
  DeltaLimitPair p;
  p.approx = -sys.mass * a * a / (M_PI * hb2);
  p.exact = -sys.mass * a * a / (2.0 * hb2);
  return p;
}

namespace {

// Interior-point tridiagonal of the Dirichlet finite-difference
// discretization: diag_i = hbar^2/(m h^2) + V(x_i), off = -hbar^2/(2 m h^2).
struct FdMatrix {
  std::vector<double> diag;
  double off = 0.0;
};

FdMatrix fd_matrix(const SystemParams& sys, const Potential& v, double x_max,
                   int n_points) {
  const int interior = n_points - 2;
  const double h = 2.0 * x_max / (n_points - 1);
  const double kin = sys.hbar * sys.hbar / (2.0 * sys.mass * h * h);
  FdMatrix m;
  m.off = -kin;
  m.diag.resize(interior);
  for (int i = 0; i < interior; ++i) {
    const double x = -x_max + (i + 1) * h;
    const double val = eval(v, x);
    if (!std::isfinite(val))
      throw ConfigError("oracle_spectrum: potential not finite on the grid");
    m.diag[i] = 2.0 * kin + val;
  }
  return m;
}

// Number of eigenvalues strictly below sigma (Sturm sequence / LDL^T
// inertia count with the conventional tiny-pivot guard).
int count_below(const FdMatrix& m, double sigma) {
  const double b2 = m.off * m.off;
  const double tiny = 1e-300;
  double q = 1.0;
  int count = 0;
  for (std::size_t i = 0; i < m.diag.size(); ++i) {
    q = m.diag[i] - sigma - (i > 0 ? b2 / q : 0.0);
    if (q == 0.0) q = -tiny;
    if (q < 0.0) ++count;
  }
  return count;
}

double kth_eigenvalue(const FdMatrix& m, int k) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (double d : m.diag) {
    lo = std::min(lo, d);
    hi = std::max(hi, d);
  }
  lo -= 2.0 * std::abs(m.off);
  hi += 2.0 * std::abs(m.off);
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (count_below(m, mid) >= k + 1)
      hi = mid;
    else
      lo = mid;
    if (hi - lo <= 1e-14 * (std::abs(lo) + std::abs(hi) + 1.0)) break;
  }
  return 0.5 * (lo + hi);
}

// Inverse iteration with a Thomas solve; enough accuracy to police the
// boundary amplitude (the eigenvalue itself comes from the bisection).
std::vector<double> eigenvector(const FdMatrix& m, double lambda) {
  const int n = static_cast<int>(m.diag.size());
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i)
    v[i] = std::sin(0.709 * (i + 1)) + 0.37 * std::cos(1.313 * i);
  std::vector<double> c(n), d(n);
  for (int pass = 0; pass < 3; ++pass) {
    // Solve (T - lambda I) w = v in place.
    double piv = m.diag[0] - lambda;
    if (std::abs(piv) < 1e-280) piv = 1e-280;
    c[0] = m.off / piv;
    d[0] = v[0] / piv;
    for (int i = 1; i < n; ++i) {
      piv = m.diag[i] - lambda - m.off * c[i - 1];
      if (std::abs(piv) < 1e-280) piv = 1e-280;
      c[i] = m.off / piv;
      d[i] = (v[i] - m.off * d[i - 1]) / piv;
    }
    v[n - 1] = d[n - 1];
    for (int i = n - 2; i >= 0; --i) v[i] = d[i] - c[i] * v[i + 1];
    double peak = 0.0;
    for (double val : v) peak = std::max(peak, std::abs(val));
    if (peak == 0.0) throw Error("oracle_spectrum: inverse iteration broke down");
    for (double& val : v) val /= peak;
  }
  return v;
}

std::vector<double> spectrum_on_grid(const SystemParams& sys,
                                     const Potential& v, double x_max,
                                     int n_points, int levels,
                                     bool check_leak) {
  const FdMatrix m = fd_matrix(sys, v, x_max, n_points);
  std::vector<double> energies(levels);
  for (int k = 0; k < levels; ++k) {
    energies[k] = kth_eigenvalue(m, k);
    if (check_leak) {
      const std::vector<double> vec = eigenvector(m, energies[k]);
      const double edge =
          std::max(std::abs(vec.front()), std::abs(vec.back()));
      if (edge > 1e-8) {
        std::ostringstream msg;
        msg << "oracle_spectrum: level " << k
            << " eigenfunction has boundary amplitude " << edge
            << " (> 1e-8 of peak); enlarge x_max";
        throw BoundaryLeak(msg.str());
      }
    }
  }
  return energies;
}

double eval_or_inf(const Potential& v, double x) {
  try {
    return eval(v, x);
  } catch (const Error&) {
    return std::numeric_limits<double>::infinity();
  }
}

// Classical turning point: largest x in (0, x_hi] with V(x) <= energy.
double turning_point(const Potential& v, double energy, double x_hi) {
  if (eval_or_inf(v, x_hi) <= energy) return x_hi;
  const int steps = 400;
  double above = x_hi;
  for (int i = 1; i <= steps; ++i) {
    const double x = x_hi * (1.0 - static_cast<double>(i) / steps);
    if (eval_or_inf(v, x) <= energy) {
      double lo = x, hi = above;
      for (int j = 0; j < 100; ++j) {
        const double mid = 0.5 * (lo + hi);
        if (eval_or_inf(v, mid) <= energy)
          lo = mid;
        else
          hi = mid;
      }
      return 0.5 * (lo + hi);
    }
    above = x;
  }
  return x_hi / 6.0;  // never classically allowed: degenerate fallback
}

double auto_x_max(const SystemParams& sys, const Potential& v, int levels) {
  // Self-consistent box: provisional top-level energy on the current box
  // feeds the turning-point rule until the box reproduces itself.
  const int boot_points = 1201;
  double box = 4.0;
  double x_t = box / 6.0;
  for (int round = 0; round < 20; ++round) {
    const double energy =
        spectrum_on_grid(sys, v, box, boot_points, levels, false).back();
    x_t = turning_point(v, energy, box);
    const double next = 6.0 * x_t;
    if (std::abs(next - box) <= 0.05 * box) return next;
    box = next;
  }
  return 6.0 * x_t;
}

}  // namespace

OracleResult oracle_spectrum(const SystemParams& sys, const Potential& v,
                             const OracleConfig& cfg) {
  if (cfg.n_points < 200)
    throw ConfigError("oracle_spectrum: n_points must be at least 200");
  if (cfg.levels < 1)
    throw ConfigError("oracle_spectrum: need at least one level");
  if (cfg.levels > cfg.n_points / 4)
    throw ConfigError("oracle_spectrum: too many levels for the grid");

  OracleResult res;
  res.x_max = cfg.x_max > 0.0 ? cfg.x_max : auto_x_max(sys, v, cfg.levels);
  res.coarse_grid =
      spectrum_on_grid(sys, v, res.x_max, cfg.n_points, cfg.levels, false);
  res.fine_grid = spectrum_on_grid(sys, v, res.x_max, 2 * cfg.n_points - 1,
                                   cfg.levels, true);
  res.energies.resize(cfg.levels);
  res.error_estimates.resize(cfg.levels);
  for (int k = 0; k < cfg.levels; ++k) {
    res.energies[k] = (4.0 * res.fine_grid[k] - res.coarse_grid[k]) / 3.0;
    res.error_estimates[k] = std::abs(res.energies[k] - res.fine_grid[k]);
  }
  return res;
}

}  // namespace sturm
