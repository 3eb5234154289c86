#include "sturm/basis.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include "sturm/errors.hpp"

namespace sturm {

namespace {
constexpr double kPiQuarterInv = 0.7511255444649425;  // pi^{-1/4}
constexpr std::size_t kMaxNodes = 512;
constexpr double kDoublingTol = 1e-10;
}  // namespace

SturmianSlice make_slice(const SystemParams& sys, double k0, int nu,
                         double script_e) {
  if (k0 <= 0.0) throw ConfigError("make_slice: k0 must be positive");
  if (nu < 0) throw ConfigError("make_slice: nu must be non-negative");
  if (script_e <= 0.0)
    throw ConfigError("make_slice: script_e must be positive");
  SturmianSlice s;
  s.sys = sys;
  s.nu = nu;
  s.script_e = script_e;
  s.k0 = k0;
  const double n2 = 2.0 * nu + 1.0;
  s.omega = 2.0 * script_e / (sys.hbar * n2);
  s.alpha = sys.mass * s.omega / sys.hbar;
  s.beta = sys.mass * s.omega * s.omega / k0;
  return s;
}

// Golub-Welsch: nodes are eigenvalues of the Jacobi matrix (zero diagonal,
// off-diagonal sqrt(k/2)); weights are sqrt(pi) times the squared first
// components of the eigenvectors.
const QuadratureRule& gauss_hermite(std::size_t n) {
  if (n == 0) throw ConfigError("gauss_hermite: need at least one node");
  static std::map<std::size_t, QuadratureRule> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  Eigen::VectorXd diag = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
  Eigen::VectorXd sub(static_cast<Eigen::Index>(n > 1 ? n - 1 : 1));
  for (std::size_t k = 1; k < n; ++k)
    sub(static_cast<Eigen::Index>(k - 1)) = std::sqrt(0.5 * k);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, n > 1 ? sub : Eigen::VectorXd(),
                                Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw Error("gauss_hermite: tridiagonal eigensolver failed");

  // Weights by the derivative identity w_i = 1 / (n h_{n-1}(t_i)^2),
  // evaluated as exp(-t^2) / (n q_{n-1}(t)^2) through the Hermite
  // *functions*: eigenvector first components lose all relative accuracy
  // at extreme nodes (their true size dips below the solver's absolute
  // error), while this form stays correct down to genuine underflow.
  QuadratureRule rule;
  rule.exponent_scale = 1.0;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = solver.eigenvalues()(static_cast<Eigen::Index>(i));
    rule.nodes[i] = t;
    const double q = hermite_function(static_cast<int>(n) - 1, t);
    rule.weights[i] =
        std::exp(-t * t) / (static_cast<double>(n) * q * q);
  }
  return cache.emplace(n, std::move(rule)).first->second;
}

QuadratureRule scaled_gauss_hermite(std::size_t n, double s) {
  if (s <= 0.0)
    throw ConfigError("scaled_gauss_hermite: exponent scale must be positive");
  const QuadratureRule& unit = gauss_hermite(n);
  QuadratureRule rule;
  rule.exponent_scale = s;
  const double inv_sqrt_s = 1.0 / std::sqrt(s);
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    rule.nodes[i] = unit.nodes[i] * inv_sqrt_s;
    rule.weights[i] = unit.weights[i] * inv_sqrt_s;
  }
  return rule;
}

double hermite_orthonormal(int k, double t) {
  if (k < 0) throw ConfigError("hermite_orthonormal: negative index");
  double qm = kPiQuarterInv;  // h_0
  if (k == 0) return qm;
  double q = t * std::sqrt(2.0) * kPiQuarterInv;  // h_1
  for (int j = 1; j < k; ++j) {
    const double qp =
        t * std::sqrt(2.0 / (j + 1.0)) * q - std::sqrt(j / (j + 1.0)) * qm;
    qm = q;
    q = qp;
  }
  return q;
}

double hermite_function(int k, double t) {
  if (k < 0) throw ConfigError("hermite_function: negative index");
  const double gauss = std::exp(-0.5 * t * t);
  double qm = kPiQuarterInv * gauss;  // q_0
  if (k == 0) return qm;
  double q = t * std::sqrt(2.0) * qm;  // q_1
  for (int j = 1; j < k; ++j) {
    const double qp =
        t * std::sqrt(2.0 / (j + 1.0)) * q - std::sqrt(j / (j + 1.0)) * qm;
    qm = q;
    q = qp;
  }
  return q;
}

double eval_sturmian(const SturmianSlice& slice, int ell, double x) {
  const double root_alpha = std::sqrt(slice.alpha);
  return std::sqrt(root_alpha) * hermite_function(ell, root_alpha * x);
}

// <n|x^2|l> = (n+1/2)/alpha for l = n and sqrt((n+1)(n+2))/(2 alpha) for
// l = n+2 (n the smaller index); zero otherwise.
double x2_element(const SturmianSlice& slice, int ell) {
  if (ell < 0) throw ConfigError("x2_element: negative index");
  const int n = std::min(slice.nu, ell);
  const int gap = std::abs(slice.nu - ell);
  const double a = slice.alpha;
  if (gap == 0) return (n + 0.5) / a;
  if (gap == 2) return std::sqrt((n + 1.0) * (n + 2.0)) / (2.0 * a);
  return 0.0;
}

// <n|x^4|l>: 3(2n^2+2n+1)/(4 alpha^2) for l = n,
// (2n+3) sqrt((n+1)(n+2))/(2 alpha^2) for l = n+2,
// sqrt((n+1)(n+2)(n+3)(n+4))/(4 alpha^2) for l = n+4 (n the smaller index).
double x4_element(const SturmianSlice& slice, int ell) {
  if (ell < 0) throw ConfigError("x4_element: negative index");
  const int n = std::min(slice.nu, ell);
  const int gap = std::abs(slice.nu - ell);
  const double a2 = slice.alpha * slice.alpha;
  if (gap == 0) return 3.0 * (2.0 * n * n + 2.0 * n + 1.0) / (4.0 * a2);
  if (gap == 2)
    return (2.0 * n + 3.0) * std::sqrt((n + 1.0) * (n + 2.0)) / (2.0 * a2);
  if (gap == 4)
    return std::sqrt((n + 1.0) * (n + 2.0) * (n + 3.0) * (n + 4.0)) /
           (4.0 * a2);
  return 0.0;
}

namespace {

// One fixed-size pass of the absorbed-Gaussian quadrature.
double element_pass(const SturmianSlice& a, const SturmianSlice& b,
                    const std::function<double(double)>& v,
                    double extra_exponent, std::size_t n_nodes) {
  const double s = 0.5 * (a.alpha + b.alpha) + extra_exponent;
  const double prefactor = std::pow(a.alpha * b.alpha, 0.25);
  const double ra = std::sqrt(a.alpha);
  const double rb = std::sqrt(b.alpha);
  const QuadratureRule& rule = gauss_hermite(n_nodes);
  const double inv_sqrt_s = 1.0 / std::sqrt(s);
  double sum = 0.0;
  for (std::size_t i = 0; i < n_nodes; ++i) {
    const double x = rule.nodes[i] * inv_sqrt_s;
    const double val = hermite_orthonormal(a.nu, ra * x) *
                       hermite_orthonormal(b.nu, rb * x) * v(x);
    sum += rule.weights[i] * val;
  }
  return prefactor * inv_sqrt_s * sum;
}

}  // namespace

namespace {

// Parity shortcut plus node-doubling loop shared by the element entry points.
double converged_element(const SturmianSlice& a, const SturmianSlice& b,
                         const std::function<double(double)>& v,
                         Parity parity, double extra_exponent) {
  const bool sum_odd = ((a.nu + b.nu) % 2) != 0;
  if (parity == Parity::even && sum_odd) return 0.0;
  if (parity == Parity::odd && !sum_odd) return 0.0;

  std::size_t n = static_cast<std::size_t>(a.nu + b.nu) + 8;
  if (n > kMaxNodes)
    throw QuadratureNonConvergence(
        "potential_element: initial node count exceeds the 512-node cap");
  double prev = element_pass(a, b, v, extra_exponent, n);
  while (2 * n <= kMaxNodes) {
    n *= 2;
    const double curr = element_pass(a, b, v, extra_exponent, n);
    if (std::abs(curr - prev) <=
        kDoublingTol * std::max(1.0, std::abs(curr)))
      return curr;
    prev = curr;
  }
  throw QuadratureNonConvergence(
      "potential_element: node doubling did not reach 1e-10 relative "
      "agreement before the 512-node cap");
}

}  // namespace

double potential_element(const SturmianSlice& a, const SturmianSlice& b,
                         const std::function<double(double)>& v,
                         Parity parity, double extra_exponent) {
  return converged_element(a, b, v, parity, extra_exponent);
}

double same_width_element(double alpha, int ell_a, int ell_b,
                          const std::function<double(double)>& v,
                          Parity parity, double extra_exponent) {
  if (alpha <= 0.0)
    throw ConfigError("same_width_element: alpha must be positive");
  if (ell_a < 0 || ell_b < 0)
    throw ConfigError("same_width_element: negative index");
  SturmianSlice a, b;  // the quadrature core reads only nu and alpha
  a.nu = ell_a;
  a.alpha = alpha;
  b.nu = ell_b;
  b.alpha = alpha;
  return converged_element(a, b, v, parity, extra_exponent);
}

double cross_overlap(const SturmianSlice& a, const SturmianSlice& b) {
  return potential_element(a, b, [](double) { return 1.0; }, Parity::even);
}

}  // namespace sturm
