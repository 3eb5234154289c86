#pragma once

#include <Eigen/Core>

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sturm/errors.hpp"
#include "sturm/params.hpp"
#include "sturm/potentials.hpp"

namespace sturm {

enum class MethodTag {
  closed_form_cubic,
  closed_form_quartic_eta,
  numeric_minimize,
};

// Policy for the numeric minimizer when one branch has several local minima:
// strict surfaces MultipleMinima with every candidate attached; the
// benchmark-table paths opt into smallest_script_e, which keeps the minimum
// with the smallest pivot energy and records that choice in the diagnostics.
enum class MinimaPolicy { strict, smallest_script_e };

// Coefficients of the order-0 stationarity cubic
//   script_e^3 - p_n script_e - q_n = 0,
// the discriminant ratio r_n = 4 p_n^3 / (27 q_n^2), and the angle
// phi_n = arccos(1/sqrt(r_n)) of the trigonometric root (meaningful for
// r_n >= 1; for r_n < 1 phi_n is 0 and cos_phi_third records the real
// hyperbolic multiplier of the cosh-form root instead).
struct CubicParams {
  double p_n = 0.0;  // energy^2
  double q_n = 0.0;  // energy^3
  double r_n = 0.0;  // dimensionless
  double phi_n = 0.0;
  double cos_phi_third = 0.0;
};

struct Diagnostics {
  std::vector<BranchMinimum> minima;  // every local minimum on the branch
  int grid_brackets = 0;
  int refine_iterations = 0;
  double stationarity = 0.0;       // centered-difference dE/d(script_e)
  double second_difference = 0.0;  // positive at a minimum
  double residual = 0.0;           // defining-equation residual (closed forms)
  std::string note;
};

struct EnergySolution {
  int order = 0;
  std::vector<int> indices;
  double script_e_star = 0.0;
  std::map<int, double> energies;               // level index -> E
  std::map<int, Eigen::VectorXd> coefficients;  // level index -> C
  MethodTag method_tag = MethodTag::numeric_minimize;
  Diagnostics diagnostics;
  std::optional<CubicParams> cubic;  // polynomial order-0 closed forms
};

// Unique positive root of x^3 - p x - q = 0 for p >= 0, q > 0: trigonometric
// form for r = 4p^3/27q^2 >= 1, cosh form for r < 1, plain cube root at p = 0.
double positive_cubic_root(double p, double q);

CubicParams qao_cubic_params(const SystemParams& sys, double k, double eps,
                             int n);
CubicParams quartic_cubic_params(const SystemParams& sys, double eps, int n);

// Level-n energy of V = (k/2)x^2 + eps x^4 from the order-0 closed-form
// pivot: script_e_star solves the stationarity cubic, the energy is the
// diagonal expectation <n|V|n> at width alpha_n(script_e_star) plus
// script_e_star/2.
EnergySolution solve_qao_order0(const SystemParams& sys, double k, double eps,
                                int n);

// k = 0 limit of the above: script_e_star = q_n^{1/3} and
// E_n = (script_e_star/2)(17n^2+15n+7)/(11n^2+9n+4).
EnergySolution solve_quartic_order0(const SystemParams& sys, double eps,
                                    int n);

// Root > 1 of eta^4 - eta^3 = r. The closed form is evaluated through the
// identity 1 - a + b = D^3/2 with D the real root of D^3 + 3 zeta D = 2,
// computed by rationalization (cancellation-free for all r); the literal
// nested-radical form and the bisection oracle are exposed for tests.
double eta_star_closed_form(double r);
double eta_star_naive_closed_form(double r);
double eta_star_bisection(double r);

// Ground state of V = -lambda exp(-eps x^2/2) at order 0: with
// p = hbar^2 eps/(4m) and r = (lambda/p)^2, script_e_star = p(eta_star - 1)
// and E_0 = -lambda [sqrt(1 - 1/eta_star) + (1 - eta_star)/(2 sqrt(r))].
EnergySolution solve_gaussian_ground_order0(const SystemParams& sys,
                                            double lambda, double eps);

// Exposed pieces of the Gaussian solution for tests and reporting.
struct GaussianEtaDetail {
  double p = 0.0;
  double r = 0.0;
  double eta_star = 0.0;
  double script_e_star = 0.0;
  double w_diag = 0.0;  // <0|V~|0> = lambda (1 - sqrt(1 - 1/eta_star))
  double energy = 0.0;
};
GaussianEtaDetail gaussian_eta_detail(const SystemParams& sys, double lambda,
                                      double eps);

// Numeric variational pivot for truncations of order 1 or 2: scans a
// 400-point logarithmic grid over [1e-3, 1e3] * hbar sqrt(k0/m)(n_max+1/2),
// brackets sign changes of the centered-difference dE/d(script_e)
// (step 1e-6 * script_e), refines each bracket by golden section to
// |delta script_e| / script_e < 1e-10, and minimizes the selected branch
// independently of the others. All minima found are recorded in the
// diagnostics. Raises NoPositiveMinimum when the branch has no interior
// minimum and MultipleMinima (under the strict policy) when it has several.
EnergySolution minimize_script_e(const SystemParams& sys, double k0,
                                 const std::vector<int>& indices,
                                 const Potential& v, int order, int branch,
                                 MinimaPolicy policy = MinimaPolicy::strict);

// Self-consistent order-0 pivot:
//   script_e = sqrt((n+1)(n+2)) <n|V|n+2> - sqrt(n(n-1)) <n|V|n-2>,
// the elements taken at width alpha_n(script_e). Polynomial wells use the
// same closed-form element expansion as the order-0 solvers above (so the
// result matches their script_e_star); all other potentials use quadrature
// elements. Damped fixed-point iteration with a bisection fallback, to
// relative 1e-12.
double fix_script_e_order0_general(const SystemParams& sys, double k0, int n,
                                   const Potential& v);

}  // namespace sturm
