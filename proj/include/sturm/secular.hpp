#pragma once

#include <Eigen/Dense>

#include <vector>

#include "sturm/params.hpp"
#include "sturm/potentials.hpp"

namespace sturm {

// Matrix data of the truncated expansion over Sturmians {phi_n : n in
// indices}, all at the same pivot script_e:
//   T = I + t_offdiag          (overlaps; Sturmians are unit-normalized)
//   W = diag(v_diag) + w_offdiag  (potential matrix)
//   S = W - (script_e/2) I        (using beta_n N_n = script_e/2)
// The secular equation is det[(E - script_e) T - S] = 0.
struct SecularSystem {
  std::vector<int> indices;   // ascending
  double script_e = 0.0;
  Eigen::MatrixXd t_offdiag;  // symmetric, zero diagonal
  Eigen::VectorXd v_diag;
  Eigen::MatrixXd w_offdiag;  // symmetric, zero diagonal
  // Products beta_nu <phi_nu|V0|phi_nu> per retained index; by construction
  // every entry equals script_e/2 (tested, not assumed).
  Eigen::VectorXd n_terms;

  int size() const { return static_cast<int>(indices.size()); }
};

struct CandidateEnergies {
  std::vector<double> roots;  // ascending
  // Expansion coefficients per root, Euclidean-normalized with the first
  // component above 1e-12 in magnitude made positive.
  std::vector<Eigen::VectorXd> coefficients;
};

SecularSystem build_system(const SystemParams& sys, double k0,
                           const std::vector<int>& indices, double script_e,
                           const Potential& v);

// One-term system: E = v + script_e/2.
CandidateEnergies solve_order0(const SecularSystem& s);

// Two-term system, closed-form quadratic
//   A y^2 + B y + C = 0,  y = E - script_e/2,
//   A = 1 - t^2, B = t(t script_e + 2w) - (v1 + v2),
//   C = v1 v2 - (t script_e/2 + w)^2.
CandidateEnergies solve_order1(const SecularSystem& s);

// Three-term system, closed-form cubic
//   A y^3 + B y^2 + C y + D = 0,  y = E - script_e/2,  xi_l = t_l script_e/2 + w_l,
// with the coefficients written out in solve_order2's implementation;
// solved in trigonometric form.
CandidateEnergies solve_order2(const SecularSystem& s);

// Any size: generalized symmetric eigenproblem G c = mu T c with
// G = W + (script_e/2)(T - I); E = script_e/2 + mu. Serves as the
// self-oracle for the closed forms.
CandidateEnergies solve_pencil(const SecularSystem& s);

// || [(E - script_e) T - S] c ||_2 for a claimed eigenpair.
double residual(const SecularSystem& s, double energy,
                const Eigen::VectorXd& c);

}  // namespace sturm
