#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "sturm/params.hpp"

namespace sturm {

// Harmonic-oscillator Sturmian of index nu at pivot energy script_e:
// the normalized solution of (H0 + beta_nu V0)|phi_nu> = script_e |phi_nu>
// with H0 = p^2/(2m) and V0 = (k0/2) x^2. It is the nu-th eigenfunction of
// an oscillator whose frequency is tuned so its (nu+1/2)-level sits at
// script_e:
//   omega_nu = 2 script_e / (hbar (2nu+1)),
//   alpha_nu = m omega_nu / hbar = 2 m script_e / (hbar^2 (2nu+1)),
//   beta_nu  = m omega_nu^2 / k0 = 4 m script_e^2 / (hbar^2 k0 (2nu+1)^2).
struct SturmianSlice {
  SystemParams sys;
  int nu = 0;
  double script_e = 1.0;
  double k0 = 1.0;
  double omega = 0.0;
  double alpha = 0.0;  // inverse-length^2 width parameter
  double beta = 0.0;
};

SturmianSlice make_slice(const SystemParams& sys, double k0, int nu,
                         double script_e);

// Gauss-Hermite rule: integrates f against exp(-exponent_scale * x^2).
struct QuadratureRule {
  std::vector<double> nodes;    // ascending
  std::vector<double> weights;
  double exponent_scale = 1.0;
};

// n-node rule for weight exp(-t^2), computed by Golub-Welsch from the
// symmetric tridiagonal Jacobi matrix and cached immutably per node count.
const QuadratureRule& gauss_hermite(std::size_t n);

// Same rule rescaled to weight exp(-s x^2): x = t/sqrt(s), w -> w/sqrt(s).
QuadratureRule scaled_gauss_hermite(std::size_t n, double s);

// Orthonormal Hermite polynomial h_k(t) (positive leading coefficient,
// orthonormal for weight exp(-t^2)) and the Hermite function
// q_k(t) = h_k(t) exp(-t^2/2), both by stable upward recurrence.
double hermite_orthonormal(int k, double t);
double hermite_function(int k, double t);

// phi_nu evaluated at x: the ell-th orthonormal eigenfunction of the
// width-alpha oscillator attached to the slice (ell defaults to slice.nu
// at call sites that evaluate the Sturmian itself).
double eval_sturmian(const SturmianSlice& slice, int ell, double x);

// <nu| x^2 |ell> and <nu| x^4 |ell> within the slice's own width
// (closed forms; zero unless |nu - ell| is 0, 2 for x^2, or 0, 2, 4 for x^4).
double x2_element(const SturmianSlice& slice, int ell);
double x4_element(const SturmianSlice& slice, int ell);

// <phi_a|phi_b> between slices of different widths (exact Gauss-Hermite).
double cross_overlap(const SturmianSlice& a, const SturmianSlice& b);

enum class Parity { even, odd, none };

// <phi_a| v |phi_b> by adaptive Gauss-Hermite quadrature. The Gaussian
// factors of both Sturmians are absorbed into the weight exactly;
// extra_exponent adds a further exp(-extra_exponent x^2) factor that the
// integrand carries (so Gaussian wells integrate a plain polynomial).
// Node count starts at nu_a + nu_b + 8 and doubles until two successive
// rules agree to 1e-10 relative, capped at 512 nodes.
double potential_element(const SturmianSlice& a, const SturmianSlice& b,
                         const std::function<double(double)>& v,
                         Parity parity = Parity::none,
                         double extra_exponent = 0.0);

// <ell_a| v |ell_b> between two orthonormal oscillator functions of the
// same width alpha (the same adaptive quadrature as potential_element).
double same_width_element(double alpha, int ell_a, int ell_b,
                          const std::function<double(double)>& v,
                          Parity parity = Parity::none,
                          double extra_exponent = 0.0);

}  // namespace sturm
