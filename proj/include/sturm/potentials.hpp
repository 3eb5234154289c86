#pragma once

#include <functional>
#include <variant>
#include <vector>

#include "sturm/basis.hpp"
#include "sturm/params.hpp"

namespace sturm {

// V(x) = (k/2) x^2 + eps x^4
struct QuarticAnharmonic {
  double k = 1.0;
  double eps = 0.0;
};

// V(x) = eps x^4
struct PureQuartic {
  double eps = 1.0;
};

// V(x) = -lambda exp(-eps x^2 / 2)
struct Gaussian {
  double lambda = 1.0;
  double eps = 1.0;
};

// V(x) = lambda (1 - exp(-eps x^2 / 2)); shifted Gaussian well, vanishing
// at the origin and confining to the plateau lambda.
struct GaussianTilde {
  double lambda = 1.0;
  double eps = 1.0;
};

// The family of potentials for which the two-term {0,2} expansion at pivot
// width alpha0 is exact with eigenvalue e_target:
//   V(x) = E - hbar^2 alpha0/(2m)
//        + (hbar^2 alpha0^2/(2m)) * x^2 *
//          [exp(-u) + (zeta/5)(5u - 5)] / [exp(-u) + 5 zeta (5u - 5)],
//   u = 2 alpha0 x^2 / 5.
// The denominator has zeros (poles of V) iff zeta < 0 or 25 zeta >= 1;
// the poles coincide with nodes of the exact eigenfunction.
struct ExactFamilyOrder1 {
  double alpha0 = 1.0;
  double zeta = 0.0;
  double e_target = 1.0;
  SystemParams sys;
};

// User-supplied potential with declared parity (used for quadrature
// shortcuts; declare none when unsure).
struct Custom {
  std::function<double(double)> f;
  Parity parity = Parity::none;
};

using Potential = std::variant<QuarticAnharmonic, PureQuartic, Gaussian,
                               GaussianTilde, ExactFamilyOrder1, Custom>;

// Pointwise evaluation; throws PotentialPole when an ExactFamilyOrder1
// denominator vanishes at x (detected at runtime, not by a zeta-sign test).
double eval(const Potential& v, double x);

Parity parity_of(const Potential& v);

// Harmonic reference read off the small-x expansion V ~ e_shift + (k0/2)x^2.
struct NaturalV0 {
  double k0 = 0.0;
  double e_shift = 0.0;
};

// QuarticAnharmonic -> (k, 0); PureQuartic -> (1, 0) by canonical choice
// (no harmonic term exists; unit reference); Gaussian -> (lambda eps, -lambda);
// GaussianTilde -> (lambda eps, 0). Custom -> UnsupportedPotential.
NaturalV0 natural_v0(const Potential& v);

Potential make_exact_family(double alpha0, double zeta, double e_target,
                            const SystemParams& sys);

// Zeros of the exact-family denominator at positive x (empty when
// 0 <= zeta < 1/25); poles come in symmetric pairs +-x.
std::vector<double> exact_family_poles(double alpha0, double zeta);

// <phi_a| V |phi_b> dispatched on the potential type: polynomial wells go
// through exact absorbed-Gaussian quadrature, Gaussian wells absorb their
// exponent into the weight, GaussianTilde splits into plateau * overlap
// minus the well part.
double matrix_element(const SturmianSlice& a, const SturmianSlice& b,
                      const Potential& v);

// <ell_a| V |ell_b> with both oscillator functions at the same width alpha
// (same per-type dispatch as matrix_element).
double same_width_matrix_element(double alpha, int ell_a, int ell_b,
                                 const Potential& v);

}  // namespace sturm
