#include "sturm/potentials.hpp"

#include <algorithm>
#include <cmath>

#include "sturm/errors.hpp"

namespace sturm {

namespace {

// Denominator of the exact-family shape factor, in the scaled variable
// u = 2 alpha0 x^2 / 5.
double family_denominator(double zeta, double u) {
  return std::exp(-u) + 25.0 * zeta * (u - 1.0);
}

double eval_exact_family(const ExactFamilyOrder1& p, double x) {
  const double hh = p.sys.hbar * p.sys.hbar / (2.0 * p.sys.mass);
  const double u = 2.0 * p.alpha0 * x * x / 5.0;
  const double num = std::exp(-u) + p.zeta * (u - 1.0);  // (zeta/5)(5u-5)
  const double den = family_denominator(p.zeta, u);
  const double scale =
      std::exp(-u) + std::abs(25.0 * p.zeta * (u - 1.0)) + 1e-300;
  if (std::abs(den) < 1e-14 * scale)
    throw PotentialPole("exact-family potential evaluated at a pole");
  return p.e_target - hh * p.alpha0 +
         hh * p.alpha0 * p.alpha0 * (num / den) * x * x;
}

// Symmetric truncated trapezoid rule with panel doubling, for integrands
// that decay like exp(-s x^2). The family's shape factor has complex poles
// near the real axis (in the width-scaled variable) that stall Gauss-Hermite
// node doubling at small pivots; the trapezoid rule on a smooth decaying
// integrand converges geometrically regardless.
double trapezoid_element(const std::function<double(double)>& f, double s) {
  const double x_max = std::sqrt(120.0 / s);
  std::size_t panels = 256;
  const auto pass = [&](std::size_t n) {
    const double h = 2.0 * x_max / static_cast<double>(n);
    double sum = 0.5 * (f(-x_max) + f(x_max));
    for (std::size_t i = 1; i < n; ++i)
      sum += f(-x_max + static_cast<double>(i) * h);
    return sum * h;
  };
  double prev = pass(panels);
  for (int round = 0; round < 8; ++round) {
    panels *= 2;
    const double curr = pass(panels);
    if (std::abs(curr - prev) <= 1e-11 * std::max(1.0, std::abs(curr)))
      return curr;
    prev = curr;
  }
  throw QuadratureNonConvergence(
      "exact-family element: trapezoid refinement did not converge");
}

double exact_family_element(const SturmianSlice& a, const SturmianSlice& b,
                            const ExactFamilyOrder1& p) {
  if (((a.nu + b.nu) % 2) != 0) return 0.0;  // even potential
  if (!exact_family_poles(p.alpha0, p.zeta).empty())
    throw UnsupportedPotential(
        "exact-family matrix elements are defined only for pole-free "
        "members; use the finite-difference oracle instead");
  const double s = 0.5 * (a.alpha + b.alpha);
  return trapezoid_element(
      [&](double x) {
        return eval_sturmian(a, a.nu, x) * eval_sturmian(b, b.nu, x) *
               eval_exact_family(p, x);
      },
      s);
}

double exact_family_same_width(double alpha, int ell_a, int ell_b,
                               const ExactFamilyOrder1& p) {
  if (((ell_a + ell_b) % 2) != 0) return 0.0;
  if (!exact_family_poles(p.alpha0, p.zeta).empty())
    throw UnsupportedPotential(
        "exact-family matrix elements are defined only for pole-free "
        "members; use the finite-difference oracle instead");
  const double r = std::sqrt(alpha);
  return trapezoid_element(
      [&](double x) {
        return r * hermite_function(ell_a, r * x) *
               hermite_function(ell_b, r * x) * eval_exact_family(p, x);
      },
      alpha);
}

}  // namespace

double eval(const Potential& v, double x) {
  return std::visit(
      [x](const auto& p) -> double {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, QuarticAnharmonic>)
          return 0.5 * p.k * x * x + p.eps * x * x * x * x;
        else if constexpr (std::is_same_v<T, PureQuartic>)
          return p.eps * x * x * x * x;
        else if constexpr (std::is_same_v<T, Gaussian>)
          return -p.lambda * std::exp(-0.5 * p.eps * x * x);
        else if constexpr (std::is_same_v<T, GaussianTilde>)
          return p.lambda * (1.0 - std::exp(-0.5 * p.eps * x * x));
        else if constexpr (std::is_same_v<T, ExactFamilyOrder1>)
          return eval_exact_family(p, x);
        else
          return p.f(x);
      },
      v);
}

Parity parity_of(const Potential& v) {
  if (const auto* c = std::get_if<Custom>(&v)) return c->parity;
  return Parity::even;
}

NaturalV0 natural_v0(const Potential& v) {
  return std::visit(
      [](const auto& p) -> NaturalV0 {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, QuarticAnharmonic>)
          return {p.k, 0.0};
        else if constexpr (std::is_same_v<T, PureQuartic>)
          return {1.0, 0.0};  // no harmonic term; canonical unit reference
        else if constexpr (std::is_same_v<T, Gaussian>)
          return {p.lambda * p.eps, -p.lambda};
        else if constexpr (std::is_same_v<T, GaussianTilde>)
          return {p.lambda * p.eps, 0.0};
        else if constexpr (std::is_same_v<T, ExactFamilyOrder1>) {
          // Small-x expansion: shape factor -> (1 - zeta)/(1 - 25 zeta)
          // unless the denominator vanishes at the origin.
          const double hh = p.sys.hbar * p.sys.hbar / (2.0 * p.sys.mass);
          const double d0 = 1.0 - 25.0 * p.zeta;
          if (std::abs(d0) < 1e-14)
            throw PotentialPole("exact-family potential has a pole at x = 0");
          const double shape = (1.0 - p.zeta) / d0;
          return {2.0 * hh * p.alpha0 * p.alpha0 * shape,
                  p.e_target - hh * p.alpha0};
        } else {
          throw UnsupportedPotential(
              "natural_v0: no harmonic reference for a custom potential");
        }
      },
      v);
}

Potential make_exact_family(double alpha0, double zeta, double e_target,
                            const SystemParams& sys) {
  if (alpha0 <= 0.0)
    throw ConfigError("make_exact_family: alpha0 must be positive");
  return ExactFamilyOrder1{alpha0, zeta, e_target, sys};
}

std::vector<double> exact_family_poles(double alpha0, double zeta) {
  // g(u) = exp(-u) + 25 zeta (u-1) has a zero iff zeta < 0 or 25 zeta >= 1;
  // for 0 <= 25 zeta < 1 its minimum is -25 zeta ln(25 zeta) > 0.
  std::vector<double> poles;
  if (zeta >= 0.0 && 25.0 * zeta < 1.0) return poles;
  if (std::abs(25.0 * zeta - 1.0) < 1e-14) {
    poles.push_back(0.0);
    return poles;
  }
  double lo, hi;
  if (zeta > 0.0) {
    lo = 0.0;  // g(0) = 1 - 25 zeta < 0, g increasing, g(1) = e^{-1} > 0
    hi = 1.0;
  } else {
    lo = 1.0;  // g strictly decreasing, g(1) = e^{-1} > 0
    hi = 2.0;
    while (family_denominator(zeta, hi) > 0.0) hi *= 2.0;
  }
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double g = family_denominator(zeta, mid);
    if ((zeta > 0.0) == (g < 0.0))
      lo = mid;
    else
      hi = mid;
  }
  const double u = 0.5 * (lo + hi);
  poles.push_back(std::sqrt(2.5 * u / alpha0));
  return poles;
}

double matrix_element(const SturmianSlice& a, const SturmianSlice& b,
                      const Potential& v) {
  return std::visit(
      [&](const auto& p) -> double {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, QuarticAnharmonic>) {
          return potential_element(
              a, b,
              [&p](double x) { return 0.5 * p.k * x * x + p.eps * x * x * x * x; },
              Parity::even);
        } else if constexpr (std::is_same_v<T, PureQuartic>) {
          return potential_element(
              a, b, [&p](double x) { return p.eps * x * x * x * x; },
              Parity::even);
        } else if constexpr (std::is_same_v<T, Gaussian>) {
          // The well's Gaussian joins the weight; what remains is -lambda.
          return potential_element(
              a, b, [&p](double) { return -p.lambda; }, Parity::even,
              0.5 * p.eps);
        } else if constexpr (std::is_same_v<T, GaussianTilde>) {
          return p.lambda * cross_overlap(a, b) +
                 matrix_element(a, b, Potential(Gaussian{p.lambda, p.eps}));
        } else if constexpr (std::is_same_v<T, ExactFamilyOrder1>) {
          return exact_family_element(a, b, p);
        } else if constexpr (std::is_same_v<T, Custom>) {
          return potential_element(a, b, p.f, p.parity);
        } else {
          const Potential& self = v;
          return potential_element(
              a, b, [&self](double x) { return eval(self, x); },
              Parity::even);
        }
      },
      v);
}

double same_width_matrix_element(double alpha, int ell_a, int ell_b,
                                 const Potential& v) {
  return std::visit(
      [&](const auto& p) -> double {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, QuarticAnharmonic>) {
          return same_width_element(
              alpha, ell_a, ell_b,
              [&p](double x) { return 0.5 * p.k * x * x + p.eps * x * x * x * x; },
              Parity::even);
        } else if constexpr (std::is_same_v<T, PureQuartic>) {
          return same_width_element(
              alpha, ell_a, ell_b,
              [&p](double x) { return p.eps * x * x * x * x; }, Parity::even);
        } else if constexpr (std::is_same_v<T, Gaussian>) {
          return same_width_element(
              alpha, ell_a, ell_b, [&p](double) { return -p.lambda; },
              Parity::even, 0.5 * p.eps);
        } else if constexpr (std::is_same_v<T, GaussianTilde>) {
          const double plateau = (ell_a == ell_b) ? p.lambda : 0.0;
          return plateau + same_width_matrix_element(
                               alpha, ell_a, ell_b,
                               Potential(Gaussian{p.lambda, p.eps}));
        } else if constexpr (std::is_same_v<T, ExactFamilyOrder1>) {
          return exact_family_same_width(alpha, ell_a, ell_b, p);
        } else if constexpr (std::is_same_v<T, Custom>) {
          return same_width_element(alpha, ell_a, ell_b, p.f, p.parity);
        } else {
          const Potential& self = v;
          return same_width_element(
              alpha, ell_a, ell_b,
              [&self](double x) { return eval(self, x); }, Parity::even);
        }
      },
      v);
}

}  // namespace sturm
