#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace sturm {

// Base class for all failures the library reports deliberately.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Quadrature node-doubling did not reach the requested relative agreement
// before hitting the node cap.
struct QuadratureNonConvergence : Error {
  using Error::Error;
};

// Order-1 secular equation with |t| so close to 1 that the quadratic's
// leading coefficient 1 - t^2 is numerically zero.
struct DegenerateOverlap : Error {
  using Error::Error;
};

// Secular polynomial acquired complex roots (non-physical input or a
// numerically broken overlap matrix).
struct ComplexRoots : Error {
  using Error::Error;
};

// Order-2 overlap matrix T with det T below threshold.
struct NearSingularOverlap : Error {
  using Error::Error;
};

// A stationary point of a branch with a positive second difference.
struct BranchMinimum {
  int branch = 0;        // root index within the candidate list, ascending
  double script_e = 0.0; // minimizing pivot energy
  double energy = 0.0;   // branch energy at the minimum
};

// A branch of E(script_e) has no interior minimum at positive script_e.
struct NoPositiveMinimum : Error {
  using Error::Error;
};

// A branch of E(script_e) has several interior minima; callers must opt in
// to a selection policy explicitly. All candidates ride along.
struct MultipleMinima : Error {
  MultipleMinima(const std::string& what, std::vector<BranchMinimum> cands)
      : Error(what), candidates(std::move(cands)) {}
  std::vector<BranchMinimum> candidates;
};

// Self-consistent equation script_e = 2 W(script_e) has no positive root.
struct NoFixedPoint : Error {
  using Error::Error;
};

// General order-0 self-consistency has no positive solution.
struct NoPositiveSolution : Error {
  using Error::Error;
};

// Finite-difference eigenfunction has non-negligible amplitude at the box
// boundary; the box is too small for the requested level.
struct BoundaryLeak : Error {
  using Error::Error;
};

// Potential evaluated at (or across) a pole of its defining expression.
struct PotentialPole : Error {
  using Error::Error;
};

// Operation not defined for this potential type.
struct UnsupportedPotential : Error {
  using Error::Error;
};

// Bad run configuration (CLI or programmatic).
struct ConfigError : Error {
  using Error::Error;
};

}  // namespace sturm
