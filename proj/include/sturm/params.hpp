#pragma once

namespace sturm {

// Physical constants of the one-dimensional Schroedinger problem
//   H = p^2/(2m) + V(x).
// Defaults follow the common convention hbar = 1, m = 1/2 (so that
// H = -d^2/dx^2 + V and the harmonic levels of (k/2)x^2 are sqrt(2k)(n+1/2)/sqrt(2m)).
struct SystemParams {
  double hbar = 1.0;
  double mass = 0.5;
};

constexpr SystemParams default_units() { return SystemParams{1.0, 0.5}; }

}  // namespace sturm
