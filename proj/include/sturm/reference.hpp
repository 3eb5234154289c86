#pragma once

#include <array>
#include <cmath>

// Stored reference values for the benchmark tables reproduced by the `table`
// command and the acceptance suite.  All energies are in the natural units
// hbar = 1, m = 1/2; the anharmonic rows use V = x^2 + 0.1 x^4 (k = 2,
// eps = 0.1) and the quartic rows V = x^4 (eps = 1).
//
// A handful of stored cells differ from commonly circulated versions of
// these tables, which contain typographical slips (a corrupted first-order
// energy at n = 1, a row-slipped reference energy, and four mis-rounded
// deviation entries).  Each such cell is stored here with the value the
// table's own internal consistency pins down; the affected entries are
// marked "corrected" below.

namespace sturm::reference {

inline constexpr double kNoValue = -1.0;  // placeholder for untabulated cells

inline constexpr double kHbar = 1.0;
inline constexpr double kMass = 0.5;
inline constexpr double kQaoK = 2.0;        // V = x^2 + 0.1 x^4
inline constexpr double kQaoEps = 0.1;
inline constexpr double kQuarticEps = 1.0;  // V = x^4

// --- Table 1: anharmonic oscillator, order-0 variational vs. baselines ----
// Columns: finite-difference reference E#, order-0 variational energy and
// relative deviation, conventional (fixed-width) approximation, zeroth- and
// first-order perturbation theory.  delta = |E - E#| / E#.

struct AnharmonicRow {
  int n;
  double e_sharp;
  double vsa0, d_vsa0;
  double csa, d_csa;  // kNoValue above n = 4
  double pt0, d_pt0;
  double pt1, d_pt1;
};

inline constexpr std::array<AnharmonicRow, 10> kTable1{{
    {0, 1.065286, 1.06692, 1.5e-3, 1.07500, 9.1e-3, 1.000, 0.061, 1.075, 9.1e-3},
    // n=1 pt1/d_pt0/d_pt1 corrected (3.450/0.032/0.043 are corrupt cells):
    {1, 3.306872, 3.31182, 1.5e-3, 3.37500, 0.021, 3.000, 0.093, 3.375, 0.021},
    // n=2 d_vsa0 corrected (4.5e-4 printed is a double rounding of
    // 0.002557/5.747959 = 4.4e-4) and d_csa corrected (0.040 printed;
    // 0.227041/5.747959 = 0.039 at 2 s.f.):
    {2, 5.747959, 5.75052, 4.4e-4, 5.97500, 0.039, 5.000, 0.13, 5.975, 0.039},
    {3, 8.352678, 8.34985, 3.4e-4, 8.87500, 0.063, 7.000, 0.16, 8.875, 0.063},
    {4, 11.09860, 11.0881, 9.5e-4, 12.0750, 0.088, 9.000, 0.19, 12.08, 0.088},
    {5, 13.96993, 13.9499, 1.4e-3, kNoValue, kNoValue, 11.00, 0.21, 15.58, 0.11},
    {6, 16.95479, 16.9235, 1.8e-3, kNoValue, kNoValue, 13.00, 0.23, 19.38, 0.14},
    {7, 20.04386, 19.9998, 2.2e-3, kNoValue, kNoValue, 15.00, 0.25, 23.48, 0.17},
    {8, 23.22955, 23.1715, 2.5e-3, kNoValue, kNoValue, 17.00, 0.27, 27.88, 0.20},
    {9, 26.50555, 26.4322, 2.8e-3, kNoValue, kNoValue, 19.00, 0.28, 32.58, 0.23},
}};

// --- Table 2: anharmonic oscillator, order-1 (two-state) sets -------------

struct Order1Row {
  int i0, i1;         // index set {i0, i1}
  double e_lo, d_lo;  // stored energy and deviation for level i0
  double e_hi, d_hi;  // stored energy and deviation for level i1
};

inline constexpr std::array<Order1Row, 4> kTable2{{
    {0, 2, 1.06614, 8.0e-4, 5.76117, 2.3e-3},
    {1, 3, 3.30922, 7.1e-4, 8.37284, 2.4e-3},
    {2, 4, 5.74558, 4.1e-4, 9.66370, 0.13},
    {0, 4, 1.06620, 8.6e-4, 9.64502, 0.13},
}};

// --- Table 3: anharmonic oscillator, order-2 set {0, 2, 4} ----------------

struct Order2Row {
  int n;
  double e_sharp;
  double e, d;
};

inline constexpr std::array<Order2Row, 3> kTable3{{
    {0, 1.065286, 1.06613, 7.9e-4},
    // n=2 e_sharp corrected (5.75052 printed is a row slip; the row's own
    // delta = 8.3e-4 was computed against 5.747959):
    {2, 5.747959, 5.75275, 8.3e-4},
    {4, 11.09860, 9.68483, 0.127},
}};

// --- Table 4: pure quartic oscillator, order-0 variational vs. WKB --------
// wkb1 is a stored next-order reference column (not computed here).

struct QuarticRow {
  int n;
  double e_sharp;  // kNoValue where untabulated (n = 1, 3)
  double vsa0, d_vsa0;
  double wkb0, d_wkb0;
  double wkb1, d_wkb1;
};

inline constexpr std::array<QuarticRow, 9> kTable4{{
    // n=0 d_wkb0 corrected (0.17 printed is a truncation of 0.182):
    {0, 1.060362, 1.10243, 0.040, 0.87, 0.18, 0.98, 0.076},
    {1, kNoValue, 3.86929, kNoValue, kNoValue, kNoValue, kNoValue, kNoValue},
    {2, 7.455697, 7.46048, 6.4e-4, 7.4140, 5.6e-3, 7.4558, 1.4e-5},
    {3, kNoValue, 11.6007, kNoValue, kNoValue, kNoValue, kNoValue, kNoValue},
    {4, 16.261826, 16.1691, 5.7e-3, 16.233615, 1.7e-3, 16.261937, 6.8e-6},
    // n=6 d_wkb1 corrected (1.9e-5 printed; the row itself gives 1.6e-6):
    {6, 26.528471, 26.3349, 7.3e-3, 26.506336, 8.3e-4, 26.528513, 1.6e-6},
    {8, 37.923001, 37.6218, 7.9e-3, 37.904472, 4.9e-4, 37.923021, 5.3e-7},
    // n=10 d_wkb0 corrected (3.1e-4 printed; 0.016103/50.256255 = 3.2e-4):
    {10, 50.256255, 49.8404, 8.3e-3, 50.240152, 3.2e-4, 50.256266, 2.2e-7},
    {16, 91.79806, 91.0012, 8.7e-3, kNoValue, kNoValue, kNoValue, kNoValue},
}};

// --- Table 5: pure quartic oscillator, order-1 and order-2 sets -----------

struct QuarticMultiRow {
  int order;                   // 1 = two-state set, 2 = three-state set
  std::array<int, 3> indices;  // trailing -1 entries are padding
  std::array<double, 3> e;     // stored energy per index (kNoValue padding)
  std::array<double, 3> d;     // stored deviation vs. the Table 4 e_sharp
};

inline constexpr std::array<QuarticMultiRow, 4> kTable5{{
    {1, {0, 2, -1}, {1.08110, 7.60884, kNoValue}, {0.0196, 0.0205, kNoValue}},
    {1, {2, 4, -1}, {7.42669, 16.4461, kNoValue}, {3.89e-3, 0.0113, kNoValue}},
    // {0,4} d[1] corrected (9.12e-3 printed; 0.149574/16.261826 = 9.20e-3):
    {1, {0, 4, -1}, {1.08166, 16.4114, kNoValue}, {0.0200, 9.20e-3, kNoValue}},
    // order-2 e[0] corrected (1.08010 printed transposes 1.08100; the row's
    // own delta = 0.0195 pins 1.0810):
    {2, {0, 2, 4}, {1.08100, 7.56528, 16.5670}, {0.0195, 0.0147, 0.0188}},
}};

// --- comparison helpers ----------------------------------------------------

// One unit in the p-th significant figure of `value`.
inline double sig_fig_ulp(double value, int figures) {
  const double mag = std::floor(std::log10(std::abs(value)));
  return std::pow(10.0, mag - figures + 1);
}

// True when `computed` matches a stored reference quoted to `figures`
// significant figures, within half a unit in the last figure (with a hair of
// slack so exactly-half cases that were rounded up still match).
inline bool matches_sig_figs(double computed, double stored, int figures) {
  if (stored == 0.0) return computed == 0.0;
  return std::abs(computed - stored) <= 0.5000001 * sig_fig_ulp(stored, figures);
}

// Deviation columns are quoted to two significant figures.
inline bool matches_stored_delta(double computed, double stored) {
  return matches_sig_figs(computed, stored, 2);
}

}  // namespace sturm::reference
