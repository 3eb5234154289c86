#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <numbers>
#include <string>

#include "sturm/baselines.hpp"
#include "sturm/basis.hpp"
#include "sturm/errors.hpp"
#include "sturm/secular.hpp"
#include "sturm/variational.hpp"

using namespace sturm;

TEST_CASE("perturbation theory for the anharmonic well") {
  const auto sys = default_units();

  // E^{(0)} = 2(n+1/2), E^{(1)} = E^{(0)} + 0.075 (2n^2+2n+1) in these units
  const double kPt1[] = {1.075, 3.375, 5.975, 8.875, 12.075};
  for (int n = 0; n < 5; ++n) {
    CHECK(perturbation_qao(sys, 2.0, 0.1, n, 0) ==
          doctest::Approx(2.0 * n + 1.0).epsilon(1e-14));
    CHECK(perturbation_qao(sys, 2.0, 0.1, n, 1) ==
          doctest::Approx(kPt1[n]).epsilon(1e-14));
  }

  // the first-order shift is exactly eps <n|x^4|n> at the harmonic width
  for (int n : {0, 1, 4, 6}) {
    const auto slice = make_slice(sys, 2.0, n, 2.0 * (n + 0.5));
    CHECK(perturbation_qao(sys, 2.0, 0.1, n, 1) -
              perturbation_qao(sys, 2.0, 0.1, n, 0) ==
          doctest::Approx(0.1 * x4_element(slice, n)).epsilon(1e-13));
  }

  CHECK_THROWS_AS(perturbation_qao(sys, 2.0, 0.1, 0, 2), ConfigError);
  CHECK_THROWS_AS(perturbation_qao(sys, -1.0, 0.1, 0, 0), ConfigError);
}

TEST_CASE("perturbation theory for the Gaussian well ground state") {
  const auto sys = default_units();
  // r = 16 lambda^2 m^2 / (hbar^4 eps^2) = 16 at lambda = 1, eps = 1/2
  CHECK(perturbation_gaussian_ground(sys, 1.0, 0.5, 0) ==
        doctest::Approx(-0.5).epsilon(1e-14));
  CHECK(perturbation_gaussian_ground(sys, 1.0, 0.5, 1) ==
        doctest::Approx(-1.0 / std::sqrt(1.5)).epsilon(1e-14));
  CHECK_THROWS_AS(perturbation_gaussian_ground(sys, 1.0, 0.5, 3), ConfigError);
}

TEST_CASE("conventional pivot: tabulated seed convention and the fixed point") {
  const auto sys = default_units();
  const Potential qao = QuarticAnharmonic{2.0, 0.1};

  // harmonic-seed evaluation coincides with first-order perturbation theory
  // for this well; these are the tabulated reference numbers
  const double kRef[] = {1.07500, 3.37500, 5.97500, 8.87500, 12.0750};
  for (int n = 0; n < 5; ++n) {
    CHECK(conventional_sturmian_order0(sys, 2.0, n, qao) ==
          doctest::Approx(kRef[n]).epsilon(1e-12));
    CHECK(conventional_sturmian_order0(sys, 2.0, n, qao,
                                       CsaMode::harmonic_seed) ==
          doctest::Approx(perturbation_qao(sys, 2.0, 0.1, n, 1))
              .epsilon(1e-12));
  }

  // the self-consistent variant solves script_e = 2 <n|V|n>(script_e)
  const double fp =
      conventional_sturmian_order0(sys, 2.0, 0, qao, CsaMode::fixed_point);
  CHECK(fp == doctest::Approx(1.067923).epsilon(1e-5));
  // and satisfies its own defining relation
  const auto s = build_system(sys, 2.0, {0}, fp, qao);
  CHECK(fp == doctest::Approx(2.0 * s.v_diag[0]).epsilon(1e-10));

  // a purely attractive well keeps <0|V|0> negative: no positive fixed point
  CHECK_THROWS_AS(conventional_sturmian_order0(sys, 2.0, 0, Gaussian{1.0, 2.0},
                                               CsaMode::fixed_point),
                  NoFixedPoint);
}

TEST_CASE("leading-order WKB for the quartic well") {
  const auto sys = default_units();

  // C = Gamma(1/4) Gamma(3/2) / (2 Gamma(7/4))
  CHECK(wkb_quartic_action_constant() ==
        doctest::Approx(1.7480383695).epsilon(1e-9));

  CHECK(wkb_quartic_order0(sys, 1.0, 0) ==
        doctest::Approx(0.867145).epsilon(1e-5));
  CHECK(wkb_quartic_order0(sys, 1.0, 2) ==
        doctest::Approx(7.413988).epsilon(1e-6));
  CHECK(wkb_quartic_order0(sys, 1.0, 10) ==
        doctest::Approx(50.240152).epsilon(1e-7));

  // closed form vs. the quantization integral evaluated independently:
  // int sqrt(2m(E - eps x^4)) dx over the classical region = pi hbar (n+1/2)
  boost::math::quadrature::tanh_sinh<double> integrator;
  for (int n : {0, 3, 10}) {
    const double eps = 1.3;
    const double e = wkb_quartic_order0(sys, eps, n);
    const double xt = std::pow(e / eps, 0.25);
    auto p = [&](double x) {
      return std::sqrt(std::max(0.0, 2.0 * sys.mass * (e - eps * x * x * x * x)));
    };
    const double action = integrator.integrate(p, -xt, xt);
    CHECK(action == doctest::Approx(std::numbers::pi * sys.hbar * (n + 0.5))
                        .epsilon(1e-10));
  }
}

TEST_CASE("asymptotic series for the Gaussian ground energy") {
  const auto sys = default_units();

  SUBCASE("large-r series converges onto the closed form") {
    for (double r : {1e6, 1e8}) {
      // realize this r with lambda = 1: eps = 2 lambda / sqrt(r)
      const double exact =
          solve_gaussian_ground_order0(sys, 1.0, 2.0 / std::sqrt(r))
              .energies.at(0);
      const double series =
          gaussian_asymptotics(1.0, r, AsymptoticRegime::large_r);
      CHECK(std::abs(series - exact) / std::abs(exact) <
            10.0 * std::pow(r, -1.25));
    }
  }

  SUBCASE("small-r series converges onto the closed form") {
    for (double r : {1e-3, 1e-5}) {
      const double exact =
          solve_gaussian_ground_order0(sys, 1.0, 2.0 / std::sqrt(r))
              .energies.at(0);
      const double series =
          gaussian_asymptotics(1.0, r, AsymptoticRegime::small_r);
      CHECK(std::abs(series - exact) / std::abs(exact) < 10.0 * r);
    }
  }

  SUBCASE("the no-man's-land emits a warning, the clear regimes do not") {
    std::string w;
    gaussian_asymptotics(1.0, 1.0, AsymptoticRegime::large_r, &w);
    CHECK(!w.empty());
    w.clear();
    gaussian_asymptotics(1.0, 100.0, AsymptoticRegime::large_r, &w);
    CHECK(w.empty());
    gaussian_asymptotics(1.0, 0.01, AsymptoticRegime::small_r, &w);
    CHECK(w.empty());
  }
}

TEST_CASE("delta-well limit of the narrow Gaussian") {
  const auto sys = default_units();
  const auto pair = delta_limit_pair(sys, 1.0);
  // -m a^2 / (pi hbar^2) vs. -m a^2 / (2 hbar^2) at m = 1/2
  CHECK(pair.approx ==
        doctest::Approx(-0.5 / std::numbers::pi).epsilon(1e-14));
  CHECK(pair.exact == doctest::Approx(-0.25).epsilon(1e-14));
  CHECK(pair.approx / pair.exact ==
        doctest::Approx(2.0 / std::numbers::pi).epsilon(1e-14));

  // the full order-0 solver reproduces the approx member in the limit
  // lambda = a sqrt(eps / (2 pi)), eps -> infinity
  const double eps = 1e8;
  const double lambda = std::sqrt(eps / (2.0 * std::numbers::pi));
  const double e = solve_gaussian_ground_order0(sys, lambda, eps).energies.at(0);
  CHECK(std::abs(e - pair.approx) / std::abs(pair.approx) < 1e-3);
}

TEST_CASE("finite-difference oracle on the exactly known harmonic well") {
  const auto sys = default_units();
  const Potential harm = QuarticAnharmonic{2.0, 0.0};  // E_n = 2n + 1

  OracleConfig cfg;
  cfg.n_points = 2001;
  cfg.levels = 6;
  const auto out = oracle_spectrum(sys, harm, cfg);
  REQUIRE(out.energies.size() == 6);
  for (int n = 0; n < 6; ++n) {
    const double exact = 2.0 * n + 1.0;
    CHECK(std::abs(out.energies[static_cast<std::size_t>(n)] - exact) < 1e-6);
    // the quoted error estimate covers the true extrapolated error
    CHECK(std::abs(out.energies[static_cast<std::size_t>(n)] - exact) <=
          out.error_estimates[static_cast<std::size_t>(n)]);
  }

  // second-order scheme: halving the step cuts the error by about four
  for (int n = 0; n < 4; ++n) {
    const double exact = 2.0 * n + 1.0;
    const double coarse =
        std::abs(out.coarse_grid[static_cast<std::size_t>(n)] - exact);
    const double fine =
        std::abs(out.fine_grid[static_cast<std::size_t>(n)] - exact);
    CHECK(coarse / fine >= 3.5);
  }

  OracleConfig tiny;
  tiny.n_points = 100;
  CHECK_THROWS_AS(oracle_spectrum(sys, harm, tiny), ConfigError);
}

TEST_CASE("oracle boxes: leak detection and the variational upper bound") {
  const auto sys = default_units();
  const Potential well = Gaussian{1.0, 2.0};

  // the automatic 6x-turning-point box is tuned for confining wells; for the
  // shallow Gaussian the bound tail still carries amplitude there
  OracleConfig cfg;
  cfg.levels = 1;
  cfg.n_points = 1501;
  CHECK_THROWS_AS(oracle_spectrum(sys, well, cfg), BoundaryLeak);

  // with an adequate explicit box the level converges and sits below the
  // order-0 variational estimate (Rayleigh upper bound for the ground state)
  cfg.x_max = 25.0;
  cfg.n_points = 4001;
  const auto out = oracle_spectrum(sys, well, cfg);
  const double e_var = solve_gaussian_ground_order0(sys, 1.0, 2.0).energies.at(0);
  CHECK(out.energies[0] < e_var);
  CHECK(out.energies[0] > -1.0);  // bounded below by the well depth

  // same upper-bound ordering for both polynomial wells
  OracleConfig pcfg;
  pcfg.levels = 1;
  const auto qao = oracle_spectrum(sys, QuarticAnharmonic{2.0, 0.1}, pcfg);
  CHECK(qao.energies[0] <
        solve_qao_order0(sys, 2.0, 0.1, 0).energies.at(0));
  const auto pq = oracle_spectrum(sys, PureQuartic{1.0}, pcfg);
  CHECK(pq.energies[0] < solve_quartic_order0(sys, 1.0, 0).energies.at(0));

  // zeroth-order perturbation sits below the true anharmonic levels
  OracleConfig qcfg;
  qcfg.levels = 5;
  const auto orc = oracle_spectrum(sys, QuarticAnharmonic{2.0, 0.1}, qcfg);
  for (int n = 0; n < 5; ++n)
    CHECK(perturbation_qao(sys, 2.0, 0.1, n, 0) <
          orc.energies[static_cast<std::size_t>(n)]);
}
