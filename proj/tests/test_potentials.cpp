#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "sturm/errors.hpp"
#include "sturm/potentials.hpp"

using namespace sturm;

TEST_CASE("pointwise evaluation of every built-in potential") {
  CHECK(eval(QuarticAnharmonic{2.0, 0.1}, 1.0) == doctest::Approx(1.1));
  CHECK(eval(QuarticAnharmonic{2.0, 0.1}, -2.0) ==
        doctest::Approx(4.0 + 0.1 * 16.0));
  CHECK(eval(PureQuartic{1.0}, 1.5) == doctest::Approx(5.0625));
  CHECK(eval(Gaussian{1.0, 2.0}, 0.0) == doctest::Approx(-1.0));
  CHECK(eval(Gaussian{1.5, 2.0}, 1.0) ==
        doctest::Approx(-1.5 * std::exp(-1.0)));
  // the shifted well differs from the plain one by the constant lambda
  for (double x : {-3.0, -0.2, 0.0, 1.7}) {
    CHECK(eval(GaussianTilde{1.5, 2.0}, x) - eval(Gaussian{1.5, 2.0}, x) ==
          doctest::Approx(1.5).epsilon(1e-14));
  }
  CHECK(eval(Custom{[](double x) { return 3.0 * x; }, Parity::odd}, 2.0) ==
        doctest::Approx(6.0));
}

TEST_CASE("declared parities") {
  CHECK(parity_of(QuarticAnharmonic{}) == Parity::even);
  CHECK(parity_of(PureQuartic{}) == Parity::even);
  CHECK(parity_of(Gaussian{}) == Parity::even);
  CHECK(parity_of(GaussianTilde{}) == Parity::even);
  CHECK(parity_of(make_exact_family(1.0, 0.02, 2.0, default_units())) ==
        Parity::even);
  CHECK(parity_of(Custom{[](double x) { return x; }, Parity::odd}) ==
        Parity::odd);
  CHECK(parity_of(Custom{[](double x) { return x; }, Parity::none}) ==
        Parity::none);
}

TEST_CASE("harmonic reference of each potential") {
  const auto sys = default_units();

  auto v0 = natural_v0(QuarticAnharmonic{2.0, 0.1});
  CHECK(v0.k0 == doctest::Approx(2.0));
  CHECK(v0.e_shift == 0.0);

  v0 = natural_v0(PureQuartic{1.0});
  CHECK(v0.k0 == doctest::Approx(1.0));

  v0 = natural_v0(Gaussian{1.5, 2.0});
  CHECK(v0.k0 == doctest::Approx(3.0));
  CHECK(v0.e_shift == doctest::Approx(-1.5));

  v0 = natural_v0(GaussianTilde{1.5, 2.0});
  CHECK(v0.k0 == doctest::Approx(3.0));
  CHECK(v0.e_shift == 0.0);

  // small-x curvature of the exact family:
  // k0 = (hbar^2 alpha0^2 / m)(1 - zeta)/(1 - 25 zeta)
  const double alpha0 = 1.3, zeta = 0.02, e_target = 2.0;
  v0 = natural_v0(make_exact_family(alpha0, zeta, e_target, sys));
  CHECK(v0.k0 == doctest::Approx(2.0 * alpha0 * alpha0 * (1 - zeta) /
                                 (1 - 25 * zeta))
                     .epsilon(1e-13));
  CHECK(v0.e_shift == doctest::Approx(e_target - alpha0).epsilon(1e-13));

  CHECK_THROWS_AS(
      natural_v0(Custom{[](double x) { return x * x; }, Parity::even}),
      UnsupportedPotential);
}

TEST_CASE("exact family: origin value, harmonic tail, pole structure") {
  const auto sys = default_units();
  const double alpha0 = 1.0, e_target = 2.0;

  SUBCASE("pole-free member") {
    const double zeta = 0.02;
    const auto v = make_exact_family(alpha0, zeta, e_target, sys);

    // V(0) = e_target - hbar^2 alpha0 / (2m)
    CHECK(eval(v, 0.0) == doctest::Approx(e_target - 1.0).epsilon(1e-13));
    CHECK(exact_family_poles(alpha0, zeta).empty());

    // far out the shape factor settles to 1/25 with exponentially small
    // drift: compare (V - V(inf-shift))/x^2 at x = 20 and 30 over sqrt(alpha0)
    const double shift = e_target - 1.0;
    const double x1 = 20.0 / std::sqrt(alpha0), x2 = 30.0 / std::sqrt(alpha0);
    const double c1 = (eval(v, x1) - shift) / (x1 * x1);
    const double c2 = (eval(v, x2) - shift) / (x2 * x2);
    CHECK(std::abs(c1 / c2 - 1.0) < 1e-6);
    // and the settled curvature is alpha0^2/25 in these units
    CHECK(c2 == doctest::Approx(alpha0 * alpha0 / 25.0).epsilon(1e-9));
  }

  SUBCASE("member with a node-induced pole pair") {
    const double zeta = 0.05;  // 25 zeta = 1.25 > 1
    const auto v = make_exact_family(alpha0, zeta, e_target, sys);
    const auto poles = exact_family_poles(alpha0, zeta);
    REQUIRE(poles.size() == 1);
    // u solving e^{-u} = 1.25(1-u) is 0.52833; x = sqrt(5u/(2 alpha0))
    CHECK(poles[0] == doctest::Approx(1.14927).epsilon(1e-4));
    CHECK_THROWS_AS(eval(v, poles[0]), PotentialPole);
    // away from the pole the potential evaluates fine
    CHECK(std::isfinite(eval(v, 0.5)));
    CHECK(std::isfinite(eval(v, 3.0)));
  }

  SUBCASE("negative zeta also forces a pole") {
    CHECK_FALSE(exact_family_poles(alpha0, -0.01).empty());
  }
}

TEST_CASE("matrix elements dispatch consistently across potential types") {
  const auto sys = default_units();
  const auto a = make_slice(sys, 2.0, 0, 1.7);
  const auto b = make_slice(sys, 2.0, 2, 1.7);  // different width (nu = 2)

  SUBCASE("Gaussian well: typed dispatch vs. custom quadrature") {
    const Potential typed = Gaussian{1.3, 2.0};
    const Potential brute = Custom{
        [](double x) { return -1.3 * std::exp(-x * x); }, Parity::even};
    CHECK(matrix_element(a, b, typed) ==
          doctest::Approx(matrix_element(a, b, brute)).epsilon(1e-10));
    CHECK(matrix_element(a, a, typed) ==
          doctest::Approx(matrix_element(a, a, brute)).epsilon(1e-10));
  }

  SUBCASE("shifted well = plateau * overlap + plain well") {
    const double lam = 1.3, eps = 2.0;
    CHECK(matrix_element(a, b, GaussianTilde{lam, eps}) ==
          doctest::Approx(lam * cross_overlap(a, b) +
                          matrix_element(a, b, Gaussian{lam, eps}))
              .epsilon(1e-11));
  }

  SUBCASE("Gaussian diagonal against the closed form") {
    const double lam = 0.9, eps = 1.4, alpha = 1.1;
    CHECK(same_width_matrix_element(alpha, 0, 0, Gaussian{lam, eps}) ==
          doctest::Approx(-lam * std::sqrt(alpha / (alpha + eps / 2)))
              .epsilon(1e-12));
  }

  SUBCASE("polynomial well: dispatch vs. generic quadrature") {
    const Potential typed = QuarticAnharmonic{2.0, 0.1};
    auto f = [](double x) { return x * x + 0.1 * x * x * x * x; };
    CHECK(same_width_matrix_element(0.8, 1, 3, typed) ==
          doctest::Approx(same_width_element(0.8, 1, 3, f, Parity::even))
              .epsilon(1e-10));
    CHECK(matrix_element(a, b, typed) ==
          doctest::Approx(potential_element(a, b, f, Parity::even))
              .epsilon(1e-10));
  }
}
