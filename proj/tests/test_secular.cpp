#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <Eigen/Dense>

#include <cmath>
#include <vector>

#include "sturm/errors.hpp"
#include "sturm/secular.hpp"

using namespace sturm;

namespace {

// Hand-assembled system for exercising solver guards on synthetic data.
SecularSystem forge(std::vector<int> indices, double script_e,
                    const Eigen::MatrixXd& t, const Eigen::VectorXd& v,
                    const Eigen::MatrixXd& w) {
  SecularSystem s;
  s.indices = std::move(indices);
  s.script_e = script_e;
  s.t_offdiag = t;
  s.v_diag = v;
  s.w_offdiag = w;
  s.n_terms = Eigen::VectorXd::Constant(v.size(), script_e / 2);
  return s;
}

const Potential kQao = QuarticAnharmonic{2.0, 0.1};

}  // namespace

TEST_CASE("the n-term product equals script_e/2 for every retained index") {
  const auto sys = default_units();
  for (double se : {0.37, 1.0, 5.3, 12.7}) {
    for (const auto& idx :
         {std::vector<int>{0, 2, 4}, std::vector<int>{1, 3},
          std::vector<int>{6, 12, 20}}) {
      const auto s = build_system(sys, 2.0, idx, se, kQao);
      REQUIRE(s.n_terms.size() == static_cast<int>(idx.size()));
      for (int i = 0; i < s.n_terms.size(); ++i)
        CHECK(s.n_terms[i] == doctest::Approx(se / 2).epsilon(1e-12));
    }
  }
}

TEST_CASE("assembled matrices: symmetry, zero diagonals, element identities") {
  const auto sys = default_units();
  const double se = 1.1;
  const std::vector<int> idx{0, 2, 4};
  const auto s = build_system(sys, 2.0, idx, se, kQao);

  CHECK(s.t_offdiag.diagonal().norm() == 0.0);
  CHECK(s.w_offdiag.diagonal().norm() == 0.0);
  CHECK((s.t_offdiag - s.t_offdiag.transpose()).norm() <= 1e-14);
  CHECK((s.w_offdiag - s.w_offdiag.transpose()).norm() <= 1e-14);

  for (int i = 0; i < s.size(); ++i) {
    const auto a = make_slice(sys, 2.0, idx[static_cast<std::size_t>(i)], se);
    CHECK(s.v_diag[i] ==
          doctest::Approx(matrix_element(a, a, kQao)).epsilon(1e-12));
    for (int j = i + 1; j < s.size(); ++j) {
      const auto b =
          make_slice(sys, 2.0, idx[static_cast<std::size_t>(j)], se);
      CHECK(s.t_offdiag(i, j) ==
            doctest::Approx(cross_overlap(a, b)).epsilon(1e-12).scale(1.0));
      CHECK(s.w_offdiag(i, j) ==
            doctest::Approx(matrix_element(a, b, kQao)).epsilon(1e-12));
    }
  }
}

TEST_CASE("one-term solve shifts the diagonal by script_e/2") {
  const auto sys = default_units();
  const auto s = build_system(sys, 2.0, {3}, 2.5, kQao);
  const auto out = solve_order0(s);
  REQUIRE(out.roots.size() == 1);
  CHECK(out.roots[0] == doctest::Approx(s.v_diag[0] + 1.25).epsilon(1e-14));
  CHECK(out.coefficients[0].size() == 1);
  CHECK(out.coefficients[0][0] == 1.0);
}

TEST_CASE("adjacent-parity pair {0,1} decouples exactly") {
  const auto sys = default_units();
  const auto s = build_system(sys, 2.0, {0, 1}, 1.3, kQao);
  CHECK(s.t_offdiag(0, 1) == 0.0);
  CHECK(s.w_offdiag(0, 1) == 0.0);

  const auto out = solve_order1(s);
  REQUIRE(out.roots.size() == 2);
  // roots are the two decoupled order-0 values, ascending
  const double e0 = s.v_diag[0] + s.script_e / 2;
  const double e1 = s.v_diag[1] + s.script_e / 2;
  CHECK(out.roots[0] == doctest::Approx(std::min(e0, e1)).epsilon(1e-13));
  CHECK(out.roots[1] == doctest::Approx(std::max(e0, e1)).epsilon(1e-13));
  // coefficients collapse to the unit vectors
  CHECK(std::abs(out.coefficients[0][0]) == doctest::Approx(1.0));
  CHECK(std::abs(out.coefficients[1][1]) == doctest::Approx(1.0));
}

TEST_CASE("closed-form roots agree with the generalized eigen pencil") {
  const auto sys = default_units();

  SUBCASE("order 1") {
    for (double se : {0.6, 1.1, 3.7}) {
      const auto s = build_system(sys, 2.0, {0, 2}, se, kQao);
      const auto closed = solve_order1(s);
      const auto pencil = solve_pencil(s);
      REQUIRE(closed.roots.size() == 2);
      REQUIRE(pencil.roots.size() == 2);
      for (std::size_t i = 0; i < 2; ++i) {
        CHECK(closed.roots[i] ==
              doctest::Approx(pencil.roots[i]).epsilon(1e-11));
        CHECK(residual(s, closed.roots[i], closed.coefficients[i]) <= 1e-9);
        CHECK(closed.coefficients[i].norm() == doctest::Approx(1.0));
        CHECK(closed.coefficients[i][0] > 0.0);
      }
    }
  }

  SUBCASE("order 2") {
    for (double se : {0.9, 1.8, 6.2}) {
      const auto s = build_system(sys, 2.0, {0, 2, 4}, se, kQao);
      const auto closed = solve_order2(s);
      const auto pencil = solve_pencil(s);
      REQUIRE(closed.roots.size() == 3);
      for (std::size_t i = 0; i < 3; ++i) {
        CHECK(closed.roots[i] ==
              doctest::Approx(pencil.roots[i]).epsilon(1e-10));
        CHECK(residual(s, closed.roots[i], closed.coefficients[i]) <= 1e-9);
        CHECK(closed.coefficients[i].norm() == doctest::Approx(1.0));
      }
      CHECK(closed.roots[0] < closed.roots[1]);
      CHECK(closed.roots[1] < closed.roots[2]);
    }
  }
}

TEST_CASE("guards on degenerate synthetic systems") {
  Eigen::VectorXd v2(2);
  v2 << 0.4, 1.9;
  Eigen::MatrixXd w2 = Eigen::MatrixXd::Zero(2, 2);

  SUBCASE("order 1: |t| -> 1 degenerates the quadratic") {
    Eigen::MatrixXd t(2, 2);
    t << 0.0, 1.0 - 1e-13, 1.0 - 1e-13, 0.0;
    const auto s = forge({0, 2}, 1.0, t, v2, w2);
    CHECK_THROWS_AS(solve_order1(s), DegenerateOverlap);
  }

  SUBCASE("order 2: unit pair overlaps make T exactly singular") {
    Eigen::MatrixXd t(3, 3);
    t << 0, 1, 1, 1, 0, 1, 1, 1, 0;
    Eigen::VectorXd v3(3);
    v3 << 0.4, 1.9, 3.0;
    const auto s =
        forge({0, 2, 4}, 1.0, t, v3, Eigen::MatrixXd::Zero(3, 3));
    CHECK_THROWS_AS(solve_order2(s), NearSingularOverlap);
  }

  SUBCASE("order 2: indefinite T with det T > 0 drives roots complex") {
    // T has eigenvalues {5, -1, -1}; the pencil spectrum is genuinely
    // complex for this diagonal, which the cubic must refuse to real-solve.
    Eigen::MatrixXd t(3, 3);
    t << 0, 2, 2, 2, 0, 2, 2, 2, 0;
    Eigen::VectorXd v3(3);
    v3 << 1.0, -1.0, 4.0;
    const auto s =
        forge({0, 2, 4}, 0.0, t, v3, Eigen::MatrixXd::Zero(3, 3));
    CHECK_THROWS_AS(solve_order2(s), ComplexRoots);
  }
}

TEST_CASE("residual vanishes only for true eigenpairs") {
  const auto sys = default_units();
  const auto s = build_system(sys, 2.0, {0, 2}, 1.1, kQao);
  const auto out = solve_order1(s);
  CHECK(residual(s, out.roots[0], out.coefficients[0]) <= 1e-10);
  CHECK(residual(s, out.roots[0] + 0.1, out.coefficients[0]) > 1e-3);
}
