#include "sturm/secular.hpp"

#include <algorithm>
#include <cmath>

#include "sturm/basis.hpp"
#include "sturm/errors.hpp"

namespace sturm {

namespace {

void fix_sign(Eigen::VectorXd& c) {
  for (Eigen::Index i = 0; i < c.size(); ++i) {
    if (std::abs(c(i)) > 1e-12) {
      if (c(i) < 0.0) c = -c;
      return;
    }
  }
}

Eigen::MatrixXd overlap_matrix(const SecularSystem& s) {
  return Eigen::MatrixXd::Identity(s.size(), s.size()) + s.t_offdiag;
}

// (E - script_e) T - S, written with y = E - script_e/2 as (y - script_e/2) T - S.
Eigen::MatrixXd secular_matrix(const SecularSystem& s, double energy) {
  const Eigen::MatrixXd t_full = overlap_matrix(s);
  Eigen::MatrixXd w_full = s.w_offdiag;
  w_full += Eigen::MatrixXd(s.v_diag.asDiagonal());
  const Eigen::MatrixXd s_mat =
      w_full - 0.5 * s.script_e *
                   Eigen::MatrixXd::Identity(s.size(), s.size());
  return (energy - s.script_e) * t_full - s_mat;
}

// Sort roots ascending, carrying coefficients along.
void sort_candidates(CandidateEnergies& c) {
  std::vector<std::size_t> order(c.roots.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t i, std::size_t j) { return c.roots[i] < c.roots[j]; });
  CandidateEnergies sorted;
  for (std::size_t i : order) {
    sorted.roots.push_back(c.roots[i]);
    sorted.coefficients.push_back(c.coefficients[i]);
  }
  c = std::move(sorted);
}

}  // namespace

SecularSystem build_system(const SystemParams& sys, double k0,
                           const std::vector<int>& indices, double script_e,
                           const Potential& v) {
  if (indices.empty())
    throw ConfigError("build_system: need at least one index");
  for (std::size_t i = 1; i < indices.size(); ++i)
    if (indices[i] <= indices[i - 1])
      throw ConfigError("build_system: indices must be strictly ascending");

  const int n = static_cast<int>(indices.size());
  std::vector<SturmianSlice> slices;
  slices.reserve(indices.size());
  for (int idx : indices) slices.push_back(make_slice(sys, k0, idx, script_e));

  SecularSystem s;
  s.indices = indices;
  s.script_e = script_e;
  s.t_offdiag = Eigen::MatrixXd::Zero(n, n);
  s.w_offdiag = Eigen::MatrixXd::Zero(n, n);
  s.v_diag = Eigen::VectorXd::Zero(n);
  s.n_terms = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < n; ++i) {
    // beta_nu <phi_nu|(k0/2) x^2|phi_nu>, computed rather than set to
    // script_e/2 so the identity stays checkable.
    s.n_terms(i) = slices[i].beta * 0.5 * k0 * x2_element(slices[i], indices[i]);
    s.v_diag(i) = matrix_element(slices[i], slices[i], v);
    for (int j = i + 1; j < n; ++j) {
      const double t = cross_overlap(slices[i], slices[j]);
      const double w = matrix_element(slices[i], slices[j], v);
      s.t_offdiag(i, j) = s.t_offdiag(j, i) = t;
      s.w_offdiag(i, j) = s.w_offdiag(j, i) = w;
    }
  }
  return s;
}

CandidateEnergies solve_order0(const SecularSystem& s) {
  if (s.size() != 1)
    throw ConfigError("solve_order0: expects a one-term system");
  CandidateEnergies c;
  c.roots.push_back(s.v_diag(0) + 0.5 * s.script_e);
  c.coefficients.push_back(Eigen::VectorXd::Ones(1));
  return c;
}

CandidateEnergies solve_order1(const SecularSystem& s) {
  if (s.size() != 2)
    throw ConfigError("solve_order1: expects a two-term system");
  const double se = s.script_e;
  const double t = s.t_offdiag(0, 1);
  const double w = s.w_offdiag(0, 1);
  const double v1 = s.v_diag(0);
  const double v2 = s.v_diag(1);

  if (std::abs(t) >= 1.0 - 1e-12)
    throw DegenerateOverlap("solve_order1: |<phi_n|phi_m>| numerically 1");

  const double qa = 1.0 - t * t;
  const double qb = t * (t * se + 2.0 * w) - (v1 + v2);
  const double qc = v1 * v2 - (0.5 * t * se + w) * (0.5 * t * se + w);
  const double disc = qb * qb - 4.0 * qa * qc;
  if (disc < 0.0)
    throw ComplexRoots("solve_order1: negative discriminant");
  const double root = std::sqrt(disc);
  // Stable quadratic: avoid cancellation in the smaller root.
  double y_lo, y_hi;
  if (qb >= 0.0) {
    const double q = -0.5 * (qb + root);
    y_lo = q / qa;
    y_hi = (q != 0.0) ? qc / q : -qb / (2.0 * qa);
  } else {
    const double q = -0.5 * (qb - root);
    y_hi = q / qa;
    y_lo = (q != 0.0) ? qc / q : -qb / (2.0 * qa);
  }
  if (y_lo > y_hi) std::swap(y_lo, y_hi);

  CandidateEnergies c;
  for (double y : {y_lo, y_hi}) {
    const double energy = y + 0.5 * se;
    const Eigen::MatrixXd m = secular_matrix(s, energy);
    // Null vector of a singular symmetric 2x2: orthogonal to its larger row.
    Eigen::Vector2d row = m.row(0).norm() >= m.row(1).norm()
                              ? Eigen::Vector2d(m(0, 0), m(0, 1))
                              : Eigen::Vector2d(m(1, 0), m(1, 1));
    Eigen::VectorXd coeff(2);
    coeff << -row(1), row(0);
    const double nrm = coeff.norm();
    if (nrm > 0.0) coeff /= nrm;
    fix_sign(coeff);
    c.roots.push_back(energy);
    c.coefficients.push_back(coeff);
  }
  return c;
}

CandidateEnergies solve_order2(const SecularSystem& s) {
  if (s.size() != 3)
    throw ConfigError("solve_order2: expects a three-term system");
  const double se = s.script_e;
  // Pairings: t1/w1 couple the upper two indices, t2/w2 the outer pair,
  // t3/w3 the lower two; v_l is the l-th diagonal element.
  const double t1 = s.t_offdiag(1, 2), t2 = s.t_offdiag(0, 2),
               t3 = s.t_offdiag(0, 1);
  const double w1 = s.w_offdiag(1, 2), w2 = s.w_offdiag(0, 2),
               w3 = s.w_offdiag(0, 1);
  const double v1 = s.v_diag(0), v2 = s.v_diag(1), v3 = s.v_diag(2);
  const double xi1 = 0.5 * t1 * se + w1;
  const double xi2 = 0.5 * t2 * se + w2;
  const double xi3 = 0.5 * t3 * se + w3;

  const double det_t = 1.0 - (t1 * t1 + t2 * t2 + t3 * t3) + 2.0 * t1 * t2 * t3;
  if (det_t < 1e-12)
    throw NearSingularOverlap("solve_order2: overlap matrix nearly singular");

  const double ca = det_t;
  const double cb = (t1 * t1 - 1.0) * v1 + (t2 * t2 - 1.0) * v2 +
                    (t3 * t3 - 1.0) * v3 +
                    2.0 * (t1 * xi1 + t2 * xi2 + t3 * xi3) -
                    2.0 * (t1 * t2 * xi3 + t3 * t1 * xi2 + t2 * t3 * xi1);
  const double cc = v1 * v2 + v2 * v3 + v3 * v1 +
                    2.0 * (t1 * xi2 * xi3 + t3 * xi1 * xi2 + t2 * xi3 * xi1) -
                    (xi1 * xi1 + xi2 * xi2 + xi3 * xi3) -
                    2.0 * (t1 * v1 * xi1 + t2 * v2 * xi2 + t3 * v3 * xi3);
  const double cd = v1 * xi1 * xi1 + v2 * xi2 * xi2 + v3 * xi3 * xi3 -
                    2.0 * xi1 * xi2 * xi3 - v1 * v2 * v3;

  // Depressed cubic z^3 + az + b = 0 with y = z - p/3.
  const double p = cb / ca;
  const double q = cc / ca;
  const double r = cd / ca;
  const double a = q - p * p / 3.0;
  const double b = 2.0 * p * p * p / 27.0 - p * q / 3.0 + r;
  const double disc = 0.25 * b * b + a * a * a / 27.0;
  const double scale = std::max({std::abs(a), std::cbrt(std::abs(b)), 1e-30});
  if (disc > 1e-12 * scale * scale * scale)
    throw ComplexRoots("solve_order2: cubic has a complex pair");

  double z[3];
  const double m = 2.0 * std::sqrt(std::max(0.0, -a / 3.0));
  if (m == 0.0) {
    z[0] = z[1] = z[2] = std::cbrt(-b);
  } else {
    double cosarg = 3.0 * b / (a * m);
    cosarg = std::clamp(cosarg, -1.0, 1.0);
    const double theta = std::acos(cosarg);
    for (int k = 0; k < 3; ++k)
      z[k] = m * std::cos((theta - 2.0 * M_PI * k) / 3.0);
  }

  CandidateEnergies c;
  for (int k = 0; k < 3; ++k) {
    const double energy = z[k] - p / 3.0 + 0.5 * se;
    const Eigen::MatrixXd mm = secular_matrix(s, energy);
    // Null direction = right singular vector of the smallest singular value.
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(mm, Eigen::ComputeFullV);
    Eigen::VectorXd coeff = svd.matrixV().col(2);
    fix_sign(coeff);
    c.roots.push_back(energy);
    c.coefficients.push_back(coeff);
  }
  sort_candidates(c);
  return c;
}

CandidateEnergies solve_pencil(const SecularSystem& s) {
  const Eigen::MatrixXd t_full = overlap_matrix(s);
  Eigen::LLT<Eigen::MatrixXd> llt(t_full);
  if (llt.info() != Eigen::Success)
    throw NearSingularOverlap("solve_pencil: overlap matrix not positive definite");
  Eigen::MatrixXd g = s.w_offdiag;
  g += Eigen::MatrixXd(s.v_diag.asDiagonal());
  g += 0.5 * s.script_e * s.t_offdiag;  // (script_e/2)(T - I)
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> ges(g, t_full);
  if (ges.info() != Eigen::Success)
    throw Error("solve_pencil: generalized eigensolver failed");
  CandidateEnergies c;
  for (Eigen::Index i = 0; i < ges.eigenvalues().size(); ++i) {
    c.roots.push_back(0.5 * s.script_e + ges.eigenvalues()(i));
    Eigen::VectorXd coeff = ges.eigenvectors().col(i);
    const double nrm = coeff.norm();
    if (nrm > 0.0) coeff /= nrm;
    fix_sign(coeff);
    c.coefficients.push_back(coeff);
  }
  return c;
}

double residual(const SecularSystem& s, double energy,
                const Eigen::VectorXd& c) {
  return (secular_matrix(s, energy) * c).norm();
}

}  // namespace sturm
