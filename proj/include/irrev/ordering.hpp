#pragma once

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <vector>

#include "irrev/lambda.hpp"

namespace irrev {

/// P_{t]} = [Z(t), Z*(t)], evaluated literally from a precomputed Z(t).
inline LinOp past_projection(const LinOp& z) {
  const Matrix& m = z.matrix();
  Matrix p = m * m.adjoint() - m.adjoint() * m;
  return LinOp(z.grid(), Space::HalfLinePos, Space::HalfLinePos, std::move(p), true);
}

inline LinOp past_projection(const Representation& rep, LatticeTime t) { return past_projection(z_matrix(rep, t)); }

/// P_{[t} = Z*(t) Z(t).
inline LinOp future_projection(const LinOp& z) {
  const Matrix& m = z.matrix();
  return LinOp(z.grid(), Space::HalfLinePos, Space::HalfLinePos, m.adjoint() * m, true);
}

inline LinOp future_projection(const Representation& rep, LatticeTime t) {
  return future_projection(z_matrix(rep, t));
}

/// Projector onto states whose R-image has an empty top band of
/// `guard_steps` time bins: G = R* diag(k < n - guard_steps) R. On Ran G the
/// discrete Z(t) is a co-isometry for every t <= guard_steps * dtau.
inline LinOp guard_projector(const Representation& rep, std::size_t guard_steps) {
  const auto& g = rep.grid;
  if (guard_steps > g.half()) throw error(errc::precondition, "guard band wider than the Hardy half");
  const auto& r = rep.isometry.matrix();
  const auto keep = static_cast<Eigen::Index>((g.half() - guard_steps) * g.k_dim);
  Matrix gp = r.topRows(keep).adjoint() * r.topRows(keep);
  return LinOp(g, Space::HalfLinePos, Space::HalfLinePos, std::move(gp), true);
}

struct ProjectionFamily {
  std::vector<LatticeTime> lattice;
  std::vector<double> times;
  std::vector<LinOp> projections;  // G P_{t]} G
  std::vector<LinOp> increments;   // mu_T((t_k, t_{k+1}])
  LinOp guard;
  std::size_t guard_steps = 0;
  double literal_defect = 0.0;  // max_t ||P_{t]} - G P_{t]} G||_F
};

/// {P_{t]}} on an increasing lattice grid starting at 0, compressed to the
/// guard-banded subspace of the grid's largest time.
inline ProjectionFamily spectral_measure(const Representation& rep, const std::vector<LatticeTime>& times) {
  if (times.empty() || times.front().steps != 0) throw error(errc::invalid_argument, "time grid must start at 0");
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (times[i].steps <= times[i - 1].steps) throw error(errc::invalid_argument, "time grid must be increasing");
  }
  ProjectionFamily fam;
  fam.lattice = times;
  fam.guard_steps = static_cast<std::size_t>(times.back().steps);
  fam.guard = guard_projector(rep, fam.guard_steps);
  const Matrix& gm = fam.guard.matrix();
  for (const auto& t : times) {
    fam.times.push_back(t.value(rep.grid));
    const auto literal = past_projection(rep, t);
    Matrix p = gm * literal.matrix() * gm;
    p = (p + p.adjoint()).eval() * 0.5;
    fam.literal_defect = std::max(fam.literal_defect, (literal.matrix() - p).norm());
    fam.projections.emplace_back(rep.grid, Space::HalfLinePos, Space::HalfLinePos, std::move(p), true);
  }
  for (std::size_t i = 1; i < fam.projections.size(); ++i) {
    fam.increments.push_back(fam.projections[i] - fam.projections[i - 1]);
  }
  return fam;
}

struct RankInfo {
  std::size_t rank = 0;
  double max_cluster_gap = 0.0;  // max over eigenvalues of dist(lambda, {0, 1})
};

/// Numerical rank of a near-projection: eigenvalues > 1/2, with the
/// eigenvalues required to cluster within 1e-4 of {0, 1}.
inline RankInfo projection_rank(const LinOp& p, double cluster_tol = 1e-4) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(p.matrix(), Eigen::EigenvaluesOnly);
  RankInfo info;
  for (const double l : es.eigenvalues()) {
    if (l > 0.5) ++info.rank;
    info.max_cluster_gap = std::max(info.max_cluster_gap, std::min(std::abs(l), std::abs(l - 1.0)));
  }
  if (info.max_cluster_gap >= cluster_tol) {
    throw error(errc::precondition, "eigenvalues do not cluster at {0, 1}");
  }
  return info;
}

struct OrderingOperator {
  LinOp matrix;
  std::vector<double> time_grid;
  double truncation_time = 0.0;
};

/// T = sum_k t_mid(k) mu_T((t_k, t_{k+1}]), a Riemann-Stieltjes sum over
/// the lattice.
inline OrderingOperator assemble_T(const ProjectionFamily& fam) {
  if (fam.increments.empty()) throw error(errc::invalid_argument, "projection family has no intervals");
  const auto& g = fam.guard.grid();
  const auto n = static_cast<Eigen::Index>(g.half_size());
  Matrix t = Matrix::Zero(n, n);
  for (std::size_t k = 0; k < fam.increments.size(); ++k) {
    const double mid = 0.5 * (fam.times[k] + fam.times[k + 1]);
    t += mid * fam.increments[k].matrix();
  }
  t = (t + t.adjoint()).eval() * 0.5;
  return OrderingOperator{LinOp(g, Space::HalfLinePos, Space::HalfLinePos, std::move(t), true), fam.times,
                          fam.times.back()};
}

struct MatrixElement {
  complex reversible;    // (phi, u(-t) X u(t) psi), X = Lambda x_Lambda Lambda
  complex irreversible;  // (P_{[t} phi_L, Z*(t) x_Lambda Z(t) P_{[t} psi_L)
  double difference = 0.0;
};

inline MatrixElement irreversible_matrix_element(const Representation& rep, const StateVector& phi,
                                                 const StateVector& psi, const LinOp& x_lambda, LatticeTime t) {
  detail::require_rep_state(rep, phi);
  detail::require_rep_state(rep, psi);
  if (x_lambda.domain() != Space::HalfLinePos || x_lambda.codomain() != Space::HalfLinePos) {
    throw error(errc::space_mismatch, "x_lambda must act on HalfLinePos");
  }
  if (x_lambda.hermitian_residual() > 1e-12) throw error(errc::not_hermitian, "x_lambda");
  const LinOp& lam = rep.lambda;
  MatrixElement out;
  const auto phi_t = unitary_evolve(phi, t);
  const auto psi_t = unitary_evolve(psi, t);
  out.reversible = inner(phi_t, apply(lam, apply(x_lambda, apply(lam, psi_t))));

  auto future = [&](const StateVector& s) { return z_adjoint(rep, z_evolve(rep, s, t), t); };
  const auto phi_f = future(apply(lam, phi));
  const auto psi_f = future(apply(lam, psi));
  out.irreversible = inner(z_evolve(rep, phi_f, t), apply(x_lambda, z_evolve(rep, psi_f, t)));
  out.difference = std::abs(out.reversible - out.irreversible);
  return out;
}

struct Correspondence {
  double reversible = 0.0;    // (psi_t, M_F psi_t)
  double irreversible = 0.0;  // (psi_L, P_{[t} psi_L)
  double relative = 0.0;      // |difference| / ||psi||^2, both sides are bounded by ||psi||^2
};

inline Correspondence correspondence_check(const Representation& rep, const StateVector& psi, LatticeTime t) {
  detail::require_rep_state(rep, psi);
  Correspondence out;
  const auto psi_t = unitary_evolve(psi, t);
  out.reversible = inner(psi_t, apply(rep.m_f, psi_t)).real();
  const auto psi_l = apply(rep.lambda, psi);
  out.irreversible = inner(psi_l, z_adjoint(rep, z_evolve(rep, psi_l, t), t)).real();
  const double scale = norm2(psi);
  out.relative = scale > 0.0 ? std::abs(out.reversible - out.irreversible) / scale : 0.0;
  return out;
}

}  // namespace irrev
