#pragma once

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <algorithm>
#include <vector>

#include "irrev/lyapunov.hpp"

namespace irrev {

template <class Real>
struct HermitianSqrt {
  BasicLinOp<Real> root;
  Eigen::Matrix<Real, Eigen::Dynamic, 1> eigenvalues;  // ascending, before clipping
  MatrixT<Real> eigenvectors;
  Real min_eigenvalue = 0;
};

/// Positive square root by Hermitian eigendecomposition. Eigenvalues in
/// [-1e-10, 0) are clipped to zero; anything more negative is rejected.
template <class Real>
HermitianSqrt<Real> hermitian_sqrt(const BasicLinOp<Real>& m) {
  if (m.domain() != m.codomain() || m.rows() != m.cols()) {
    throw error(errc::dimension_mismatch, "square root needs a square operator");
  }
  if (m.hermitian_residual() > Real(1e-12)) throw error(errc::not_hermitian, "cannot take the positive square root");
  Eigen::SelfAdjointEigenSolver<MatrixT<Real>> es(m.matrix());
  if (es.info() != Eigen::Success) throw error(errc::precondition, "eigendecomposition did not converge");
  HermitianSqrt<Real> out;
  out.eigenvalues = es.eigenvalues();
  out.eigenvectors = es.eigenvectors();
  out.min_eigenvalue = out.eigenvalues.minCoeff();
  if (out.min_eigenvalue < Real(-1e-10)) throw error(errc::precondition, "operator is not non-negative");
  const auto roots = out.eigenvalues.cwiseMax(Real(0)).cwiseSqrt().eval();
  MatrixT<Real> r = out.eigenvectors * roots.asDiagonal() * out.eigenvectors.adjoint();
  r = (r + r.adjoint()).eval() * Real(0.5);
  out.root = BasicLinOp<Real>(m.grid(), m.domain(), m.codomain(), std::move(r), true);
  return out;
}

/// Lambda_F = M_F^{1/2}.
template <class Real>
BasicLinOp<Real> build_lambda(const BasicLinOp<Real>& m_f) {
  return hermitian_sqrt(m_f).root;
}

struct PolarFactor {
  LinOp isometry;
  Eigen::VectorXd singular_values;  // descending
  double min_singular_value = 0.0;
};

/// Unitary polar factor U V* of Omega = U S V*, the bounded extension of
/// Omega Lambda^{-1}; Lambda is never inverted. `right` holds eigenvectors of
/// Omega* Omega, which are the right singular vectors. Then s_i = |Omega v_i|
/// and u_i = Omega v_i / s_i. Left vectors whose s_i sits at roundoff are
/// noise; a Householder QR over the columns in descending s order keeps the
/// resolved ones and completes the rest to an orthonormal basis. Their error
/// enters R Lambda - Omega only through s_i.
inline PolarFactor polar_factor(const LinOp& omega, const Matrix& right) {
  if (omega.rows() != omega.cols()) throw error(errc::dimension_mismatch, "polar factor needs a square map");
  if (right.rows() != omega.cols() || right.cols() != omega.cols()) {
    throw error(errc::dimension_mismatch, "right singular basis must be square");
  }
  const auto n = omega.cols();
  const Matrix w = omega.matrix() * right;
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  Eigen::VectorXd s(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    order[static_cast<std::size_t>(i)] = i;
    s(i) = w.col(i).norm();
  }
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return s(a) > s(b); });
  Matrix u0(n, n), v(n, n);
  PolarFactor out;
  out.singular_values.resize(n);
  for (Eigen::Index c = 0; c < n; ++c) {
    const auto i = order[static_cast<std::size_t>(c)];
    out.singular_values(c) = s(i);
    v.col(c) = right.col(i);
    if (s(i) > 0.0) {
      u0.col(c) = w.col(i) / s(i);
    } else {
      u0.col(c) = Matrix::Identity(n, n).col(c);
    }
  }
  Eigen::HouseholderQR<Matrix> qr(u0);
  Matrix u = qr.householderQ() * Matrix::Identity(n, n);
  const Matrix& rr = qr.matrixQR();
  for (Eigen::Index c = 0; c < n; ++c) {
    const double a = std::abs(rr(c, c));
    if (a > 0.0) u.col(c) *= rr(c, c) / a;
  }
  out.min_singular_value = out.singular_values(n - 1);
  out.isometry = LinOp(omega.grid(), omega.domain(), omega.codomain(), u * v.adjoint());
  return out;
}

inline LinOp build_isometry(const LinOp& omega, const LinOp& lambda) {
  if (!(omega.grid() == lambda.grid())) throw error(errc::grid_mismatch, "isometry inputs");
  if (omega.domain() != Space::HalfLinePos || omega.codomain() != Space::HardyPlus) {
    throw error(errc::space_mismatch, "omega must map HalfLinePos -> HardyPlus");
  }
  if (lambda.domain() != Space::HalfLinePos || lambda.codomain() != Space::HalfLinePos ||
      lambda.cols() != omega.cols()) {
    throw error(errc::dimension_mismatch, "lambda must act on the domain of omega");
  }
  if (lambda.hermitian_residual() > 1e-12) throw error(errc::not_hermitian, "lambda");
  // Lambda and Omega* Omega share eigenvectors
  Eigen::SelfAdjointEigenSolver<Matrix> es(lambda.matrix());
  return polar_factor(omega, es.eigenvectors()).isometry;
}

enum class Precision { Double, Extended };

/// Dense-tier factorization shared by the irreversible representation:
/// Omega_f, M_F, Lambda_F and the isometry R with R Lambda_F = Omega_f.
struct Representation {
  GridSpec grid;
  LinOp omega;
  LinOp m_f;
  LinOp lambda;
  LinOp isometry;
  Eigen::VectorXd singular_values;
  Eigen::VectorXd m_f_eigenvalues;
  double min_m_f_eigenvalue = 0.0;
  Precision precision = Precision::Extended;
};

inline Representation build_representation(const GridSpec& g, Precision precision = Precision::Extended) {
  Representation rep;
  rep.grid = g;
  rep.precision = precision;
  rep.omega = build_omega(g);
  rep.m_f = build_m_f<double>(g);
  Matrix right;
  if (precision == Precision::Extended) {
    const auto root = hermitian_sqrt(build_m_f<long double>(g));
    rep.lambda = root.root.template cast<double>();
    right = root.eigenvectors.template cast<complex>();
    rep.m_f_eigenvalues = root.eigenvalues.template cast<double>();
    rep.min_m_f_eigenvalue = static_cast<double>(root.min_eigenvalue);
  } else {
    const auto root = hermitian_sqrt(rep.m_f);
    rep.lambda = root.root;
    right = root.eigenvectors;
    rep.m_f_eigenvalues = root.eigenvalues;
    rep.min_m_f_eigenvalue = root.min_eigenvalue;
  }
  auto polar = polar_factor(rep.omega, right);
  rep.isometry = std::move(polar.isometry);
  rep.singular_values = std::move(polar.singular_values);
  return rep;
}

namespace detail {

inline Matrix toeplitz_columns(const GridSpec& g, const Matrix& cols, LatticeTime t, bool adjoint) {
  Matrix out(cols.rows(), cols.cols());
  for (Eigen::Index c = 0; c < cols.cols(); ++c) {
    const StateVector h(g, Space::HardyPlus, cols.col(c));
    out.col(c) = (adjoint ? toeplitz_adjoint(h, t) : toeplitz_step(h, t)).amplitudes();
  }
  return out;
}

inline void require_rep_state(const Representation& rep, const StateVector& psi) {
  require_space(psi, Space::HalfLinePos);
  if (!(psi.grid() == rep.grid)) throw error(errc::grid_mismatch, "state and representation");
}

}  // namespace detail

/// T_u(t) as a dense HardyPlus operator, assembled column by column through
/// the spectral route.
inline LinOp toeplitz_matrix(const GridSpec& g, LatticeTime t) {
  const auto n = static_cast<Eigen::Index>(g.half_size());
  return LinOp(g, Space::HardyPlus, Space::HardyPlus, detail::toeplitz_columns(g, Matrix::Identity(n, n), t, false));
}

/// Z(t) = R* T_u(t) R.
inline LinOp z_matrix(const Representation& rep, LatticeTime t) {
  const auto& r = rep.isometry.matrix();
  Matrix tr = detail::toeplitz_columns(rep.grid, r, t, false);
  return LinOp(rep.grid, Space::HalfLinePos, Space::HalfLinePos, r.adjoint() * tr);
}

inline StateVector z_evolve(const Representation& rep, const StateVector& psi, LatticeTime t) {
  detail::require_rep_state(rep, psi);
  const auto h = toeplitz_step(apply(rep.isometry, psi), t);
  return apply(rep.isometry.adjoint(), h);
}

inline StateVector z_adjoint(const Representation& rep, const StateVector& psi, LatticeTime t) {
  detail::require_rep_state(rep, psi);
  const auto h = toeplitz_adjoint(apply(rep.isometry, psi), t);
  return apply(rep.isometry.adjoint(), h);
}

struct IntertwiningResidual {
  double forward = 0.0;  // max ||Lambda u(t) psi - Z(t) Lambda psi|| / ||psi||
  double adjoint = 0.0;  // max ||u(-t) Lambda psi - Lambda Z*(t) psi|| / ||psi||
};

inline IntertwiningResidual intertwining_residual(const Representation& rep, LatticeTime t,
                                                  const std::vector<StateVector>& states) {
  IntertwiningResidual out;
  for (const auto& psi : states) {
    detail::require_rep_state(rep, psi);
    const double scale = norm(psi);
    if (scale == 0.0) continue;
    const auto lhs = apply(rep.lambda, unitary_evolve(psi, t));
    const auto rhs = z_evolve(rep, apply(rep.lambda, psi), t);
    out.forward = std::max(out.forward, norm(lhs - rhs) / scale);
    const auto lhs_a = unitary_evolve_back(apply(rep.lambda, psi), t);
    const auto rhs_a = apply(rep.lambda, z_adjoint(rep, psi, t));
    out.adjoint = std::max(out.adjoint, norm(lhs_a - rhs_a) / scale);
  }
  return out;
}

}  // namespace irrev
