#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <vector>

#include "irrev/evolution.hpp"
#include "irrev/linop.hpp"

namespace irrev {

namespace detail {

template <class Real>
MatrixT<Real> kron_fiber(const MatrixT<Real>& scalar, std::size_t kd) {
  if (kd == 1) return scalar;
  const auto kdi = static_cast<Eigen::Index>(kd);
  MatrixT<Real> out = MatrixT<Real>::Zero(scalar.rows() * kdi, scalar.cols() * kdi);
  for (Eigen::Index i = 0; i < scalar.rows(); ++i)
    for (Eigen::Index j = 0; j < scalar.cols(); ++j)
      for (Eigen::Index c = 0; c < kdi; ++c) out(i * kdi + c, j * kdi + c) = scalar(i, j);
  return out;
}

}  // namespace detail

/// Omega_f = P+ restricted to L2(R+), as a map HalfLinePos -> HardyPlus.
/// In amplitude coordinates it is the (tau > 0, sigma > 0) quarter block of
/// the unitary DFT: exp(-2 pi i (2j+1)(2k+1) / 4N) / sqrt(N).
inline LinOp build_omega(const GridSpec& g) {
  const std::size_t n = g.half();
  const auto four_n = static_cast<std::int64_t>(4 * g.n_sigma);
  const double inv = 1.0 / std::sqrt(static_cast<double>(g.n_sigma));
  Matrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = 0; j < n; ++j) {
      const std::int64_t r = (static_cast<std::int64_t>(2 * j + 1) * static_cast<std::int64_t>(2 * k + 1)) % four_n;
      const double a = 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(four_n);
      m(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j)) = inv * complex(std::cos(a), -std::sin(a));
    }
  }
  return LinOp(g, Space::HalfLinePos, Space::HardyPlus, detail::kron_fiber<double>(m, g.k_dim));
}

struct InjectivityCertificate {
  double log_abs_det = 0.0;       // log |det Omega_f|
  double min_node_separation = 0.0;
  bool injective = false;
};

/// Omega_f = diag(z_k) V(x_k) with |z_k| = 1 and V the Vandermonde matrix in
/// x_k = exp(-i pi (2k+1) / N). Its determinant is a product of node
/// differences, so injectivity is decided exactly even where the smallest
/// singular values sit below roundoff.
inline InjectivityCertificate omega_injectivity(const GridSpec& g) {
  InjectivityCertificate c;
  const std::size_t n = g.half();
  const double nn = static_cast<double>(g.n_sigma);
  c.min_node_separation = n > 1 ? std::numeric_limits<double>::infinity() : 0.0;
  double acc = 0.0;
  // |x_k - x_l| = 2 sin(pi (l - k) / N); the multiplicity of each gap d is n - d.
  for (std::size_t d = 1; d < n; ++d) {
    const double sep = 2.0 * std::sin(std::numbers::pi * static_cast<double>(d) / nn);
    c.min_node_separation = std::min(c.min_node_separation, sep);
    acc += static_cast<double>(n - d) * std::log(sep);
  }
  c.log_abs_det = static_cast<double>(g.k_dim) * acc;
  c.injective = std::isfinite(c.log_abs_det) && c.min_node_separation > 0.0;
  return c;
}

/// M_F = (P_R+ P+ P_R+) restricted to L2(R+), from its closed-form Toeplitz
/// entries: 1/2 on the diagonal, i / (N sin(pi d / N)) at odd offsets d,
/// zero at even offsets.
template <class Real = double>
BasicLinOp<Real> build_m_f(const GridSpec& g) {
  using C = std::complex<Real>;
  const std::size_t n = g.half();
  const Real nn = static_cast<Real>(g.n_sigma);
  const Real pi = std::numbers::pi_v<Real>;
  MatrixT<Real> m = MatrixT<Real>::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const auto d = static_cast<std::int64_t>(a) - static_cast<std::int64_t>(b);
      if (d == 0) {
        m(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = C(Real(0.5), Real(0));
      } else if (d % 2 != 0) {
        m(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) =
            C(Real(0), Real(1) / (nn * std::sin(pi * static_cast<Real>(d) / nn)));
      }
    }
  }
  return BasicLinOp<Real>(g, Space::HalfLinePos, Space::HalfLinePos, detail::kron_fiber<Real>(m, g.k_dim), true);
}

/// Matrix-free Omega_f psi.
inline StateVector omega_apply(const StateVector& psi) {
  require_space(psi, Space::HalfLinePos);
  return hardy_restrict(embed(psi));
}

/// (psi_t, M_F psi_t) = ||T_u(t) Omega_f psi||^2, without forming M_F.
inline double lyapunov_expectation(const StateVector& psi, LatticeTime t) {
  require_space(psi, Space::HalfLinePos);
  return norm2(toeplitz_step(omega_apply(psi), t));
}

struct TrajectoryReport {
  std::vector<double> times;
  std::vector<double> expectations;
  std::vector<double> norms;
  double guard_band_leakage = 0.0;
  double max_monotonicity_violation = 0.0;
  bool any_snapped = false;
};

inline TrajectoryReport lyapunov_curve(const StateVector& psi, const std::vector<LatticeTime>& times) {
  require_space(psi, Space::HalfLinePos);
  const auto& g = psi.grid();
  TrajectoryReport rep;
  rep.guard_band_leakage = guard_band_leakage(psi);
  const auto h = omega_apply(psi);
  for (const auto& t : times) {
    rep.times.push_back(t.value(g));
    rep.expectations.push_back(norm2(toeplitz_step(h, t)));
    rep.norms.push_back(norm(unitary_evolve(psi, t)));
    rep.any_snapped = rep.any_snapped || t.snapped;
  }
  for (std::size_t i = 1; i < rep.expectations.size(); ++i) {
    rep.max_monotonicity_violation =
        std::max(rep.max_monotonicity_violation, rep.expectations[i] - rep.expectations[i - 1]);
  }
  return rep;
}

/// psi in F_m  <=>  ||psi||^-2 (psi, M_F psi) <= m.
inline bool f_m_membership(const StateVector& psi, double m) {
  const double n2 = norm2(psi);
  if (!(n2 > 0.0)) throw error(errc::precondition, "F_m membership is undefined for the zero state");
  return lyapunov_expectation(psi, LatticeTime{}) / n2 <= m;
}

}  // namespace irrev
