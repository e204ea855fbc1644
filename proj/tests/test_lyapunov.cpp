#include <gtest/gtest.h>

#include <Eigen/LU>
#include <cmath>
#include <numbers>
#include <random>

#include "irrev/lyapunov.hpp"
#include "irrev/states.hpp"

using namespace irrev;

namespace {

StateVector random_half(const GridSpec& g, std::mt19937_64& rng) {
  std::normal_distribution<double> d;
  StateVector f(g, Space::HalfLinePos);
  for (auto& a : f.amplitudes()) a = complex(d(rng), d(rng));
  return f;
}

// Omega_f column by column through the FFT route.
Matrix omega_columns(const GridSpec& g) {
  const auto n = static_cast<Eigen::Index>(g.half_size());
  Matrix m(n, n);
  for (Eigen::Index c = 0; c < n; ++c) {
    StateVector e(g, Space::HalfLinePos);
    e.amplitudes()(c) = 1.0;
    m.col(c) = omega_apply(e).amplitudes();
  }
  return m;
}

}  // namespace

TEST(Lyapunov, OmegaClosedFormMatchesSpectralRoute) {
  for (std::size_t kd : {1u, 2u}) {
    const auto g = make_grid(64, 4.0, kd);
    const auto om = build_omega(g);
    EXPECT_EQ(om.domain(), Space::HalfLinePos);
    EXPECT_EQ(om.codomain(), Space::HardyPlus);
    EXPECT_LE(residual<double>(om.matrix(), omega_columns(g)), 1e-13);
  }
}

TEST(Lyapunov, MFClosedFormIsOmegaGram) {
  const auto g = make_grid(128, 6.0, 2);
  const auto om = build_omega(g);
  const auto mf = build_m_f(g);
  EXPECT_TRUE(mf.hermitian());
  EXPECT_LE(mf.hermitian_residual(), 1e-15);
  EXPECT_LE(residual<double>(mf.matrix(), om.matrix().adjoint() * om.matrix()), 1e-13);
  // continuum limit of the off-diagonal entry at offset 1: i / pi
  const auto big = build_m_f(make_grid(1 << 12, 10.0));
  EXPECT_NEAR(big.matrix()(1, 0).imag(), 1.0 / std::numbers::pi, 1e-6);
  EXPECT_EQ(big.matrix()(2, 0), complex(0.0, 0.0));
}

TEST(Lyapunov, InjectivityCertificateMatchesLU) {
  for (std::size_t n : {8u, 16u, 32u}) {
    for (std::size_t kd : {1u, 2u}) {
      const auto g = make_grid(n, 2.0, kd);
      const auto cert = omega_injectivity(g);
      const double lu = std::log(std::abs(build_omega(g).matrix().partialPivLu().determinant()));
      const double scale = -0.5 * static_cast<double>(g.half_size()) * std::log(static_cast<double>(n));
      EXPECT_NEAR(cert.log_abs_det + scale, lu, 1e-9 * std::max(1.0, std::abs(lu)));
      EXPECT_TRUE(cert.injective);
    }
  }
}

TEST(Lyapunov, ExpectationMatchesDenseForm) {
  std::mt19937_64 rng(1);
  const auto g = make_grid(64, 4.0);
  const auto mf = build_m_f(g);
  for (int trial = 0; trial < 5; ++trial) {
    const auto psi = random_half(g, rng);
    const double dense = inner(psi, apply(mf, psi)).real();
    EXPECT_NEAR(lyapunov_expectation(psi, steps(0)), dense, 1e-12 * norm2(psi));
  }
  // for t > 0 the periodic window wraps the far past onto the top bins, so
  // compare on states with no profile there
  const auto h = make_grid(512, 40.0);
  const auto mh = build_m_f(h);
  for (int trial = 0; trial < 5; ++trial) {
    const auto psi = wave_packets(h, Space::HalfLinePos, rng, {2, 1.0, 2.0, 0.0, 4.0, 9.0});
    const auto pt = restrict(unitary_evolve(embed(psi), steps(5)));
    EXPECT_NEAR(lyapunov_expectation(psi, steps(5)), inner(pt, apply(mh, pt)).real(), 1e-12 * norm2(psi));
  }
}

TEST(Lyapunov, CurveIsMonotoneAndDecays) {
  std::mt19937_64 rng(2);
  const auto g = make_grid(4096, 100.0);
  std::vector<LatticeTime> times;
  for (std::int64_t m = 0; m <= static_cast<std::int64_t>(g.half()); m += 64) times.push_back(steps(m));
  const auto psi = wave_packets(g, Space::HalfLinePos, rng);
  const auto rep = lyapunov_curve(psi, times);
  EXPECT_LE(rep.max_monotonicity_violation, 1e-10);
  EXPECT_FALSE(rep.any_snapped);
  EXPECT_LE(rep.guard_band_leakage, 1e-12);
  for (double n : rep.norms) EXPECT_NEAR(n, norm(psi), 1e-12 * norm(psi));
  EXPECT_LE(rep.expectations.back(), 1e-6 * rep.expectations.front());
}

TEST(Lyapunov, FMembership) {
  const auto g = make_grid(512, 40.0);
  std::mt19937_64 rng(3);
  PacketParams late;
  late.tau_min = 5.0;
  late.tau_max = 8.0;
  late.count = 1;
  const auto psi = wave_packets(g, Space::HalfLinePos, rng, late);
  const double q = lyapunov_expectation(psi, steps(0)) / norm2(psi);
  EXPECT_TRUE(f_m_membership(psi, q + 1e-9));
  EXPECT_FALSE(f_m_membership(psi, q - 1e-3));
  EXPECT_TRUE(f_m_membership(psi, 1.0));
  EXPECT_THROW(f_m_membership(StateVector(g, Space::HalfLinePos), 0.5), error);
}
