#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "irrev/hardy.hpp"
#include "irrev/states.hpp"

using namespace irrev;

namespace {

StateVector random_state(const GridSpec& g, std::mt19937_64& rng) {
  std::normal_distribution<double> d;
  StateVector f(g, Space::FullLine);
  for (auto& a : f.amplitudes()) a = complex(d(rng), d(rng));
  return f;
}

// g(tau_k) = (2 pi)^{-1/2} sum_j exp(-i sigma_j tau_k) f(sigma_j) dsigma
Vector direct_dft(const StateVector& f) {
  const auto& g = f.grid();
  Vector out = Vector::Zero(static_cast<Eigen::Index>(g.full_size()));
  const double w = g.delta_sigma / std::sqrt(2.0 * std::numbers::pi);
  for (std::size_t k = 0; k < g.n_sigma; ++k)
    for (std::size_t j = 0; j < g.n_sigma; ++j) {
      const double a = g.sigma(j) * g.tau(k);
      for (std::size_t c = 0; c < g.k_dim; ++c)
        out(static_cast<Eigen::Index>(k * g.k_dim + c)) +=
            w * complex(std::cos(a), -std::sin(a)) * f.amplitudes()(static_cast<Eigen::Index>(j * g.k_dim + c));
    }
  return out;
}

double rel(const StateVector& a, const StateVector& b) { return norm(a - b) / norm(b); }

}  // namespace

TEST(Hardy, TransformMatchesDirectSum) {
  std::mt19937_64 rng(1);
  for (std::size_t n : {8u, 64u}) {
    const auto g = make_grid(n, 3.0, 2);
    const auto f = random_state(g, rng);
    const auto p = to_time(f);
    EXPECT_LE((p.samples - direct_dft(f)).norm() / p.samples.norm(), 1e-13);
    EXPECT_NEAR(p.norm2(), norm2(f), 1e-12 * norm2(f));
    EXPECT_LE(rel(from_time(p), f), 1e-13);
  }
}

TEST(Hardy, GaussianIsSelfDual) {
  const auto g = make_grid(512, 20.0);
  const auto f = sample(g, Space::FullLine, [](double s) { return complex(std::exp(-0.5 * s * s), 0.0); }, unit_fiber(g));
  const auto p = to_time(f);
  double err = 0.0;
  for (std::size_t k = 0; k < g.n_sigma; ++k) {
    const double t = g.tau(k);
    err = std::max(err, std::abs(p.samples(static_cast<Eigen::Index>(k)) - std::exp(-0.5 * t * t)));
  }
  EXPECT_LE(err, 1e-12);
}

TEST(Hardy, ProjectionAlgebra) {
  std::mt19937_64 rng(2);
  const auto g = make_grid(256, 10.0, 2);
  for (int trial = 0; trial < 10; ++trial) {
    const auto f = random_state(g, rng);
    const auto h = random_state(g, rng);
    const auto pf = hardy_project(f, Half::Plus);
    const auto mf = hardy_project(f, Half::Minus);
    EXPECT_LE(norm(hardy_project(pf, Half::Plus) - pf), 1e-12 * norm(f));
    EXPECT_LE(norm(pf + mf - f), 1e-12 * norm(f));
    EXPECT_LE(std::abs(inner(pf, mf)), 1e-12 * norm2(f));
    EXPECT_LE(std::abs(inner(h, pf) - inner(hardy_project(h, Half::Plus), f)), 1e-12 * norm(f) * norm(h));
  }
}

TEST(Hardy, RestrictEmbedRoundTrip) {
  std::mt19937_64 rng(3);
  const auto g = make_grid(128, 5.0, 3);
  const auto f = random_state(g, rng);
  const auto h = hardy_restrict(f);
  EXPECT_EQ(h.space(), Space::HardyPlus);
  EXPECT_NEAR(norm2(h), norm2(hardy_project(f, Half::Plus)), 1e-12 * norm2(f));
  EXPECT_LE(rel(hardy_embed(h), hardy_project(f, Half::Plus)), 1e-13);
  EXPECT_LE(norm(hardy_restrict(hardy_embed(h)) - h), 1e-13 * norm(h));
}

TEST(Hardy, SimplePoleTimeProfile) {
  // 1/(sigma - mu) <-> -i sqrt(2 pi) exp(-i mu tau) on tau > 0
  const auto g = make_grid(4096, 100.0);
  const complex mu(0.0, -1.0);
  const auto f = rational_hardy(g, {{mu, 1}}, unit_fiber(g));
  const auto p = to_time(f);
  for (double t : {1.0, 2.0, 4.0}) {
    const auto k = static_cast<std::size_t>(std::floor(t / g.delta_tau + static_cast<double>(g.half())));
    const double tk = g.tau(k);
    const complex expect = complex(0.0, -std::sqrt(2.0 * std::numbers::pi)) * std::exp(complex(0.0, -1.0) * mu * tk);
    EXPECT_LE(std::abs(p.samples(static_cast<Eigen::Index>(k)) - expect), 0.02);
  }
  // int_{-L}^{L} dsigma / (1 + sigma^2) = 2 atan(L)
  EXPECT_NEAR(norm2(f), 2.0 * std::atan(g.sigma_max), 1e-6);
}

TEST(Hardy, RationalMembershipImprovesWithWindow) {
  double prev1 = 1.0, prev2 = 1.0;
  for (double l : {25.0, 50.0, 100.0}) {
    const auto g = make_grid(static_cast<std::size_t>(l * 1024 / 25), l);
    for (int order : {1, 2}) {
      const auto f = rational_hardy(g, {{complex(0.0, -1.0), order}}, unit_fiber(g));
      const double e = rel(hardy_project(f, Half::Plus), f);
      double& prev = order == 1 ? prev1 : prev2;
      EXPECT_LT(e, prev);
      prev = e;
    }
  }
  EXPECT_LE(prev1, 0.05);
  EXPECT_LE(prev2, 0.012);
}

TEST(Hardy, LowerPoleIsRejected) {
  const auto g = make_grid(64, 5.0);
  EXPECT_THROW(rational_hardy(g, {{complex(0.0, 1.0), 1}}, unit_fiber(g)), error);
  EXPECT_THROW(rational_hardy(g, {{complex(0.0, -1.0), 3}}, unit_fiber(g)), error);
  EXPECT_THROW(rational_hardy(g, {}, unit_fiber(g)), error);
}

TEST(Hardy, QuadratureOracleAgrees) {
  std::mt19937_64 rng(4);
  const auto g = make_grid(1024, 50.0);
  PacketParams pp;
  pp.width_min = 1.0;
  pp.width_max = 2.0;
  pp.tau_min = 6.0;
  pp.tau_max = 12.0;
  pp.margin = 6.0;
  for (int trial = 0; trial < 5; ++trial) {
    const auto f = wave_packets(g, Space::FullLine, rng, pp);
    // relative to ||f||: P+ f nearly vanishes for packets delayed into tau < 0
    EXPECT_LE(norm(hardy_project_oracle(f) - hardy_project(f, Half::Plus)) / norm(f), 1e-3);
  }
}

TEST(Hardy, GuardBandLeakage) {
  const auto g = make_grid(256, 10.0);
  TimeProfile p{g, Vector::Zero(256)};
  p.samples(0) = 1.0;    // tau = -t_window/2 + dtau/2
  p.samples(128) = 1.0;  // tau = dtau/2
  EXPECT_DOUBLE_EQ(guard_band_leakage(p), 0.5);
  std::mt19937_64 rng(5);
  EXPECT_LE(guard_band_leakage(wave_packets(g, Space::FullLine, rng)), 1e-12);
}
