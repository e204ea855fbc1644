#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "irrev/evolution.hpp"
#include "irrev/states.hpp"

using namespace irrev;

namespace {

StateVector random_hardy(const GridSpec& g, std::mt19937_64& rng) {
  std::normal_distribution<double> d;
  StateVector f(g, Space::HardyPlus);
  for (auto& a : f.amplitudes()) a = complex(d(rng), d(rng));
  return f;
}

// T_u(t) on HardyPlus coordinates is a left shift by m bins with zero fill.
StateVector shift_oracle(const StateVector& f, std::int64_t m) {
  const auto& g = f.grid();
  StateVector out(g, Space::HardyPlus);
  const auto kd = static_cast<Eigen::Index>(g.k_dim);
  const auto n = static_cast<Eigen::Index>(g.half());
  for (Eigen::Index k = 0; k + m < n; ++k) out.amplitudes().segment(k * kd, kd) = f.amplitudes().segment((k + m) * kd, kd);
  return out;
}

}  // namespace

TEST(Evolution, UnitaryPhase) {
  const auto g = make_grid(64, 8.0, 2);
  std::mt19937_64 rng(1);
  const auto f = wave_packets(g, Space::FullLine, rng, {1, 0.3, 0.5, 0.0, 1.0, 3.0});
  for (std::int64_t m : {0, 1, 7, 32, 100}) {
    const auto a = unitary_evolve(f, steps(m));
    const auto b = unitary_evolve(f, static_cast<double>(m) * g.delta_tau);
    EXPECT_LE(norm(a - b), 1e-12 * norm(f) * std::max<double>(1, static_cast<double>(m)));
    EXPECT_NEAR(norm(a), norm(f), 1e-13 * norm(f));
  }
  const auto c = unitary_evolve(f, steps(0));
  EXPECT_EQ(c.amplitudes(), f.amplitudes());
  // u(t) u(-t) = I
  EXPECT_LE(norm(unitary_evolve_back(unitary_evolve(f, steps(5)), steps(5)) - f), 1e-13 * norm(f));
  // phase on a single bin
  const double t = 0.37;
  const auto e = unitary_evolve(f, t);
  const complex expect = f.amplitudes()(10) * std::exp(complex(0.0, -g.sigma(5) * t));
  EXPECT_LE(std::abs(e.amplitudes()(10) - expect), 1e-14);
}

TEST(Evolution, ToeplitzIsTruncatedShift) {
  std::mt19937_64 rng(2);
  const auto g = make_grid(128, 6.0, 2);
  const auto f = random_hardy(g, rng);
  for (std::int64_t m : {0, 1, 5, 31, 64}) {
    EXPECT_LE(norm(toeplitz_step(f, steps(m)) - shift_oracle(f, m)), 1e-12 * norm(f));
  }
}

TEST(Evolution, ToeplitzSemigroupAndAdjoint) {
  std::mt19937_64 rng(3);
  const auto g = make_grid(256, 12.0);
  for (int trial = 0; trial < 5; ++trial) {
    const auto f = random_hardy(g, rng);
    const auto h = random_hardy(g, rng);
    for (std::int64_t s : {0, 3, 20}) {
      for (std::int64_t t : {0, 9, 60}) {
        const auto lhs = toeplitz_step(toeplitz_step(f, steps(s)), steps(t));
        EXPECT_LE(norm(lhs - toeplitz_step(f, steps(s + t))), 1e-12 * norm(f));
      }
      const auto a = inner(h, toeplitz_step(f, steps(s)));
      const auto b = inner(toeplitz_adjoint(h, steps(s)), f);
      EXPECT_LE(std::abs(a - b), 1e-12 * norm(f) * norm(h));
      EXPECT_LE(norm(toeplitz_step(f, steps(s))), norm(f) * (1.0 + 1e-13));
    }
  }
}

TEST(Evolution, CoIsometryOnGuardBand) {
  std::mt19937_64 rng(4);
  const auto g = make_grid(256, 12.0);
  const std::int64_t m = 40;
  auto f = random_hardy(g, rng);
  f.amplitudes().tail(m).setZero();
  const auto tt = toeplitz_step(toeplitz_adjoint(f, steps(m)), steps(m));
  EXPECT_LE(norm(tt - f), 1e-12 * norm(f));
  // without the guard band the top bins are lost
  const auto full = random_hardy(g, rng);
  EXPECT_GT(norm(toeplitz_step(toeplitz_adjoint(full, steps(m)), steps(m)) - full), 0.1 * norm(full));
}

TEST(Evolution, WindowAndSpaceChecks) {
  const auto g = make_grid(64, 4.0);
  StateVector h(g, Space::HardyPlus), f(g, Space::FullLine);
  EXPECT_THROW(toeplitz_step(h, steps(33)), error);
  EXPECT_THROW(toeplitz_step(h, steps(-1)), error);
  EXPECT_THROW(toeplitz_step(f, steps(1)), error);
  EXPECT_EQ(unitary_evolve(h, steps(1)).space(), Space::FullLine);
}

TEST(Evolution, KernelWitness) {
  const auto g = make_grid(4096, 100.0);
  const auto t0 = lattice_time(g, 1.0, true);
  EXPECT_TRUE(t0.snapped);
  const auto f = kernel_witness(g, complex(0.0, -1.0), t0, unit_fiber(g));
  const double n = norm(f);
  // time profile -i sqrt(2 pi) exp(-tau) on (0, t0): norm^2 = pi (1 - e^{-2 t0})
  const double t = t0.value(g);
  EXPECT_NEAR(norm2(f) / (2.0 * std::numbers::pi), 0.5 * (1.0 - std::exp(-2.0 * t)), 0.02 * 0.43233);
  EXPECT_LE(norm(toeplitz_step(f, t0)) / n, 0.05);
  const auto half = lattice_time(g, 0.5, true);
  const double oracle = std::sqrt((std::exp(-2.0 * half.value(g)) - std::exp(-2.0 * t)) / (1.0 - std::exp(-2.0 * t)));
  EXPECT_NEAR(norm(toeplitz_step(f, half)) / n, oracle, 0.01);
  EXPECT_THROW(kernel_witness(g, complex(0.0, 1.0), t0, unit_fiber(g)), error);
}
