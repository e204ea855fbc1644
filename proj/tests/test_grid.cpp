#include <gtest/gtest.h>

#include <numbers>

#include "irrev/grid.hpp"

using namespace irrev;

TEST(Grid, SmallGridArithmetic) {
  const auto g = make_grid(8, 4.0, 1);
  EXPECT_DOUBLE_EQ(g.delta_sigma, 1.0);
  EXPECT_DOUBLE_EQ(g.t_window, 2.0 * std::numbers::pi);
  EXPECT_DOUBLE_EQ(g.delta_tau, std::numbers::pi / 4.0);
}

TEST(Grid, DesktopGridSpacing) {
  const auto g = make_grid(1024, 100.0, 1);
  EXPECT_NEAR(g.delta_sigma, 0.1953, 1e-4);
}

TEST(Grid, RejectsBadInput) {
  EXPECT_THROW(make_grid(10, 4.0, 1), error);
  EXPECT_THROW(make_grid(4, 4.0, 1), error);
  EXPECT_THROW(make_grid(16, 0.0, 1), error);
  EXPECT_THROW(make_grid(16, -1.0, 1), error);
  EXPECT_THROW(make_grid(16, 1.0, 0), error);
}

TEST(Grid, Invariants) {
  for (std::size_t n : {8u, 64u, 4096u}) {
    for (double l : {0.5, 3.0, 100.0}) {
      const auto g = make_grid(n, l, 2);
      EXPECT_DOUBLE_EQ(g.delta_sigma * static_cast<double>(n), 2.0 * l);
      EXPECT_NEAR(g.delta_tau * g.delta_sigma, 2.0 * std::numbers::pi / static_cast<double>(n), 1e-15);
      // bin centering: no bin at the origin, symmetric about it
      EXPECT_DOUBLE_EQ(g.sigma(n / 2 - 1), -g.sigma(n / 2));
      EXPECT_DOUBLE_EQ(g.tau(n / 2 - 1), -g.tau(n / 2));
      EXPECT_GT(g.sigma(n / 2), 0.0);
      EXPECT_GT(g.tau(n / 2), 0.0);
    }
  }
}

TEST(Grid, LatticeTimes) {
  const auto g = make_grid(64, 8.0);
  const auto t = lattice_time(g, 5.0 * g.delta_tau);
  EXPECT_EQ(t.steps, 5);
  EXPECT_FALSE(t.snapped);
  EXPECT_THROW(lattice_time(g, 0.3 * g.delta_tau), error);
  const auto s = lattice_time(g, 2.6 * g.delta_tau, true);
  EXPECT_EQ(s.steps, 3);
  EXPECT_TRUE(s.snapped);
  EXPECT_THROW(require_window(g, steps(33)), error);
  EXPECT_NO_THROW(require_window(g, steps(32)));
}
