#pragma once

#include <bit>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <string>

#include "irrev/error.hpp"

namespace irrev {

using complex = std::complex<double>;

/// Uniform discretization of the energy line and its dual time lattice.
///
/// Energy bins are centered, sigma_j = -L + (j + 1/2) dsigma, so no bin sits
/// on sigma = 0. Time samples are centered the same way,
/// tau_k = (k - N/2 + 1/2) dtau, so no sample sits on the Hardy cut tau = 0.
/// Shifts by lattice times t = m dtau are exact index shifts.
struct GridSpec {
  std::size_t n_sigma = 0;
  double sigma_max = 0.0;
  std::size_t k_dim = 1;
  double delta_sigma = 0.0;
  double t_window = 0.0;
  double delta_tau = 0.0;

  std::size_t half() const noexcept { return n_sigma / 2; }
  std::size_t full_size() const noexcept { return n_sigma * k_dim; }
  std::size_t half_size() const noexcept { return half() * k_dim; }

  double sigma(std::size_t j) const noexcept {
    return -sigma_max + (static_cast<double>(j) + 0.5) * delta_sigma;
  }
  double tau(std::size_t k) const noexcept {
    return (static_cast<double>(k) - static_cast<double>(half()) + 0.5) * delta_tau;
  }

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

inline GridSpec make_grid(std::size_t n_sigma, double sigma_max, std::size_t k_dim = 1) {
  if (n_sigma < 8 || !std::has_single_bit(n_sigma)) {
    throw error(errc::invalid_argument,
                "n_sigma must be a power of two >= 8, got " + std::to_string(n_sigma));
  }
  if (!(sigma_max > 0.0) || !std::isfinite(sigma_max)) {
    throw error(errc::invalid_argument, "sigma_max must be positive and finite");
  }
  if (k_dim < 1) {
    throw error(errc::invalid_argument, "k_dim must be >= 1");
  }
  GridSpec g;
  g.n_sigma = n_sigma;
  g.sigma_max = sigma_max;
  g.k_dim = k_dim;
  g.delta_sigma = 2.0 * sigma_max / static_cast<double>(n_sigma);
  g.t_window = 2.0 * std::numbers::pi / g.delta_sigma;
  g.delta_tau = g.t_window / static_cast<double>(n_sigma);
  return g;
}

/// Non-negative time on the dual lattice, t = steps * delta_tau.
struct LatticeTime {
  std::int64_t steps = 0;
  bool snapped = false;

  double value(const GridSpec& g) const noexcept {
    return static_cast<double>(steps) * g.delta_tau;
  }
  friend bool operator==(const LatticeTime& a, const LatticeTime& b) noexcept {
    return a.steps == b.steps;
  }
};

inline LatticeTime steps(std::int64_t m) { return LatticeTime{m, false}; }

/// Maps a real time onto the lattice. Off-lattice values throw unless
/// `snap` is set, in which case the nearest lattice time is returned with
/// its `snapped` flag raised.
inline LatticeTime lattice_time(const GridSpec& g, double t, bool snap = false) {
  if (!std::isfinite(t)) throw error(errc::invalid_argument, "time must be finite");
  const double x = t / g.delta_tau;
  const double r = std::nearbyint(x);
  const bool on = std::abs(x - r) <= 1e-9 * std::max(1.0, std::abs(x));
  if (!on && !snap) {
    throw error(errc::off_lattice, "t = " + std::to_string(t) + " (dtau = " +
                                       std::to_string(g.delta_tau) + ")");
  }
  return LatticeTime{static_cast<std::int64_t>(r), !on};
}

inline void require_window(const GridSpec& g, LatticeTime t) {
  if (t.steps < 0) throw error(errc::precondition, "lattice time must be >= 0");
  if (t.steps > static_cast<std::int64_t>(g.half())) {
    throw error(errc::precondition, "lattice time exceeds t_window/2");
  }
}

}  // namespace irrev
