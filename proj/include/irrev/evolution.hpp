#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

#include "irrev/hardy.hpp"

namespace irrev {

namespace detail {

inline StateVector apply_phase(const StateVector& f, auto&& phase_of_bin) {
  const auto& g = f.grid();
  StateVector out = f;
  const std::size_t first = f.space() == Space::FullLine ? 0 : g.half();
  const std::size_t bins = f.size() / g.k_dim;
  for (std::size_t j = 0; j < bins; ++j) {
    const complex ph = phase_of_bin(first + j);
    for (std::size_t c = 0; c < g.k_dim; ++c) out.amplitudes()(static_cast<Eigen::Index>(j * g.k_dim + c)) *= ph;
  }
  return out;
}

inline StateVector lift_hardy(const StateVector& f) {
  return f.space() == Space::HardyPlus ? hardy_embed(f) : f;
}

}  // namespace detail

/// [u(t) f](sigma) = exp(-i sigma t) f(sigma). HardyPlus input is lifted to
/// the full line first, since u(t) does not preserve H^2_+ for t > 0.
inline StateVector unitary_evolve(const StateVector& f, double t) {
  const StateVector base = detail::lift_hardy(f);
  const auto& g = base.grid();
  return detail::apply_phase(base, [&](std::size_t j) {
    const double a = g.sigma(j) * t;
    return complex(std::cos(a), -std::sin(a));
  });
}

/// Lattice-time overload with exact argument reduction:
/// sigma_j * m * dtau = 2 pi (2j + 1 - N) m / (2N).
inline StateVector unitary_evolve(const StateVector& f, LatticeTime t) {
  const StateVector base = detail::lift_hardy(f);
  const auto& g = base.grid();
  const auto two_n = static_cast<std::int64_t>(2 * g.n_sigma);
  return detail::apply_phase(base, [&](std::size_t j) {
    const std::int64_t r = (static_cast<std::int64_t>(2 * j + 1) - static_cast<std::int64_t>(g.n_sigma)) % two_n;
    std::int64_t k = (r * (t.steps % two_n)) % two_n;
    if (k < 0) k += two_n;
    const double a = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(two_n);
    return complex(std::cos(a), -std::sin(a));
  });
}

inline StateVector unitary_evolve_back(const StateVector& f, LatticeTime t) {
  return unitary_evolve(f, LatticeTime{-t.steps, t.snapped});
}

/// T_u(t) f = P+ u(t) f on H^2_+, evaluated spectrally.
inline StateVector toeplitz_step(const StateVector& f, LatticeTime t) {
  require_space(f, Space::HardyPlus);
  require_window(f.grid(), t);
  return hardy_restrict(unitary_evolve(hardy_embed(f), t));
}

/// (T_u(t))* g = P+ u(-t) g, the exact adjoint of toeplitz_step in the
/// discrete model. Isometric on states with an empty top guard band.
inline StateVector toeplitz_adjoint(const StateVector& f, LatticeTime t) {
  require_space(f, Space::HardyPlus);
  require_window(f.grid(), t);
  return hardy_restrict(unitary_evolve_back(hardy_embed(f), t));
}

/// f(sigma) = (sigma - mu)^{-1} [1 - exp(i sigma t0) exp(-i mu t0)] v, whose
/// time profile -i exp(-i mu tau) v lives on [0, t0]; f lies in
/// Ker T_u(t) for every t >= t0.
inline StateVector kernel_witness(const GridSpec& g, complex mu, LatticeTime t0, const Vector& v) {
  if (!(mu.imag() < 0.0)) throw error(errc::precondition, "kernel witness needs Im mu < 0");
  if (t0.steps <= 0) throw error(errc::precondition, "kernel witness needs t0 > 0");
  require_window(g, t0);
  const double t = t0.value(g);
  const complex damp = std::exp(complex(0.0, -1.0) * mu * t);
  const auto f = sample(
      g, Space::FullLine,
      [&](double s) {
        const complex shift(std::cos(s * t), std::sin(s * t));
        return (1.0 - shift * damp) / (complex(s, 0.0) - mu);
      },
      v);
  return hardy_restrict(f);
}

}  // namespace irrev
