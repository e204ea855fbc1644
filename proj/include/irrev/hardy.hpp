#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "irrev/fft.hpp"
#include "irrev/state.hpp"

namespace irrev {

/// Unitary time profile of a full-line state on the dual lattice.
/// Parseval: sum |samples|^2 dtau = ||f||^2.
struct TimeProfile {
  GridSpec grid;
  Vector samples;

  double norm2() const { return samples.squaredNorm() * grid.delta_tau; }
};

namespace detail {

// q_j = exp(-2 pi i c j / N) with c = 1/2 - N/2, reduced exactly.
inline std::vector<complex> chirp(std::size_t n) {
  std::vector<complex> q(n);
  const double nn = static_cast<double>(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double a = std::numbers::pi * static_cast<double>(j) / nn;
    const double s = (j % 2 == 0) ? 1.0 : -1.0;
    q[j] = complex(s * std::cos(a), -s * std::sin(a));
  }
  return q;
}

inline complex chirp_const(std::size_t n) {
  const double a = std::numbers::pi / (2.0 * static_cast<double>(n));
  return -complex(std::cos(a), -std::sin(a));
}

}  // namespace detail

/// f(sigma) = (2 pi)^{-1/2} int exp(+i sigma tau) g(tau) dtau, discretized
/// as a unitary DFT between bin-centered sigma and cell-centered tau.
inline TimeProfile to_time(const StateVector& f) {
  require_space(f, Space::FullLine);
  const auto& g = f.grid();
  const std::size_t n = g.n_sigma, kd = g.k_dim;
  const auto q = detail::chirp(n);
  const complex c = detail::chirp_const(n);
  const double scale = std::sqrt(g.delta_sigma / g.delta_tau / static_cast<double>(n));
  TimeProfile p{g, Vector(static_cast<Eigen::Index>(n * kd))};
  std::vector<complex> buf(n);
  for (std::size_t fib = 0; fib < kd; ++fib) {
    for (std::size_t j = 0; j < n; ++j) buf[j] = f.amplitudes()(static_cast<Eigen::Index>(j * kd + fib)) * q[j];
    detail::fft_forward(buf);
    for (std::size_t k = 0; k < n; ++k) {
      p.samples(static_cast<Eigen::Index>(k * kd + fib)) = scale * c * q[k] * buf[k];
    }
  }
  return p;
}

inline StateVector from_time(const TimeProfile& p) {
  const auto& g = p.grid;
  const std::size_t n = g.n_sigma, kd = g.k_dim;
  if (static_cast<std::size_t>(p.samples.size()) != n * kd) {
    throw error(errc::grid_mismatch, "time profile length does not match its grid");
  }
  const auto q = detail::chirp(n);
  const complex c = std::conj(detail::chirp_const(n));
  const double scale = std::sqrt(g.delta_tau / g.delta_sigma / static_cast<double>(n));
  StateVector f(g, Space::FullLine);
  std::vector<complex> buf(n);
  for (std::size_t fib = 0; fib < kd; ++fib) {
    for (std::size_t k = 0; k < n; ++k) buf[k] = p.samples(static_cast<Eigen::Index>(k * kd + fib)) * std::conj(q[k]);
    detail::fft_backward(buf);
    for (std::size_t j = 0; j < n; ++j) {
      f.amplitudes()(static_cast<Eigen::Index>(j * kd + fib)) = scale * c * std::conj(q[j]) * buf[j];
    }
  }
  return f;
}

enum class Half { Plus, Minus };

/// P+ keeps the tau > 0 half of the time profile, P- the tau < 0 half.
inline StateVector hardy_project(const StateVector& f, Half half) {
  require_space(f, Space::FullLine);
  auto p = to_time(f);
  const auto h = static_cast<Eigen::Index>(f.grid().half_size());
  if (half == Half::Plus) {
    p.samples.head(h).setZero();
  } else {
    p.samples.tail(h).setZero();
  }
  return from_time(p);
}

/// Full-line state -> HardyPlus coordinates of P+ f.
inline StateVector hardy_restrict(const StateVector& f) {
  require_space(f, Space::FullLine);
  const auto& g = f.grid();
  const auto p = to_time(f);
  const double s = std::sqrt(g.delta_tau / g.delta_sigma);
  return StateVector(g, Space::HardyPlus, s * p.samples.tail(static_cast<Eigen::Index>(g.half_size())));
}

/// HardyPlus coordinates -> the full-line boundary function.
inline StateVector hardy_embed(const StateVector& f) {
  require_space(f, Space::HardyPlus);
  const auto& g = f.grid();
  TimeProfile p{g, Vector::Zero(static_cast<Eigen::Index>(g.full_size()))};
  p.samples.tail(static_cast<Eigen::Index>(g.half_size())) = f.amplitudes() * std::sqrt(g.delta_sigma / g.delta_tau);
  return from_time(p);
}

/// Independent O(N^2) route: P+ f = f/2 + (i/2) H f with the principal-value
/// Hilbert transform H f(x) = (1/pi) PV int f(y) / (x - y) dy, evaluated by
/// the odd-neighbour rule (exact for band-limited inputs).
inline StateVector hardy_project_oracle(const StateVector& f) {
  require_space(f, Space::FullLine);
  const auto& g = f.grid();
  const std::size_t n = g.n_sigma, kd = g.k_dim;
  const auto& a = f.amplitudes();
  StateVector out(g, Space::FullLine);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t fib = 0; fib < kd; ++fib) {
      complex acc = 0.0;
      // j - k odd
      for (std::size_t k = (j % 2 == 0) ? 1 : 0; k < n; k += 2) {
        const double d = static_cast<double>(j) - static_cast<double>(k);
        acc += a(static_cast<Eigen::Index>(k * kd + fib)) / d;
      }
      const complex hf = (2.0 / std::numbers::pi) * acc;
      const auto idx = static_cast<Eigen::Index>(j * kd + fib);
      out.amplitudes()(idx) = 0.5 * a(idx) + complex(0.0, 0.5) * hf;
    }
  }
  return out;
}

struct Pole {
  complex mu;
  int order = 1;
};

/// sum over poles of v / (sigma - mu)^order; every pole must lie in the
/// lower half-plane so the result is (up to truncation) in H^2_+.
inline StateVector rational_hardy(const GridSpec& g, const std::vector<Pole>& poles, const Vector& v) {
  if (poles.empty()) throw error(errc::invalid_argument, "at least one pole required");
  for (const auto& p : poles) {
    if (!(p.mu.imag() < 0.0)) throw error(errc::precondition, "pole must satisfy Im mu < 0");
    if (p.order != 1 && p.order != 2) throw error(errc::invalid_argument, "pole order must be 1 or 2");
  }
  return sample(
      g, Space::FullLine,
      [&](double s) {
        complex acc = 0.0;
        for (const auto& p : poles) {
          const complex d = complex(s, 0.0) - p.mu;
          acc += p.order == 1 ? 1.0 / d : 1.0 / (d * d);
        }
        return acc;
      },
      v);
}

/// Fraction of the time-profile norm^2 carried by |tau| >= 0.4 t_window,
/// i.e. the outer 10% of the window at each end.
inline double guard_band_leakage(const TimeProfile& p) {
  const auto& g = p.grid;
  const double edge = 0.4 * g.t_window;
  double outer = 0.0, total = 0.0;
  for (std::size_t k = 0; k < g.n_sigma; ++k) {
    double w = 0.0;
    for (std::size_t fib = 0; fib < g.k_dim; ++fib) w += std::norm(p.samples(static_cast<Eigen::Index>(k * g.k_dim + fib)));
    total += w;
    if (std::abs(g.tau(k)) >= edge) outer += w;
  }
  return total > 0.0 ? outer / total : 0.0;
}

inline double guard_band_leakage(const StateVector& f) {
  switch (f.space()) {
    case Space::FullLine: return guard_band_leakage(to_time(f));
    case Space::HalfLinePos: return guard_band_leakage(to_time(embed(f)));
    case Space::HardyPlus: return guard_band_leakage(to_time(hardy_embed(f)));
  }
  return 0.0;
}

}  // namespace irrev
