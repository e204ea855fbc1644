#pragma once

#include <cmath>
#include <random>

#include "irrev/hardy.hpp"

namespace irrev {

/// Random superposition of Gaussian wave packets in energy,
/// a exp(-(sigma - c)^2 / 2w^2) exp(i sigma tau0). Each packet's time profile
/// is a Gaussian of width 1/w centred at tau0. Centres keep `margin` widths
/// away from the edges of the sampled region (sigma = 0 and sigma = L for
/// HalfLinePos) so truncation is below roundoff.
struct PacketParams {
  int count = 3;
  double width_min = 0.5;
  double width_max = 1.0;
  double tau_min = 0.0;   // |tau0| lower bound
  double tau_max = 10.0;  // |tau0| upper bound
  double margin = 9.0;
};

inline StateVector wave_packets(const GridSpec& g, Space space, std::mt19937_64& rng, const PacketParams& p = {}) {
  if (space == Space::HardyPlus) throw error(errc::space_mismatch, "wave packets are sampled in energy");
  const double pad = p.margin * p.width_max;
  const double lo = space == Space::FullLine ? -g.sigma_max + pad : pad;
  const double hi = g.sigma_max - pad;
  if (!(hi > lo)) throw error(errc::precondition, "grid too short for the requested packet widths");
  std::uniform_real_distribution<double> centre(lo, hi), width(p.width_min, p.width_max), delay(p.tau_min, p.tau_max);
  std::normal_distribution<double> gauss;
  std::bernoulli_distribution sign;
  StateVector out(g, space);
  for (int i = 0; i < p.count; ++i) {
    const double c = centre(rng), w = width(rng);
    const double t0 = sign(rng) ? delay(rng) : -delay(rng);
    Vector v(static_cast<Eigen::Index>(g.k_dim));
    for (auto& x : v) x = complex(gauss(rng), gauss(rng));
    out += sample(
        g, space,
        [&](double s) {
          const double e = std::exp(-(s - c) * (s - c) / (2.0 * w * w));
          return e * complex(std::cos(s * t0), std::sin(s * t0));
        },
        v);
  }
  return out;
}

/// HardyPlus state with i.i.d. complex Gaussian time-profile samples on
/// 0 < tau < support and exact zeros beyond.
inline StateVector compact_hardy_state(const GridSpec& g, std::mt19937_64& rng, double support) {
  std::normal_distribution<double> gauss;
  StateVector out(g, Space::HardyPlus);
  for (std::size_t k = 0; k < g.half(); ++k) {
    if (g.tau(g.half() + k) >= support) break;
    for (std::size_t c = 0; c < g.k_dim; ++c) {
      out.amplitudes()(static_cast<Eigen::Index>(k * g.k_dim + c)) = complex(gauss(rng), gauss(rng));
    }
  }
  return out;
}

}  // namespace irrev
