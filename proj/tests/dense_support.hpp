#pragma once

#include <random>

#include "irrev/lambda.hpp"

namespace dense {

using namespace irrev;

// N = 512 keeps the long double eigensolve to a couple of seconds.
inline const Representation& shared_rep() {
  static const Representation rep = build_representation(make_grid(512, 25.0));
  return rep;
}

inline StateVector random_vec(const GridSpec& g, Space s, std::mt19937_64& rng) {
  std::normal_distribution<double> d;
  StateVector f(g, s);
  for (auto& a : f.amplitudes()) a = complex(d(rng), d(rng));
  return f;
}

// R* h for a Hardy state with an empty top band of `guard` bins.
inline StateVector guarded_state(const Representation& rep, std::mt19937_64& rng, std::size_t guard) {
  auto h = random_vec(rep.grid, Space::HardyPlus, rng);
  h.amplitudes().tail(static_cast<Eigen::Index>(guard * rep.grid.k_dim)).setZero();
  return apply(rep.isometry.adjoint(), h);
}

}  // namespace dense
