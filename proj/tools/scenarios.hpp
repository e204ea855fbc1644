#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "config.hpp"
#include "output.hpp"
#include "selftest.hpp"

namespace cli {

struct RunResult {
  Table table;
  json summary = json::object();
  bool violation = false;
};

namespace detail {

inline std::vector<LatticeTime> time_grid(const GridSpec& g, const Config& c) {
  std::vector<LatticeTime> out;
  for (std::size_t k = 0; k <= c.n_steps; ++k) {
    const double t = c.t_max * static_cast<double>(k) / static_cast<double>(c.n_steps);
    try {
      const auto lt = lattice_time(g, t, c.snap_times);
      require_window(g, lt);
      out.push_back(lt);
    } catch (const irrev::error& e) {
      throw config_error("times.t_max", e.what());
    }
  }
  return out;
}

// Snapping can map neighbours onto one lattice point; families need strict order.
inline std::vector<LatticeTime> strictly_increasing(std::vector<LatticeTime> t) {
  t.erase(std::unique(t.begin(), t.end()), t.end());
  return t;
}

inline LatticeTime witness_time(const GridSpec& g, const Config& c) {
  try {
    const auto t = lattice_time(g, c.t0, c.snap_times);
    require_window(g, t);
    return t;
  } catch (const irrev::error& e) {
    throw config_error("state.parameters.t0", e.what());
  }
}

inline PacketParams packet_params(const Config& c) { return c.kind == StateKind::Random ? c.packets : PacketParams{}; }

// The configured state in HardyPlus coordinates: the Hardy part of a
// rational function, the kernel witness, or Omega_f of random packets.
inline StateVector hardy_state(const Config& c, const GridSpec& g, std::mt19937_64& rng) {
  const Vector v = unit_fiber(g);
  switch (c.kind) {
    case StateKind::Rational: {
      std::vector<Pole> poles;
      for (const auto& p : c.poles) poles.push_back({complex(p.re, p.im), p.order});
      return hardy_restrict(rational_hardy(g, poles, v));
    }
    case StateKind::Witness:
      return kernel_witness(g, complex(c.mu_re, c.mu_im), witness_time(g, c), v);
    case StateKind::Random:
      try {
        return omega_apply(wave_packets(g, Space::HalfLinePos, rng, c.packets));
      } catch (const irrev::error& e) {
        throw config_error("state.parameters", e.what());
      }
  }
  return StateVector(g, Space::HardyPlus);
}

inline const char* kind_class(const Config& c) {
  return c.kind == StateKind::Random ? to_string(Tier::Algebraic) : to_string(Tier::Continuum);
}

}  // namespace detail

inline RunResult lyapunov_curve_cmd(const Config& c) {
  const auto g = c.grid();
  std::mt19937_64 rng(c.seed);
  const auto h = detail::hardy_state(c, g, rng);
  const auto times = detail::time_grid(g, c);
  RunResult r{Table({"t", "steps", "snapped", "expectation", "ratio", "tolerance_class"})};
  const double e0 = norm2(h);
  double prev = e0, violation = 0.0;
  for (const auto& t : times) {
    const double e = norm2(toeplitz_step(h, t));
    violation = std::max(violation, e - prev);
    prev = e;
    r.table.row().add(t.value(g)).add(t.steps).add(t.snapped ? "1" : "0").add(e).add(e0 > 0 ? e / e0 : 0.0).add(
        detail::kind_class(c));
  }
  r.summary["initial_expectation"] = e0;
  r.summary["max_monotonicity_violation"] = violation;
  r.summary["guard_band_leakage"] = guard_band_leakage(h);
  r.violation = violation > c.tol_algebraic * e0;
  return r;
}

inline RunResult semigroup_norms_cmd(const Config& c) {
  const auto g = c.grid();
  const auto dg = c.dense_grid();
  std::mt19937_64 rng(c.seed);
  const auto h = detail::hardy_state(c, g, rng);
  std::mt19937_64 rng_d(c.seed);
  const auto hd = detail::hardy_state(c, dg, rng_d);
  const auto rep = build_representation(dg);
  const auto psi = apply(rep.isometry.adjoint(), hd);
  const auto times = detail::time_grid(dg, c);
  (void)detail::time_grid(g, c);
  const auto f = hardy_embed(h);
  RunResult r{Table({"t", "steps", "toeplitz", "toeplitz_adjoint", "unitary", "z", "z_adjoint", "tolerance_class"})};
  double worst_contraction = 0.0, worst_unitary = 0.0;
  for (const auto& t : times) {
    const double a = norm(toeplitz_step(h, t)) / norm(h);
    const double b = norm(toeplitz_adjoint(h, t)) / norm(h);
    const double u = norm(unitary_evolve(f, t)) / norm(f);
    const double z = norm(z_evolve(rep, psi, t)) / norm(psi);
    const double zs = norm(z_adjoint(rep, psi, t)) / norm(psi);
    worst_contraction = std::max({worst_contraction, a - 1.0, b - 1.0, z - 1.0, zs - 1.0});
    worst_unitary = std::max(worst_unitary, std::abs(u - 1.0));
    r.table.row().add(t.value(g)).add(t.steps).add(a).add(b).add(u).add(z).add(zs).add(to_string(Tier::Algebraic));
  }
  r.summary["max_norm_excess"] = worst_contraction;
  r.summary["max_unitarity_defect"] = worst_unitary;
  r.violation = worst_contraction > c.tol_algebraic || worst_unitary > c.tol_algebraic;
  return r;
}

inline RunResult projection_family_cmd(const Config& c) {
  const auto dg = c.dense_grid();
  const auto rep = build_representation(dg);
  const auto times = detail::strictly_increasing(detail::time_grid(dg, c));
  const auto fam = spectral_measure(rep, times);
  const Matrix& g = fam.guard.matrix();
  RunResult r{Table({"t", "steps", "rank", "idempotency", "complement", "nesting", "increment_min_eig",
                     "tolerance_class"})};
  double worst = 0.0, worst_nest = 0.0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    const Matrix& p = fam.projections[i].matrix();
    const Matrix fut = g * future_projection(rep, times[i]).matrix() * g;
    const double idem = (p * p - p).norm() / std::max(1.0, p.norm());
    const double comp = (p + fut - g).norm() / std::max(1.0, g.norm());
    double nest = 0.0, inc = 0.0;
    if (i + 1 < times.size()) {
      nest = (p * fam.projections[i + 1].matrix() - p).norm() / std::max(1.0, p.norm());
      Eigen::SelfAdjointEigenSolver<Matrix> es(fam.increments[i].matrix(), Eigen::EigenvaluesOnly);
      inc = es.eigenvalues().minCoeff();
    }
    const auto rank = projection_rank(fam.projections[i]).rank;
    worst = std::max({worst, idem, comp, -inc});
    worst_nest = std::max(worst_nest, nest);
    r.table.row()
        .add(times[i].value(dg))
        .add(times[i].steps)
        .add(static_cast<std::int64_t>(rank))
        .add(idem)
        .add(comp)
        .add(nest)
        .add(inc)
        .add(to_string(Tier::Algebraic));
  }
  if (fam.increments.size() > 0) {
    const auto t = assemble_T(fam);
    Eigen::SelfAdjointEigenSolver<Matrix> es(t.matrix.matrix(), Eigen::EigenvaluesOnly);
    r.summary["T_min_eigenvalue"] = es.eigenvalues().minCoeff();
    r.summary["T_max_eigenvalue"] = es.eigenvalues().maxCoeff();
    r.summary["truncation_time"] = t.truncation_time;
  }
  r.summary["guard_steps"] = fam.guard_steps;
  r.summary["literal_commutator_defect"] = fam.literal_defect;
  r.summary["max_algebraic_residual"] = worst;
  r.summary["max_nesting_residual"] = worst_nest;
  r.violation = worst > c.tol_algebraic || worst_nest > 1e-6;
  return r;
}

inline RunResult matrix_element_cmd(const Config& c) {
  const auto dg = c.dense_grid();
  const auto rep = build_representation(dg);
  const auto times = detail::time_grid(dg, c);
  std::mt19937_64 rng(c.seed);
  StateVector phi, psi;
  try {
    phi = wave_packets(dg, Space::HalfLinePos, rng, detail::packet_params(c));
    psi = wave_packets(dg, Space::HalfLinePos, rng, detail::packet_params(c));
  } catch (const irrev::error& e) {
    throw config_error("state.parameters", e.what());
  }
  std::normal_distribution<double> gauss;
  const auto n = static_cast<Eigen::Index>(dg.half_size());
  Matrix a(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) a(i, j) = complex(gauss(rng), gauss(rng));
  const LinOp x(dg, Space::HalfLinePos, Space::HalfLinePos, (a + a.adjoint()) * 0.5, true);
  const double xn = x.matrix().operatorNorm();
  const double bound = c.tol_algebraic * norm(phi) * norm(psi) * xn;
  RunResult r{Table({"t", "steps", "reversible_re", "reversible_im", "irreversible_re", "irreversible_im",
                     "difference", "bound", "tolerance_class"})};
  double worst = 0.0;
  for (const auto& t : times) {
    const auto e = irreversible_matrix_element(rep, phi, psi, x, t);
    worst = std::max(worst, e.difference);
    r.table.row()
        .add(t.value(dg))
        .add(t.steps)
        .add(e.reversible.real())
        .add(e.reversible.imag())
        .add(e.irreversible.real())
        .add(e.irreversible.imag())
        .add(e.difference)
        .add(bound)
        .add(to_string(Tier::Algebraic));
  }
  r.summary["max_difference"] = worst;
  r.summary["bound"] = bound;
  r.summary["states"] = c.kind == StateKind::Random ? "configured wave packets" : "default wave packets";
  r.violation = worst > bound;
  return r;
}

inline RunResult convergence_cmd(const Config& c) {
  const complex mu = c.kind == StateKind::Witness ? complex(c.mu_re, c.mu_im) : complex(0.0, -1.0);
  const double t0 = c.kind == StateKind::Witness ? c.t0 : 1.0;
  RunResult r{Table({"n_sigma", "sigma_max", "simple_pole_error", "double_pole_error", "witness_ratio_t0",
                     "witness_ratio_half_t0", "witness_norm2_over_2pi", "tolerance_class"})};
  double p1 = 2.0, p2 = 2.0, pw = 2.0, at_config = 0.0;
  bool mono = true;
  for (int k = -2; k <= 1; ++k) {
    const double s = std::ldexp(1.0, k);
    const auto n = static_cast<std::size_t>(static_cast<double>(c.n_sigma) * s);
    if (n < 8) continue;
    const auto g = make_grid(n, c.sigma_max * s, c.k_dim);
    const Vector v = unit_fiber(g);
    auto err = [&](int order) {
      const auto f = rational_hardy(g, {{complex(0.0, -1.0), order}}, v);
      return norm(hardy_project(f, Half::Plus) - f) / norm(f);
    };
    const double e1 = err(1), e2 = err(2);
    const auto lt = lattice_time(g, t0, true);
    const auto lh = lattice_time(g, 0.5 * t0, true);
    const auto w = kernel_witness(g, mu, lt, v);
    const double wr = norm(toeplitz_step(w, lt)) / norm(w);
    const double wh = norm(toeplitz_step(w, lh)) / norm(w);
    mono = mono && e1 < p1 && e2 < p2 && wr < pw;
    p1 = e1;
    p2 = e2;
    pw = wr;
    if (k == 0) at_config = e1;
    r.table.row()
        .add(static_cast<std::int64_t>(n))
        .add(g.sigma_max)
        .add(e1)
        .add(e2)
        .add(wr)
        .add(wh)
        .add(norm2(w) / (2.0 * std::numbers::pi))
        .add(to_string(Tier::Continuum));
  }
  r.summary["monotone"] = mono;
  r.summary["simple_pole_error_at_config_grid"] = at_config;
  r.violation = !mono || at_config > c.tol_continuum;
  return r;
}

inline json criterion_json(const CriterionResult& cr) {
  json m = json::array();
  for (const auto& x : cr.metrics) {
    m.push_back({{"name", x.name}, {"value", x.value}, {"tolerance", x.tolerance}, {"pass", x.pass}});
  }
  json j{{"id", cr.id}, {"title", cr.title}, {"tier", to_string(cr.tier)}, {"pass", cr.pass()}, {"metrics", m}};
  if (!cr.error.empty()) j["error"] = cr.error;
  return j;
}

inline RunResult selftest_cmd(const Config& c, const std::function<void(const CriterionResult&)>& report) {
  Selftest st({c.n_sigma, c.sigma_max, c.n_dense, c.seed});
  const auto results = st.run_all(report);
  RunResult r{Table({"criterion", "title", "metric", "value", "tolerance", "pass", "tolerance_class"})};
  json list = json::array();
  for (const auto& cr : results) {
    for (const auto& m : cr.metrics) {
      r.table.row()
          .add(static_cast<std::int64_t>(cr.id))
          .add(cr.title)
          .add("\"" + m.name + "\"")
          .add(m.value)
          .add(m.tolerance)
          .add(m.pass ? "1" : "0")
          .add(to_string(cr.tier));
    }
    list.push_back(criterion_json(cr));
    r.violation = r.violation || !cr.pass();
  }
  r.summary["criteria"] = list;
  r.summary["all_pass"] = !r.violation;
  return r;
}

}  // namespace cli
