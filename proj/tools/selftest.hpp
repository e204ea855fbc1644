#pragma once

#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "irrev/irrev.hpp"

namespace cli {

using namespace irrev;

enum class Tier { Algebraic, Continuum };

inline const char* to_string(Tier t) { return t == Tier::Algebraic ? "algebraic" : "continuum"; }

struct Metric {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;  // 0 means informational
  bool pass = true;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  Tier tier = Tier::Algebraic;
  std::vector<Metric> metrics;
  double seconds = 0.0;
  std::string error;

  bool pass() const {
    if (!error.empty()) return false;
    for (const auto& m : metrics)
      if (!m.pass) return false;
    return true;
  }
  // upper bound check
  void le(std::string name, double value, double tol) { metrics.push_back({std::move(name), value, tol, value <= tol}); }
  // two-sided band around a target
  void near(std::string name, double value, double target, double tol) {
    metrics.push_back({std::move(name), value, tol, std::abs(value - target) <= tol});
  }
  void check(std::string name, bool ok) { metrics.push_back({std::move(name), ok ? 1.0 : 0.0, 1.0, ok}); }
  void info(std::string name, double value) { metrics.push_back({std::move(name), value, 0.0, true}); }
};

struct SelftestOptions {
  std::size_t n_sigma = 4096;
  double sigma_max = 100.0;
  std::size_t n_dense = 512;
  std::uint64_t seed = 20240601;
};

// Every tolerance below is fixed here and does not follow the config file.
namespace tol {
inline constexpr double projection = 1e-12;
inline constexpr double m_f_hermitian = 1e-12;
inline constexpr double m_f_low = -1e-12;
inline constexpr double m_f_high = 1e-10;
inline constexpr double m_f_gram = 1e-12;
inline constexpr double lambda_square = 1e-10;
inline constexpr double unitary = 1e-10;
inline constexpr double polar = 1e-8;
inline constexpr double intertwining = 1e-8;
inline constexpr double semigroup = 1e-8;
inline constexpr double family = 1e-8;
inline constexpr double nesting = 1e-6;
inline constexpr double correspondence = 1e-8;
inline constexpr double monotone = 1e-10;
inline constexpr double lyapunov_quarter = 0.05;
inline constexpr double lyapunov_seconds = 5.0;
inline constexpr double simple_pole = 0.05;
inline constexpr double double_pole = 0.012;
inline constexpr double witness_kernel = 0.05;
inline constexpr double witness_half = 0.5186;
inline constexpr double witness_half_band = 0.01;
inline constexpr double witness_norm2 = 0.43233;
inline constexpr double witness_norm2_band = 0.02;
inline constexpr double hilbert = 1e-3;
inline constexpr double decay = 1e-6;
}  // namespace tol

class Selftest {
 public:
  explicit Selftest(SelftestOptions opt) : opt_(opt) {}

  GridSpec main_grid() const { return make_grid(opt_.n_sigma, opt_.sigma_max); }

  GridSpec dense_grid() const {
    const double ds = 2.0 * opt_.sigma_max / static_cast<double>(opt_.n_sigma);
    return make_grid(2 * opt_.n_dense, ds * static_cast<double>(opt_.n_dense));
  }

  const Representation& rep() {
    if (!rep_) rep_ = build_representation(dense_grid());
    return *rep_;
  }

  std::vector<CriterionResult> run_all(const std::function<void(const CriterionResult&)>& report = {}) {
    using Fn = void (Selftest::*)(CriterionResult&);
    const std::vector<std::tuple<int, const char*, Tier, Fn>> table{
        {1, "projection algebra", Tier::Algebraic, &Selftest::c1},
        {2, "M_F spectrum and Gram identity", Tier::Algebraic, &Selftest::c2},
        {3, "square root and polar factor", Tier::Algebraic, &Selftest::c3},
        {4, "intertwining", Tier::Algebraic, &Selftest::c4},
        {5, "semigroup laws", Tier::Algebraic, &Selftest::c5},
        {6, "projection family", Tier::Algebraic, &Selftest::c6},
        {7, "Lyapunov correspondence", Tier::Algebraic, &Selftest::c7},
        {8, "Lyapunov monotonicity", Tier::Algebraic, &Selftest::c8},
        {9, "rational Hardy membership", Tier::Continuum, &Selftest::c9},
        {10, "kernel witness", Tier::Continuum, &Selftest::c10},
        {11, "Hilbert quadrature oracle", Tier::Continuum, &Selftest::c11},
        {12, "decay surrogates", Tier::Continuum, &Selftest::c12},
    };
    std::vector<CriterionResult> out;
    for (const auto& [id, title, tier, fn] : table) {
      CriterionResult r;
      r.id = id;
      r.title = title;
      r.tier = tier;
      const auto start = std::chrono::steady_clock::now();
      try {
        (this->*fn)(r);
      } catch (const std::exception& e) {
        r.error = e.what();
      }
      r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      if (report) report(r);
      out.push_back(std::move(r));
    }
    return out;
  }

  // Individual criteria, public so a single one can be rerun.
  void c1(CriterionResult& r) {
    const auto g = main_grid();
    std::mt19937_64 rng(opt_.seed + 1);
    double idem = 0.0, herm = 0.0, compl_ = 0.0, orth = 0.0;
    for (int i = 0; i < 10; ++i) {
      const auto f = iid(g, Space::FullLine, rng);
      const auto h = iid(g, Space::FullLine, rng);
      const double nf = norm(f), nh = norm(h);
      auto run = [&](auto&& proj, auto&& other) {
        const auto pf = proj(f);
        const auto qf = other(f);
        idem = std::max(idem, norm(proj(pf) - pf) / nf);
        herm = std::max(herm, std::abs(inner(h, pf) - inner(proj(h), f)) / (nf * nh));
        compl_ = std::max(compl_, norm(pf + qf - f) / nf);
        orth = std::max(orth, std::abs(inner(pf, qf)) / (nf * nf));
      };
      run([](const StateVector& x) { return hardy_project(x, Half::Plus); },
          [](const StateVector& x) { return hardy_project(x, Half::Minus); });
      run([](const StateVector& x) { return hardy_project(x, Half::Minus); },
          [](const StateVector& x) { return hardy_project(x, Half::Plus); });
      run([](const StateVector& x) { return project_halfline(x, Side::Pos); },
          [](const StateVector& x) { return project_halfline(x, Side::Neg); });
      run([](const StateVector& x) { return project_halfline(x, Side::Neg); },
          [](const StateVector& x) { return project_halfline(x, Side::Pos); });
    }
    r.le("idempotency", idem, tol::projection);
    r.le("hermiticity", herm, tol::projection);
    r.le("complementarity", compl_, tol::projection);
    r.le("orthogonality", orth, tol::projection);
  }

  void c2(CriterionResult& r) {
    const auto& rp = rep();
    r.le("hermitian_residual", rp.m_f.hermitian_residual(), tol::m_f_hermitian);
    r.check("min_eigenvalue>=-1e-12", rp.min_m_f_eigenvalue >= tol::m_f_low);
    r.info("min_eigenvalue", rp.min_m_f_eigenvalue);
    r.le("max_eigenvalue-1", rp.m_f_eigenvalues.maxCoeff() - 1.0, tol::m_f_high);
    const auto cert = omega_injectivity(rp.grid);
    r.check("full_rank_certificate", cert.injective);
    r.info("log_abs_det_omega", cert.log_abs_det);
    r.info("min_singular_value_omega", rp.singular_values.minCoeff());
    const Matrix& om = rp.omega.matrix();
    r.le("m_f-omega*omega", residual<double>(om.adjoint() * om, rp.m_f.matrix()), tol::m_f_gram);
  }

  void c3(CriterionResult& r) {
    const auto& rp = rep();
    const Matrix& lam = rp.lambda.matrix();
    const Matrix& rr = rp.isometry.matrix();
    const auto n = rr.rows();
    r.le("lambda^2-m_f", residual<double>(lam * lam, rp.m_f.matrix()), tol::lambda_square);
    r.le("R*R-I", (rr.adjoint() * rr - Matrix::Identity(n, n)).norm(), tol::unitary);
    r.le("RR*-I", (rr * rr.adjoint() - Matrix::Identity(n, n)).norm(), tol::unitary);
    r.le("R*lambda-omega", residual<double>(rr * lam, rp.omega.matrix()), tol::polar);
  }

  void c4(CriterionResult& r) {
    const auto& rp = rep();
    const auto states = packets(rp.grid, 20, opt_.seed + 4);
    const auto guarded = lambda_guarded(rp, 20, opt_.seed + 40, sweep().back().steps);
    double fwd = 0.0, om = 0.0, adj = 0.0;
    for (const auto& t : sweep()) {
      fwd = std::max(fwd, intertwining_residual(rp, t, states).forward);
      adj = std::max(adj, intertwining_residual(rp, t, guarded).adjoint);
      for (const auto& psi : states) {
        const auto lhs = apply(rp.omega, unitary_evolve(psi, t));
        const auto rhs = toeplitz_step(apply(rp.omega, psi), t);
        om = std::max(om, norm(lhs - rhs) / norm(psi));
      }
    }
    r.le("lambda_forward", fwd, tol::intertwining);
    r.le("omega_forward", om, tol::intertwining);
    r.le("lambda_adjoint", adj, tol::intertwining);
  }

  void c5(CriterionResult& r) {
    const auto& rp = rep();
    const auto n = static_cast<Eigen::Index>(rp.grid.half_size());
    const Matrix id = Matrix::Identity(n, n);
    r.le("Z(0)-I", (z_matrix(rp, steps(0)).matrix() - id).norm() / id.norm(), tol::semigroup);
    const std::int64_t guard = sweep().back().steps;
    const Matrix gp = guard_projector(rp, static_cast<std::size_t>(guard)).matrix();
    Matrix d = Matrix::Zero(n, n);
    for (Eigen::Index k = 0; k < n - guard * static_cast<Eigen::Index>(rp.grid.k_dim); ++k) d(k, k) = 1.0;
    double law = 0.0, co_z = 0.0, co_t = 0.0;
    const std::vector<std::pair<std::int64_t, std::int64_t>> pairs{{6, 30}, {18, 48}, {54, 60}, {0, 114}};
    for (const auto& [a, b] : pairs) {
      const Matrix za = z_matrix(rp, steps(a)).matrix();
      const Matrix zb = z_matrix(rp, steps(b)).matrix();
      const Matrix zab = z_matrix(rp, steps(a + b)).matrix();
      law = std::max(law, residual<double>(za * zb, zab));
      for (const Matrix* z : {&za, &zb, &zab}) {
        co_z = std::max(co_z, ((*z) * z->adjoint() * gp - gp).norm() / gp.norm());
      }
      const Matrix t = toeplitz_matrix(rp.grid, steps(a + b)).matrix();
      co_t = std::max(co_t, (t * t.adjoint() * d - d).norm() / d.norm());
    }
    r.le("Z(t)Z(s)-Z(t+s)", law, tol::semigroup);
    r.le("(Z Z*-I) on guard band", co_z, tol::semigroup);
    r.le("(T T*-I) on guard band", co_t, tol::semigroup);
  }

  void c6(CriterionResult& r) {
    const auto& rp = rep();
    std::vector<LatticeTime> times;
    for (std::int64_t m = 0; m <= static_cast<std::int64_t>(rp.grid.half() / 2); m += 32) times.push_back(steps(m));
    const auto fam = spectral_measure(rp, times);
    const Matrix& g = fam.guard.matrix();
    double complement = 0.0, idem = 0.0, nest = 0.0;
    bool ranks_ok = true;
    std::size_t prev = 0;
    std::vector<std::size_t> ranks;
    for (std::size_t i = 0; i < times.size(); ++i) {
      const Matrix& p = fam.projections[i].matrix();
      const Matrix f = g * future_projection(rp, times[i]).matrix() * g;
      complement = std::max(complement, (p + f - g).norm() / g.norm());
      idem = std::max(idem, (p * p - p).norm() / std::max(1.0, p.norm()));
      if (i + 1 < times.size()) {
        nest = std::max(nest, (p * fam.projections[i + 1].matrix() - p).norm() / std::max(1.0, p.norm()));
      }
      const auto rank = projection_rank(fam.projections[i]).rank;
      ranks.push_back(rank);
      ranks_ok = ranks_ok && rank >= prev;
      prev = rank;
    }
    r.le("P_past+P_future-I (guard band)", complement, tol::family);
    r.le("idempotency", idem, tol::family);
    r.le("nesting", nest, tol::nesting);
    r.check("rank non-decreasing", ranks_ok);
    r.check("rank(P_0)=0", ranks.front() == 0);
    r.info("rank(P_max)", static_cast<double>(ranks.back()));
    r.info("literal_commutator_defect", fam.literal_defect);
  }

  void c7(CriterionResult& r) {
    const auto& rp = rep();
    const auto states = packets(rp.grid, 20, opt_.seed + 4);
    double worst = 0.0, worst_future = 0.0;
    for (const auto& t : sweep()) {
      for (const auto& psi : states) {
        const auto c = correspondence_check(rp, psi, t);
        worst = std::max(worst, c.relative);
        const double l2 = norm2(apply(rp.lambda, psi));
        worst_future = std::max(worst_future, std::abs(c.reversible - c.irreversible) / l2);
      }
    }
    r.le("|difference| / |psi|^2", worst, tol::correspondence);
    r.info("|difference| / |Lambda psi|^2", worst_future);
  }

  void c8(CriterionResult& r) {
    const auto start = std::chrono::steady_clock::now();
    const auto g = main_grid();
    std::vector<LatticeTime> times;
    const auto quarter = static_cast<std::int64_t>(g.n_sigma / 4);
    for (std::int64_t m = 0; m <= quarter; m += quarter / 64) times.push_back(steps(m));
    std::mt19937_64 rng(opt_.seed + 8);
    double violation = 0.0, ratio = 0.0, leak = 0.0;
    for (int i = 0; i < 50; ++i) {
      auto psi = wave_packets(g, Space::HalfLinePos, rng);
      psi *= 1.0 / norm(psi);
      const auto rep = lyapunov_curve(psi, times);
      violation = std::max(violation, rep.max_monotonicity_violation);
      ratio = std::max(ratio, rep.expectations.back() / rep.expectations.front());
      leak = std::max(leak, rep.guard_band_leakage);
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    r.le("max monotonicity violation", violation, tol::monotone);
    r.le("curve(t_window/4)/curve(0)", ratio, tol::lyapunov_quarter);
    r.info("guard_band_leakage", leak);
    r.le("seconds", secs, tol::lyapunov_seconds);
  }

  void c9(CriterionResult& r) {
    double prev1 = 2.0, prev2 = 2.0;
    bool mono = true;
    for (const auto& [n, l] : refinement()) {
      const auto g = make_grid(n, l);
      const double e1 = pole_error(g, 1), e2 = pole_error(g, 2);
      mono = mono && e1 < prev1 && e2 < prev2;
      prev1 = e1;
      prev2 = e2;
      const std::string tag = "N=" + std::to_string(n) + ",L=" + std::to_string(static_cast<int>(l));
      if (n == opt_.n_sigma && l == opt_.sigma_max) {
        r.le("simple pole " + tag, e1, tol::simple_pole);
        r.le("double pole " + tag, e2, tol::double_pole);
      } else {
        r.info("simple pole " + tag, e1);
        r.info("double pole " + tag, e2);
      }
    }
    r.check("monotone under refinement", mono);
  }

  void c10(CriterionResult& r) {
    double prev = 2.0;
    bool mono = true;
    for (const auto& [n, l] : refinement()) {
      const auto g = make_grid(n, l);
      const auto t0 = lattice_time(g, 1.0, true);
      const auto f = kernel_witness(g, complex(0.0, -1.0), t0, unit_fiber(g));
      const double ratio = norm(toeplitz_step(f, t0)) / norm(f);
      mono = mono && ratio < prev;
      prev = ratio;
      const std::string tag = "N=" + std::to_string(n) + ",L=" + std::to_string(static_cast<int>(l));
      if (n == opt_.n_sigma && l == opt_.sigma_max) {
        r.le("|T(1)f|/|f| " + tag, ratio, tol::witness_kernel);
        const auto half = lattice_time(g, 0.5, true);
        r.near("|T(0.5)f|/|f| " + tag, norm(toeplitz_step(f, half)) / norm(f), tol::witness_half,
               tol::witness_half_band);
        const double n2 = norm2(f) / (2.0 * std::numbers::pi);
        r.near("|f|^2/(2 pi) " + tag, n2, tol::witness_norm2, tol::witness_norm2_band * tol::witness_norm2);
        r.info("snapped t0", t0.value(g));
      } else {
        r.info("|T(1)f|/|f| " + tag, ratio);
      }
    }
    r.check("T(1) ratio decreasing under refinement", mono);
  }

  void c11(CriterionResult& r) {
    const auto g = make_grid(1024, 50.0);
    std::mt19937_64 rng(opt_.seed + 11);
    PacketParams smooth;
    smooth.width_min = 1.0;
    smooth.width_max = 2.0;
    smooth.tau_min = 6.0;
    smooth.tau_max = 12.0;
    smooth.margin = 6.0;
    PacketParams generic = smooth;
    generic.tau_min = 0.0;
    double worst = 0.0, worst_generic = 0.0;
    for (int i = 0; i < 10; ++i) {
      const auto f = wave_packets(g, Space::FullLine, rng, smooth);
      worst = std::max(worst, norm(hardy_project_oracle(f) - hardy_project(f, Half::Plus)) / norm(f));
      const auto h = wave_packets(g, Space::FullLine, rng, generic);
      worst_generic = std::max(worst_generic, norm(hardy_project_oracle(h) - hardy_project(h, Half::Plus)) / norm(h));
    }
    r.le("smooth family", worst, tol::hilbert);
    r.info("generic delays (tau0 near 0)", worst_generic);
  }

  void c12(CriterionResult& r) {
    const auto g = main_grid();
    const auto half = steps(static_cast<std::int64_t>(g.half()));
    std::mt19937_64 rng(opt_.seed + 12);
    double lyap = 0.0, toep = 0.0, z = 0.0;
    for (int i = 0; i < 5; ++i) {
      const auto psi = wave_packets(g, Space::HalfLinePos, rng);
      lyap = std::max(lyap, lyapunov_expectation(psi, half) / lyapunov_expectation(psi, steps(0)));
      const auto h = compact_hardy_state(g, rng, 0.25 * g.t_window);
      toep = std::max(toep, norm(toeplitz_step(h, half)) / norm(h));
    }
    const auto& rp = rep();
    const auto zhalf = steps(static_cast<std::int64_t>(rp.grid.half()));
    for (int i = 0; i < 5; ++i) {
      const auto h = compact_hardy_state(rp.grid, rng, 0.25 * rp.grid.t_window);
      const auto psi = apply(rp.isometry.adjoint(), h);
      z = std::max(z, norm(z_evolve(rp, psi, zhalf)) / norm(psi));
    }
    r.le("(psi_t, M_F psi_t) at t_window/2", lyap, tol::decay);
    r.le("|T_u(t) f| at t_window/2", toep, tol::decay);
    r.le("|Z(t) psi| at t_window/2", z, tol::decay);
  }

 private:
  static StateVector iid(const GridSpec& g, Space s, std::mt19937_64& rng) {
    std::normal_distribution<double> d;
    StateVector f(g, s);
    for (auto& a : f.amplitudes()) a = complex(d(rng), d(rng));
    return f;
  }

  static std::vector<StateVector> packets(const GridSpec& g, int count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<StateVector> out;
    for (int i = 0; i < count; ++i) out.push_back(wave_packets(g, Space::HalfLinePos, rng));
    return out;
  }

  // R* h with the top `guard` Hardy bins of h empty.
  static std::vector<StateVector> lambda_guarded(const Representation& rp, int count, std::uint64_t seed,
                                                 std::int64_t guard) {
    std::mt19937_64 rng(seed);
    std::vector<StateVector> out;
    for (int i = 0; i < count; ++i) {
      auto h = iid(rp.grid, Space::HardyPlus, rng);
      h.amplitudes().tail(guard * static_cast<Eigen::Index>(rp.grid.k_dim)).setZero();
      out.push_back(apply(rp.isometry.adjoint(), h));
    }
    return out;
  }

  // 20 lattice times, 6 dtau apart.
  static std::vector<LatticeTime> sweep() {
    std::vector<LatticeTime> t;
    for (std::int64_t k = 0; k < 20; ++k) t.push_back(steps(6 * k));
    return t;
  }

  // Fixed N / L ladder ending one step past the main grid.
  std::vector<std::pair<std::size_t, double>> refinement() const {
    std::vector<std::pair<std::size_t, double>> out;
    for (int k = -2; k <= 1; ++k) {
      const double s = std::ldexp(1.0, k);
      out.emplace_back(static_cast<std::size_t>(static_cast<double>(opt_.n_sigma) * s), opt_.sigma_max * s);
    }
    return out;
  }

  static double pole_error(const GridSpec& g, int order) {
    const auto f = rational_hardy(g, {{complex(0.0, -1.0), order}}, unit_fiber(g));
    return norm(hardy_project(f, Half::Plus) - f) / norm(f);
  }

  SelftestOptions opt_;
  std::optional<Representation> rep_;
};

}  // namespace cli
