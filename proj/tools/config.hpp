#pragma once

#include <bit>
#include <cstdint>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "irrev/states.hpp"
#include "irrev/version.hpp"
#include "json.hpp"

namespace cli {

using json = nlohmann::json;

// Carries the dotted path of the offending field.
class config_error : public std::runtime_error {
 public:
  config_error(std::string field, const std::string& what)
      : std::runtime_error(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

enum class StateKind { Rational, Witness, Random };

struct PoleSpec {
  double re = 0.0, im = -1.0;
  int order = 1;
};

struct Config {
  std::size_t n_sigma = 4096;
  double sigma_max = 100.0;
  std::size_t k_dim = 1;
  std::size_t n_dense = 512;
  double t_max = 1.0;
  std::size_t n_steps = 10;
  bool snap_times = true;
  StateKind kind = StateKind::Random;
  std::vector<PoleSpec> poles;       // rational
  double mu_re = 0.0, mu_im = -1.0;  // witness
  double t0 = 1.0;
  irrev::PacketParams packets;  // random
  std::uint64_t seed = 0;
  double tol_algebraic = 1e-8;
  double tol_continuum = 5e-2;
  json source;

  irrev::GridSpec grid() const { return irrev::make_grid(n_sigma, sigma_max, k_dim); }

  // Dense tier keeps the spacing of the main grid: n_dense half-line bins.
  irrev::GridSpec dense_grid() const {
    const double ds = 2.0 * sigma_max / static_cast<double>(n_sigma);
    return irrev::make_grid(2 * n_dense, ds * static_cast<double>(n_dense), k_dim);
  }
};

namespace detail {

inline const json& field(const json& j, const std::string& path, const std::string& key) {
  const std::string full = path.empty() ? key : path + "." + key;
  if (!j.is_object()) throw config_error(path, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) throw config_error(full, "missing field");
  return *it;
}

template <class T>
T get(const json& j, const std::string& path, const std::string& key) {
  const auto& v = field(j, path, key);
  const std::string full = path + "." + key;
  try {
    if constexpr (std::is_same_v<T, bool>) {
      if (!v.is_boolean()) throw config_error(full, "expected a boolean");
    } else if constexpr (std::is_integral_v<T>) {
      if (!v.is_number_integer()) throw config_error(full, "expected an integer");
      if constexpr (std::is_unsigned_v<T>) {
        if (v.is_number_integer() && !v.is_number_unsigned() && v.get<std::int64_t>() < 0) {
          throw config_error(full, "must be non-negative");
        }
      }
    } else if constexpr (std::is_floating_point_v<T>) {
      if (!v.is_number()) throw config_error(full, "expected a number");
    } else {
      if (!v.is_string()) throw config_error(full, "expected a string");
    }
    return v.get<T>();
  } catch (const json::exception& e) {
    throw config_error(full, e.what());
  }
}

inline void require(bool ok, const std::string& field, const std::string& what) {
  if (!ok) throw config_error(field, what);
}

}  // namespace detail

inline Config parse_config(const json& j) {
  using detail::get;
  using detail::require;
  Config c;
  c.source = j;
  const auto& grid = detail::field(j, "", "grid");
  c.n_sigma = get<std::size_t>(grid, "grid", "n_sigma");
  c.sigma_max = get<double>(grid, "grid", "sigma_max");
  c.k_dim = get<std::size_t>(grid, "grid", "k_dim");
  require(c.n_sigma >= 8 && std::has_single_bit(c.n_sigma), "grid.n_sigma", "must be a power of two >= 8");
  require(c.sigma_max > 0.0, "grid.sigma_max", "must be positive");
  require(c.k_dim >= 1, "grid.k_dim", "must be >= 1");

  const auto& dense = detail::field(j, "", "dense");
  c.n_dense = get<std::size_t>(dense, "dense", "n_dense");
  require(c.n_dense >= 4 && std::has_single_bit(c.n_dense), "dense.n_dense", "must be a power of two >= 4");

  const auto& times = detail::field(j, "", "times");
  c.t_max = get<double>(times, "times", "t_max");
  c.n_steps = get<std::size_t>(times, "times", "n_steps");
  c.snap_times = get<bool>(times, "times", "snap_times");
  require(c.t_max > 0.0, "times.t_max", "must be positive");
  require(c.n_steps >= 1, "times.n_steps", "must be >= 1");

  const auto& state = detail::field(j, "", "state");
  const auto kind = get<std::string>(state, "state", "kind");
  c.seed = get<std::uint64_t>(state, "state", "seed");
  const auto& p = detail::field(state, "state", "parameters");
  const std::string pp = "state.parameters";
  if (kind == "rational") {
    c.kind = StateKind::Rational;
    const auto& poles = detail::field(p, pp, "poles");
    require(poles.is_array() && !poles.empty(), pp + ".poles", "expected a non-empty array");
    for (std::size_t i = 0; i < poles.size(); ++i) {
      const std::string at = pp + ".poles[" + std::to_string(i) + "]";
      PoleSpec s{get<double>(poles[i], at, "re"), get<double>(poles[i], at, "im"), get<int>(poles[i], at, "order")};
      require(s.im < 0.0, at + ".im", "pole must lie in the lower half-plane");
      require(s.order == 1 || s.order == 2, at + ".order", "must be 1 or 2");
      c.poles.push_back(s);
    }
  } else if (kind == "witness") {
    c.kind = StateKind::Witness;
    c.mu_re = get<double>(p, pp, "mu_re");
    c.mu_im = get<double>(p, pp, "mu_im");
    c.t0 = get<double>(p, pp, "t0");
    require(c.mu_im < 0.0, pp + ".mu_im", "must be negative");
    require(c.t0 > 0.0, pp + ".t0", "must be positive");
  } else if (kind == "random") {
    c.kind = StateKind::Random;
    c.packets.count = get<int>(p, pp, "count");
    c.packets.width_min = get<double>(p, pp, "width_min");
    c.packets.width_max = get<double>(p, pp, "width_max");
    c.packets.tau_min = get<double>(p, pp, "tau_min");
    c.packets.tau_max = get<double>(p, pp, "tau_max");
    require(c.packets.count >= 1, pp + ".count", "must be >= 1");
    require(c.packets.width_min > 0.0 && c.packets.width_max >= c.packets.width_min, pp + ".width_max",
            "need 0 < width_min <= width_max");
    require(c.packets.tau_min >= 0.0 && c.packets.tau_max >= c.packets.tau_min, pp + ".tau_max",
            "need 0 <= tau_min <= tau_max");
  } else {
    throw config_error("state.kind", "expected one of rational, witness, random");
  }

  const auto& tol = detail::field(j, "", "tolerances");
  c.tol_algebraic = get<double>(tol, "tolerances", "algebraic");
  c.tol_continuum = get<double>(tol, "tolerances", "continuum");
  require(c.tol_algebraic > 0.0, "tolerances.algebraic", "must be positive");
  require(c.tol_continuum > 0.0, "tolerances.continuum", "must be positive");

  try {
    (void)c.grid();
    (void)c.dense_grid();
  } catch (const irrev::error& e) {
    throw config_error("grid", e.what());
  }
  return c;
}

inline Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("--config", "cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw config_error("--config", std::string("not valid JSON: ") + e.what());
  }
  return parse_config(j);
}

}  // namespace cli
