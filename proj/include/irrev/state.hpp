#pragma once

#include <Eigen/Core>
#include <cmath>
#include <string_view>
#include <utility>

#include "irrev/error.hpp"
#include "irrev/grid.hpp"

namespace irrev {

using Vector = Eigen::VectorXcd;

enum class Space { FullLine, HalfLinePos, HardyPlus };

inline std::string_view to_string(Space s) {
  switch (s) {
    case Space::FullLine: return "FullLine";
    case Space::HalfLinePos: return "HalfLinePos";
    case Space::HardyPlus: return "HardyPlus";
  }
  return "?";
}

enum class Side { Pos, Neg };

inline std::size_t space_size(const GridSpec& g, Space s) {
  return s == Space::FullLine ? g.full_size() : g.half_size();
}

/// Amplitudes over grid x fiber, index = bin * k_dim + fiber.
///
/// FullLine and HalfLinePos amplitudes are energy samples (HalfLinePos holds
/// the sigma > 0 bins). HardyPlus amplitudes are the unitary time profile on
/// the tau > 0 bins scaled by sqrt(dtau / dsigma); every space then shares
/// the quadrature weight dsigma.
class StateVector {
 public:
  StateVector() = default;
  StateVector(const GridSpec& g, Space s) : grid_(g), space_(s), amp_(Vector::Zero(space_size(g, s))) {}
  StateVector(const GridSpec& g, Space s, Vector amplitudes)
      : grid_(g), space_(s), amp_(std::move(amplitudes)) {
    if (static_cast<std::size_t>(amp_.size()) != space_size(g, s)) {
      throw error(errc::dimension_mismatch,
                  "amplitude length does not match " + std::string(to_string(s)));
    }
  }

  const GridSpec& grid() const noexcept { return grid_; }
  Space space() const noexcept { return space_; }
  const Vector& amplitudes() const noexcept { return amp_; }
  Vector& amplitudes() noexcept { return amp_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(amp_.size()); }

  StateVector& operator+=(const StateVector& o) {
    check_same(o);
    amp_ += o.amp_;
    return *this;
  }
  StateVector& operator-=(const StateVector& o) {
    check_same(o);
    amp_ -= o.amp_;
    return *this;
  }
  StateVector& operator*=(complex a) {
    amp_ *= a;
    return *this;
  }
  friend StateVector operator+(StateVector a, const StateVector& b) { return a += b; }
  friend StateVector operator-(StateVector a, const StateVector& b) { return a -= b; }
  friend StateVector operator*(complex a, StateVector b) { return b *= a; }

  void check_same(const StateVector& o) const {
    if (!(grid_ == o.grid_)) throw error(errc::grid_mismatch, "states live on different grids");
    if (space_ != o.space_) {
      throw error(errc::space_mismatch,
                  std::string(to_string(space_)) + " vs " + std::string(to_string(o.space_)));
    }
  }

 private:
  GridSpec grid_{};
  Space space_ = Space::FullLine;
  Vector amp_;
};

inline void require_space(const StateVector& f, Space s) {
  if (f.space() != s) {
    throw error(errc::space_mismatch, "expected " + std::string(to_string(s)) + ", got " +
                                          std::string(to_string(f.space())));
  }
}

/// Rectangle-rule scalar product, conjugate-linear in the first argument.
inline complex inner(const StateVector& f, const StateVector& g) {
  f.check_same(g);
  return f.amplitudes().dot(g.amplitudes()) * f.grid().delta_sigma;
}

inline double norm2(const StateVector& f) {
  return f.amplitudes().squaredNorm() * f.grid().delta_sigma;
}

inline double norm(const StateVector& f) { return std::sqrt(norm2(f)); }

/// P_R+ (Pos) or P_R- (Neg) on a full-line state.
inline StateVector project_halfline(const StateVector& f, Side side) {
  require_space(f, Space::FullLine);
  StateVector out = f;
  const auto& g = f.grid();
  const auto n = static_cast<Eigen::Index>(g.half_size());
  if (side == Side::Pos) {
    out.amplitudes().head(n).setZero();
  } else {
    out.amplitudes().tail(n).setZero();
  }
  return out;
}

/// L2(R+) -> L2(R), zero on sigma < 0.
inline StateVector embed(const StateVector& f) {
  require_space(f, Space::HalfLinePos);
  const auto& g = f.grid();
  StateVector out(g, Space::FullLine);
  out.amplitudes().tail(static_cast<Eigen::Index>(g.half_size())) = f.amplitudes();
  return out;
}

/// L2(R) -> L2(R+), drops the sigma < 0 bins.
inline StateVector restrict(const StateVector& f) {
  require_space(f, Space::FullLine);
  const auto& g = f.grid();
  return StateVector(g, Space::HalfLinePos, f.amplitudes().tail(static_cast<Eigen::Index>(g.half_size())));
}

/// Samples `fn(sigma) * v` over the full line (or the sigma > 0 half).
template <class Fn>
StateVector sample(const GridSpec& g, Space s, Fn&& fn, const Vector& v) {
  if (s == Space::HardyPlus) throw error(errc::space_mismatch, "cannot sample in HardyPlus coordinates");
  if (static_cast<std::size_t>(v.size()) != g.k_dim) {
    throw error(errc::dimension_mismatch, "fiber vector length must equal k_dim");
  }
  StateVector out(g, s);
  const std::size_t first = s == Space::FullLine ? 0 : g.half();
  const std::size_t count = s == Space::FullLine ? g.n_sigma : g.half();
  for (std::size_t j = 0; j < count; ++j) {
    const complex val = fn(g.sigma(first + j));
    for (std::size_t c = 0; c < g.k_dim; ++c) {
      out.amplitudes()(static_cast<Eigen::Index>(j * g.k_dim + c)) = val * v(static_cast<Eigen::Index>(c));
    }
  }
  return out;
}

inline Vector unit_fiber(const GridSpec& g) {
  Vector v = Vector::Zero(static_cast<Eigen::Index>(g.k_dim));
  v(0) = 1.0;
  return v;
}

}  // namespace irrev
