#pragma once

#include <Eigen/Dense>
#include <complex>

#include "irrev/state.hpp"

namespace irrev {

template <class Real>
using MatrixT = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
using Matrix = MatrixT<double>;

/// Dense operator between two tagged spaces on one grid. All spaces share the
/// quadrature weight dsigma, so the Hilbert adjoint is the conjugate
/// transpose.
template <class Real = double>
class BasicLinOp {
 public:
  using matrix_type = MatrixT<Real>;

  BasicLinOp() = default;
  BasicLinOp(const GridSpec& g, Space domain, Space codomain, matrix_type m, bool hermitian = false)
      : grid_(g), domain_(domain), codomain_(codomain), m_(std::move(m)), hermitian_(hermitian) {
    if (static_cast<std::size_t>(m_.cols()) != space_size(g, domain) ||
        static_cast<std::size_t>(m_.rows()) != space_size(g, codomain)) {
      throw error(errc::dimension_mismatch, "matrix shape does not match its space tags");
    }
    if (hermitian_ && domain_ != codomain_) {
      throw error(errc::invalid_argument, "Hermitian flag needs equal domain and codomain");
    }
  }

  static BasicLinOp identity(const GridSpec& g, Space s) {
    const auto n = static_cast<Eigen::Index>(space_size(g, s));
    return BasicLinOp(g, s, s, matrix_type::Identity(n, n), true);
  }

  const GridSpec& grid() const noexcept { return grid_; }
  Space domain() const noexcept { return domain_; }
  Space codomain() const noexcept { return codomain_; }
  const matrix_type& matrix() const noexcept { return m_; }
  bool hermitian() const noexcept { return hermitian_; }
  Eigen::Index rows() const noexcept { return m_.rows(); }
  Eigen::Index cols() const noexcept { return m_.cols(); }

  BasicLinOp adjoint() const { return BasicLinOp(grid_, codomain_, domain_, m_.adjoint(), hermitian_); }

  /// ||A - A*||_F / ||A||_F
  Real hermitian_residual() const {
    if (m_.rows() != m_.cols()) return Real(1);
    const Real scale = m_.norm();
    if (scale == Real(0)) return Real(0);
    return (m_ - m_.adjoint()).norm() / scale;
  }

  template <class Other>
  BasicLinOp<Other> cast() const {
    return BasicLinOp<Other>(grid_, domain_, codomain_, m_.template cast<std::complex<Other>>(), hermitian_);
  }

  friend BasicLinOp operator*(const BasicLinOp& a, const BasicLinOp& b) {
    if (a.domain_ != b.codomain_) throw error(errc::space_mismatch, "operator composition");
    if (!(a.grid_ == b.grid_)) throw error(errc::grid_mismatch, "operator composition");
    return BasicLinOp(a.grid_, b.domain_, a.codomain_, a.m_ * b.m_, false);
  }
  friend BasicLinOp operator+(const BasicLinOp& a, const BasicLinOp& b) {
    a.check_same(b);
    return BasicLinOp(a.grid_, a.domain_, a.codomain_, a.m_ + b.m_, a.hermitian_ && b.hermitian_);
  }
  friend BasicLinOp operator-(const BasicLinOp& a, const BasicLinOp& b) {
    a.check_same(b);
    return BasicLinOp(a.grid_, a.domain_, a.codomain_, a.m_ - b.m_, a.hermitian_ && b.hermitian_);
  }
  friend BasicLinOp operator*(Real s, const BasicLinOp& a) {
    return BasicLinOp(a.grid_, a.domain_, a.codomain_, s * a.m_, a.hermitian_);
  }

 private:
  void check_same(const BasicLinOp& b) const {
    if (domain_ != b.domain_ || codomain_ != b.codomain_) throw error(errc::space_mismatch, "operator sum");
    if (!(grid_ == b.grid_)) throw error(errc::grid_mismatch, "operator sum");
  }

  GridSpec grid_{};
  Space domain_ = Space::FullLine;
  Space codomain_ = Space::FullLine;
  matrix_type m_;
  bool hermitian_ = false;
};

using LinOp = BasicLinOp<double>;

inline StateVector apply(const LinOp& a, const StateVector& f) {
  require_space(f, a.domain());
  if (!(f.grid() == a.grid())) throw error(errc::grid_mismatch, "operator application");
  return StateVector(a.grid(), a.codomain(), a.matrix() * f.amplitudes());
}

/// Frobenius norm of the difference, relative to ||b||_F (absolute if b = 0).
template <class Real>
Real residual(const MatrixT<Real>& a, const MatrixT<Real>& b) {
  const Real scale = b.norm();
  const Real d = (a - b).norm();
  return scale > Real(0) ? d / scale : d;
}

inline double residual(const LinOp& a, const LinOp& b) { return residual<double>(a.matrix(), b.matrix()); }

}  // namespace irrev
