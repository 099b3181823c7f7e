#pragma once

#include <cmath>
#include <complex>
#include <numbers>

#include <Eigen/Dense>

namespace czsim {

template <typename Scalar>
using Complex = std::complex<Scalar>;

template <typename Scalar>
using CMatrix = Eigen::Matrix<Complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using RMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using CVector = Eigen::Matrix<Complex<Scalar>, Eigen::Dynamic, 1>;

using Eigen::Index;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Maps an angle onto (-pi, pi].
template <typename Scalar>
Scalar wrap_phase(Scalar phi) {
  const Scalar two_pi = Scalar(2) * std::numbers::pi_v<Scalar>;
  Scalar r = std::remainder(phi, two_pi);
  if (r <= -std::numbers::pi_v<Scalar>) r += two_pi;
  return r;
}

/// ||A - A^dagger|| / ||A||, zero for the zero matrix.
template <typename Derived>
typename Derived::RealScalar hermiticity_defect(const Eigen::MatrixBase<Derived>& a) {
  const auto scale = a.norm();
  if (scale == 0) return 0;
  return (a - a.adjoint()).norm() / scale;
}

/// Frobenius norm of U^dagger U - I.
template <typename Derived>
typename Derived::RealScalar unitarity_defect(const Eigen::MatrixBase<Derived>& u) {
  using Plain = typename Derived::PlainObject;
  return (u.adjoint() * u - Plain::Identity(u.cols(), u.cols())).norm();
}

/// exp(-2 pi i H t) for Hermitian H via its eigendecomposition.
template <typename Derived>
CMatrix<typename Derived::RealScalar> evolution_operator(const Eigen::MatrixBase<Derived>& h,
                                                         typename Derived::RealScalar t) {
  using Real = typename Derived::RealScalar;
  Eigen::SelfAdjointEigenSolver<CMatrix<Real>> es(h.derived().template cast<Complex<Real>>());
  const auto& v = es.eigenvectors();
  CVector<Real> ph = (es.eigenvalues() * (-Real(2) * std::numbers::pi_v<Real> * t))
                         .unaryExpr([](Real x) { return std::polar(Real(1), x); });
  return v * ph.asDiagonal() * v.adjoint();
}

}  // namespace czsim
