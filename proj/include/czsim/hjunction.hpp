#pragma once

#include <array>
#include <cmath>

#include "czsim/errors.hpp"
#include "czsim/linalg.hpp"

namespace czsim {

/// Short wire between the beam splitters. The transmission amplitude carries a factor i so the
/// 2x2 matrix is unitary for every (T, vartheta, eta).
struct WireParams {
  double transmission = 0;
  double vartheta = kPi;
  double eta = 0;

  friend bool operator==(const WireParams&, const WireParams&) = default;
};

/// Three-terminal beam splitter. Leads: 1 ground strip, 2 qubit plate, 3 wire.
struct BeamSplitterParams {
  double a = 0;
  double b = 0;
  double phi11 = 0;
  double phi22 = 0;
  double phi12 = 0;
  double phi13 = 0;

  friend bool operator==(const BeamSplitterParams&, const BeamSplitterParams&) = default;
};

struct ScatteringModel {
  BeamSplitterParams left;
  BeamSplitterParams right;
  WireParams wire;

  friend bool operator==(const ScatteringModel&, const ScatteringModel&) = default;

  ScatteringModel with_transmission(double t) const {
    ScatteringModel m = *this;
    m.wire.transmission = t;
    return m;
  }
};

template <typename Scalar>
using SMatrix2 = Eigen::Matrix<Complex<Scalar>, 2, 2>;
template <typename Scalar>
using SMatrix3 = Eigen::Matrix<Complex<Scalar>, 3, 3>;
template <typename Scalar>
using SMatrix4 = Eigen::Matrix<Complex<Scalar>, 4, 4>;

template <typename Scalar = double>
SMatrix2<Scalar> wire_smatrix(const WireParams& p) {
  require(p.transmission >= 0 && p.transmission <= 1, ErrorKind::parameter,
          "wire transmission outside [0,1]");
  using C = Complex<Scalar>;
  const Scalar refl = std::sqrt(Scalar(1) - Scalar(p.transmission));
  const Scalar trans = std::sqrt(Scalar(p.transmission));
  SMatrix2<Scalar> w;
  w(0, 0) = std::polar(refl, Scalar(p.vartheta));
  w(1, 1) = std::polar(refl, Scalar(2 * p.eta - p.vartheta));
  w(0, 1) = w(1, 0) = C(0, 1) * std::polar(trans, Scalar(p.eta));
  return w;
}

template <typename Scalar = double>
SMatrix3<Scalar> beamsplitter_smatrix(const BeamSplitterParams& p) {
  require(p.a >= 0 && p.a <= 1 && p.b >= 0 && p.b <= 1, ErrorKind::parameter,
          "beam splitter a, b outside [0,1]");
  using C = Complex<Scalar>;
  const Scalar a = p.a, b = p.b;
  const auto e = [](double x) { return std::polar(Scalar(1), Scalar(x)); };
  const Scalar ca = std::sqrt(Scalar(1) - a * a), cb = std::sqrt(Scalar(1) - b * b);
  SMatrix3<Scalar> y;
  y(0, 0) = a * e(p.phi11);
  y(0, 1) = b * ca * e(p.phi12);
  y(0, 2) = ca * cb * e(p.phi13);
  y(1, 1) = -a * b * b * e(2 * p.phi12 - p.phi11) + (Scalar(1) - b * b) * e(p.phi22);
  y(1, 2) = -b * cb * e(p.phi13) * (a * e(p.phi12 - p.phi11) + e(p.phi22 - p.phi12));
  y(2, 2) = e(2 * p.phi13) * (C(-a * (Scalar(1) - b * b)) * e(-p.phi11) +
                              b * b * e(p.phi22 - 2 * p.phi12));
  y(1, 0) = y(0, 1);
  y(2, 0) = y(0, 2);
  y(2, 1) = y(1, 2);
  return y;
}

/// Four-terminal S in channel order (ground-left, qubit-1, qubit-2, ground-right).
/// Wire amplitudes are eliminated in closed form: S = S_ee + S_ei W (1 - S_ii W)^-1 S_ie.
template <typename Scalar = double>
SMatrix4<Scalar> compose_h_smatrix(const ScatteringModel& m) {
  const SMatrix3<Scalar> yl = beamsplitter_smatrix<Scalar>(m.left);
  const SMatrix3<Scalar> yr = beamsplitter_smatrix<Scalar>(m.right);
  const SMatrix2<Scalar> w = wire_smatrix<Scalar>(m.wire);

  // splitter-local order: (gL, q1, gR, q2)
  SMatrix4<Scalar> see = SMatrix4<Scalar>::Zero();
  see.template topLeftCorner<2, 2>() = yl.template topLeftCorner<2, 2>();
  see.template bottomRightCorner<2, 2>() = yr.template topLeftCorner<2, 2>();
  Eigen::Matrix<Complex<Scalar>, 2, 4> sie = Eigen::Matrix<Complex<Scalar>, 2, 4>::Zero();
  sie.template block<1, 2>(0, 0) = yl.template block<1, 2>(2, 0);
  sie.template block<1, 2>(1, 2) = yr.template block<1, 2>(2, 0);
  Eigen::Matrix<Complex<Scalar>, 4, 2> sei = Eigen::Matrix<Complex<Scalar>, 4, 2>::Zero();
  sei.template block<2, 1>(0, 0) = yl.template block<2, 1>(0, 2);
  sei.template block<2, 1>(2, 1) = yr.template block<2, 1>(0, 2);
  SMatrix2<Scalar> sii = SMatrix2<Scalar>::Zero();
  sii(0, 0) = yl(2, 2);
  sii(1, 1) = yr(2, 2);

  const SMatrix2<Scalar> loop = SMatrix2<Scalar>::Identity() - sii * w;
  require(std::abs(loop.determinant()) >= Scalar(1e-12), ErrorKind::composition,
          "H-junction composition: singular internal reflection loop");
  const SMatrix4<Scalar> s = see + sei * w * loop.partialPivLu().solve(sie);

  constexpr std::array<int, 4> perm{0, 1, 3, 2};
  SMatrix4<Scalar> out;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out(i, j) = s(perm[i], perm[j]);
  return out;
}

/// Coefficients of A(theta) and B(theta) in the Andreev spectrum.
/// B = B0 + 2 (B1 cos t1 + B2 cos t2 + B12m cos(t1 - t2) + B12p cos(t1 + t2)).
struct AndreevCoefficients {
  double a0 = 0, a1 = 0, a2 = 0, a12 = 0;
  double b0 = 0, b1 = 0, b2 = 0, b12m = 0, b12p = 0;

  double a_of(double t1, double t2) const {
    return a0 + a1 * std::cos(t1) + a2 * std::cos(t2) + a12 * std::cos(t1 - t2);
  }
  double b_of(double t1, double t2) const {
    return b0 + 2 * (b1 * std::cos(t1) + b2 * std::cos(t2) + b12m * std::cos(t1 - t2) +
                     b12p * std::cos(t1 + t2));
  }
};

AndreevCoefficients andreev_coefficients(const SMatrix4<double>& s);

/// The four Andreev energies in units of the gap, ascending: -e_hi, -e_lo, e_lo, e_hi.
std::array<double, 4> andreev_energies(const SMatrix4<double>& s, double theta1, double theta2);
std::array<double, 4> andreev_energies(const AndreevCoefficients& c, double theta1, double theta2);

/// -(e_hi + e_lo) in units of the gap, written without the inner square root so it stays smooth
/// where the two branches touch.
double junction_ground_energy(const AndreevCoefficients& c, double theta1, double theta2);

/// |det[1 - exp(-2i chi) S e^{i theta} S* e^{-i theta}]| with chi = arccos(energy).
double determinant_residual(const SMatrix4<double>& s, double theta1, double theta2, double energy);

/// Ground-state Josephson energy as Delta * sum K_ij theta1^i theta2^j, i + j <= 4.
struct QuarticExpansion {
  std::array<std::array<double, 5>, 5> k{};
  double fit_residual = 0;

  double operator()(int i, int j) const { return k[i][j]; }
  double evaluate(double t1, double t2) const;
};

QuarticExpansion josephson_expansion(const SMatrix4<double>& s);

struct CouplingExpansion {
  QuarticExpansion full;       // K_ij at the model's wire transmission
  QuarticExpansion reference;  // K_ij with the wire closed
  std::array<std::array<double, 5>, 5> delta{};
};

CouplingExpansion coupling_expansion(const ScatteringModel& m);

/// Finds the left/right splitter reflection a_l, a_r that put the closed-wire K20, K02 on target.
/// b stays fixed and all splitter phases are 0.
ScatteringModel calibrate_beamsplitters(double target_k20, double target_k02, const WireParams& wire,
                                        double coupling_b = 0.8);

}  // namespace czsim
