#include "czsim/hjunction.hpp"

#include <algorithm>
#include <limits>
#include <vector>

namespace czsim {

namespace {

double abs2(std::complex<double> z) { return std::norm(z); }

// Monomials of even total order up to 6; the order-6 terms absorb the stencil's truncation error.
struct Monomial {
  int i, j;
};

const std::vector<Monomial>& fit_monomials() {
  static const std::vector<Monomial> mons = [] {
    std::vector<Monomial> m;
    for (int d = 0; d <= 6; d += 2)
      for (int i = 0; i <= d; ++i) m.push_back({i, d - i});
    return m;
  }();
  return mons;
}

constexpr int kStencil = 9;
constexpr double kStencilHalfWidth = 0.3;

}  // namespace

AndreevCoefficients andreev_coefficients(const SMatrix4<double>& sm) {
  const auto s = [&](int i, int j) { return sm(i - 1, j - 1); };
  AndreevCoefficients c;
  c.a0 = 2 * abs2(s(1, 4));
  for (int b = 1; b <= 4; ++b) c.a0 += abs2(s(b, b));
  c.a12 = 2 * abs2(s(2, 3));
  c.a1 = 2 * (abs2(s(1, 2)) + abs2(s(2, 4)));
  c.a2 = 2 * (abs2(s(1, 3)) + abs2(s(3, 4)));

  c.b0 = 2 * (abs2(s(1, 2) * s(2, 4) - s(1, 4) * s(2, 2)) +
              abs2(s(1, 3) * s(3, 4) - s(1, 4) * s(3, 3)));
  for (int a = 1; a <= 4; ++a)
    for (int b = a + 1; b <= 4; ++b) c.b0 += abs2(s(a, a) * s(b, b) - s(a, b) * s(a, b));
  c.b1 = abs2(s(1, 3) * s(2, 3) - s(1, 2) * s(3, 3)) + abs2(s(1, 4) * s(2, 4) - s(1, 2) * s(4, 4)) +
         abs2(s(1, 2) * s(1, 4) - s(1, 1) * s(2, 4)) + abs2(s(2, 4) * s(3, 3) - s(2, 3) * s(3, 4));
  c.b2 = abs2(s(1, 2) * s(2, 3) - s(1, 3) * s(2, 2)) + abs2(s(1, 4) * s(3, 4) - s(1, 3) * s(4, 4)) +
         abs2(s(1, 3) * s(1, 4) - s(1, 1) * s(3, 4)) + abs2(s(2, 3) * s(2, 4) - s(2, 2) * s(3, 4));
  c.b12m = abs2(s(1, 2) * s(1, 3) - s(1, 1) * s(2, 3)) + abs2(s(2, 4) * s(3, 4) - s(2, 3) * s(4, 4)) +
           abs2(s(1, 4) * s(2, 3) - s(1, 2) * s(3, 4)) + abs2(s(1, 4) * s(2, 3) - s(1, 3) * s(2, 4));
  c.b12p = abs2(s(1, 3) * s(2, 4) - s(1, 2) * s(3, 4));
  return c;
}

std::array<double, 4> andreev_energies(const AndreevCoefficients& c, double theta1, double theta2) {
  const double a = c.a_of(theta1, theta2);
  const double b = c.b_of(theta1, theta2);
  double disc = a * a - 4 * b + 8;
  require(disc >= -1e-12, ErrorKind::numerical_consistency,
          "Andreev spectrum: negative discriminant, S is not unitary");
  // below its own rounding floor the discriminant is a double root; its square root would be noise
  const double floor = 64 * std::numeric_limits<double>::epsilon() * (a * a + 4 * std::abs(b) + 8);
  disc = disc <= floor ? 0.0 : std::sqrt(disc);
  const double hi = std::sqrt(std::max((a + 4 + disc) / 8, 0.0));
  const double lo = std::sqrt(std::max((a + 4 - disc) / 8, 0.0));
  return {-hi, -lo, lo, hi};
}

std::array<double, 4> andreev_energies(const SMatrix4<double>& s, double theta1, double theta2) {
  return andreev_energies(andreev_coefficients(s), theta1, theta2);
}

double junction_ground_energy(const AndreevCoefficients& c, double theta1, double theta2) {
  const double a = c.a_of(theta1, theta2);
  const double b = c.b_of(theta1, theta2);
  return -std::sqrt((a + 4) / 4 + std::sqrt(std::max(8 * a + 4 * b + 8, 0.0)) / 4);
}

double determinant_residual(const SMatrix4<double>& s, double theta1, double theta2, double energy) {
  const Eigen::Vector4cd ph(1.0, std::polar(1.0, theta1), std::polar(1.0, theta2), 1.0);
  const SMatrix4<double> m = s * ph.asDiagonal() * s.conjugate() * ph.conjugate().asDiagonal();
  const double chi = std::acos(std::clamp(energy, -1.0, 1.0));
  const SMatrix4<double> d = SMatrix4<double>::Identity() - std::polar(1.0, -2 * chi) * m;
  return std::abs(d.determinant());
}

double QuarticExpansion::evaluate(double t1, double t2) const {
  double e = 0;
  for (int i = 0; i <= 4; ++i)
    for (int j = 0; i + j <= 4; ++j) e += k[i][j] * std::pow(t1, i) * std::pow(t2, j);
  return e;
}

QuarticExpansion josephson_expansion(const SMatrix4<double>& s) {
  const auto c = andreev_coefficients(s);
  const auto& mons = fit_monomials();
  const int npts = kStencil * kStencil;
  Eigen::MatrixXd x(npts, static_cast<Index>(mons.size()));
  Eigen::VectorXd y(npts);
  int row = 0;
  for (int p = 0; p < kStencil; ++p) {
    const double t1 = -kStencilHalfWidth + 2 * kStencilHalfWidth * p / (kStencil - 1);
    for (int q = 0; q < kStencil; ++q, ++row) {
      const double t2 = -kStencilHalfWidth + 2 * kStencilHalfWidth * q / (kStencil - 1);
      for (std::size_t m = 0; m < mons.size(); ++m)
        x(row, static_cast<Index>(m)) = std::pow(t1, mons[m].i) * std::pow(t2, mons[m].j);
      y(row) = junction_ground_energy(c, t1, t2);
    }
  }
  const Eigen::VectorXd coef = x.colPivHouseholderQr().solve(y);
  QuarticExpansion out;
  out.fit_residual = std::sqrt((y - x * coef).squaredNorm() / npts);
  require(out.fit_residual <= 1e-8, ErrorKind::fit,
          "Josephson expansion: fit residual " + std::to_string(out.fit_residual) + " exceeds 1e-8");
  for (std::size_t m = 0; m < mons.size(); ++m)
    if (mons[m].i + mons[m].j <= 4) out.k[mons[m].i][mons[m].j] = coef(static_cast<Index>(m));
  return out;
}

CouplingExpansion coupling_expansion(const ScatteringModel& m) {
  CouplingExpansion out;
  out.full = josephson_expansion(compose_h_smatrix(m));
  out.reference = josephson_expansion(compose_h_smatrix(m.with_transmission(0.0)));
  for (int i = 0; i <= 4; ++i)
    for (int j = 0; i + j <= 4; ++j) out.delta[i][j] = out.full.k[i][j] - out.reference.k[i][j];
  return out;
}

namespace {

ScatteringModel symmetric_model(double al, double ar, double b, const WireParams& wire) {
  ScatteringModel m;
  m.left = {al, b, 0, 0, 0, 0};
  m.right = {ar, b, 0, 0, 0, 0};
  m.wire = wire;
  return m;
}

Eigen::Vector2d closed_wire_quadratics(double al, double ar, double b, const WireParams& wire) {
  WireParams closed = wire;
  closed.transmission = 0;
  const auto k = josephson_expansion(compose_h_smatrix(symmetric_model(al, ar, b, closed)));
  return {k(2, 0), k(0, 2)};
}

}  // namespace

ScatteringModel calibrate_beamsplitters(double target_k20, double target_k02, const WireParams& wire,
                                        double coupling_b) {
  require(target_k20 > 0 && target_k20 <= 0.25 && target_k02 > 0 && target_k02 <= 0.25,
          ErrorKind::parameter, "calibration targets outside (0, 0.25]");
  require(coupling_b >= 0 && coupling_b <= 1, ErrorKind::parameter, "calibration: b outside [0,1]");
  const Eigen::Vector2d target(target_k20, target_k02);

  // Initial guess: smallest-a sign change on a coarse symmetric scan, side by side.
  constexpr int kScan = 64;
  constexpr double kAMax = 0.999;
  Eigen::Vector2d guess(-1, -1);
  Eigen::Vector2d prev = closed_wire_quadratics(0, 0, coupling_b, wire) - target;
  for (int s = 1; s <= kScan && (guess.array() < 0).any(); ++s) {
    const double a0 = kAMax * (s - 1) / kScan, a1 = kAMax * s / kScan;
    const Eigen::Vector2d cur = closed_wire_quadratics(a1, a1, coupling_b, wire) - target;
    for (int side = 0; side < 2; ++side)
      if (guess(side) < 0 && prev(side) * cur(side) <= 0)
        guess(side) = a0 + (a1 - a0) * prev(side) / (prev(side) - cur(side));
    prev = cur;
  }
  require((guess.array() >= 0).all(), ErrorKind::calibration,
          "calibration: targets not reachable with a in [0,1]");

  Eigen::Vector2d a = guess;
  constexpr double kStep = 1e-6;
  for (int it = 0; it < 50; ++it) {
    const Eigen::Vector2d f = closed_wire_quadratics(a(0), a(1), coupling_b, wire) - target;
    if (f.cwiseAbs().maxCoeff() < 1e-12) break;
    Eigen::Matrix2d jac;
    for (int c = 0; c < 2; ++c) {
      Eigen::Vector2d up = a, dn = a;
      up(c) = std::min(a(c) + kStep, 1.0);
      dn(c) = std::max(a(c) - kStep, 0.0);
      jac.col(c) = (closed_wire_quadratics(up(0), up(1), coupling_b, wire) -
                    closed_wire_quadratics(dn(0), dn(1), coupling_b, wire)) / (up(c) - dn(c));
    }
    require(std::abs(jac.determinant()) > 1e-14, ErrorKind::calibration,
            "calibration: singular Jacobian");
    a = (a - jac.partialPivLu().solve(f)).cwiseMax(0.0).cwiseMin(1.0);
  }
  const Eigen::Vector2d f = closed_wire_quadratics(a(0), a(1), coupling_b, wire) - target;
  require(f.cwiseAbs().maxCoeff() < 1e-4, ErrorKind::calibration,
          "calibration: Newton iteration did not reach the targets");
  return symmetric_model(a(0), a(1), coupling_b, wire);
}

}  // namespace czsim
