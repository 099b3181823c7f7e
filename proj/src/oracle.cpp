#include "czsim/oracle.hpp"

#include <cmath>

namespace czsim {

std::vector<double> uniform_grid(double tau_s, int intervals) {
  std::vector<double> g(static_cast<std::size_t>(intervals) + 1);
  for (int k = 0; k <= intervals; ++k) g[k] = tau_s * k / intervals;
  return g;
}

TwoLevelTrace project_two_level(const CoupledPair& pair, const PulseSchedule& schedule,
                                const std::vector<double>& grid) {
  validate(schedule);
  require(grid.size() >= 3, ErrorKind::resolution, "two-level trace: grid too short");
  for (std::size_t k = 1; k < grid.size(); ++k) {
    require(grid[k] > grid[k - 1], ErrorKind::parameter, "two-level trace: grid not increasing");
    require(grid[k] - grid[k - 1] <= schedule.tau_s / 50 * (1 + 1e-12), ErrorKind::resolution,
            "two-level trace: grid coarser than tau_s / 50");
  }
  const CVector<double> v11 = pair.bare_state({1, 1});
  const CVector<double> v02 = pair.bare_state({0, 2});
  const Eigen::VectorXd r11 = v11.real(), r02 = v02.real();

  TwoLevelTrace tr;
  tr.times = grid;
  for (double t : grid) {
    const RMatrix<double> h = pair.real_hamiltonian(transmission_profile(t, schedule, RampPhase::on));
    tr.e11.push_back(r11.dot(h * r11));
    tr.e02.push_back(r02.dot(h * r02));
    tr.j.push_back(std::abs(r02.dot(h * r11)));
  }
  return tr;
}

namespace {

// Second-order finite-difference derivative on a non-uniform grid.
std::vector<double> derivative(const std::vector<double>& t, const std::vector<double>& y) {
  const std::size_t n = t.size();
  std::vector<double> d(n);
  for (std::size_t k = 1; k + 1 < n; ++k) {
    const double h0 = t[k] - t[k - 1], h1 = t[k + 1] - t[k];
    d[k] = (-h1 / (h0 * (h0 + h1))) * y[k - 1] + ((h1 - h0) / (h0 * h1)) * y[k] +
           (h0 / (h1 * (h0 + h1))) * y[k + 1];
  }
  {
    const double h0 = t[1] - t[0], h1 = t[2] - t[1];
    d[0] = -(2 * h0 + h1) / (h0 * (h0 + h1)) * y[0] + (h0 + h1) / (h0 * h1) * y[1] -
           h0 / (h1 * (h0 + h1)) * y[2];
  }
  {
    const std::size_t m = n - 1;
    const double h0 = t[m - 1] - t[m - 2], h1 = t[m] - t[m - 1];
    d[m] = h1 / (h0 * (h0 + h1)) * y[m - 2] - (h0 + h1) / (h0 * h1) * y[m - 1] +
           (2 * h1 + h0) / (h1 * (h0 + h1)) * y[m];
  }
  return d;
}

std::complex<double> trapezoid(const std::vector<double>& t, const std::vector<std::complex<double>>& f,
                               std::size_t stride) {
  std::complex<double> s = 0;
  for (std::size_t k = stride; k < t.size(); k += stride)
    s += 0.5 * (t[k] - t[k - stride]) * (f[k] + f[k - stride]);
  return s;
}

}  // namespace

TransitionEstimate transition_probability(const TwoLevelTrace& tr) {
  const std::size_t n = tr.times.size();
  require(n >= 3 && tr.e11.size() == n && tr.e02.size() == n && tr.j.size() == n,
          ErrorKind::parameter, "transition_probability: inconsistent trace");
  std::vector<double> de(n), rabi(n);
  for (std::size_t k = 0; k < n; ++k) {
    de[k] = tr.e11[k] - tr.e02[k];
    rabi[k] = std::sqrt(de[k] * de[k] + 4 * tr.j[k] * tr.j[k]);
  }
  const auto dde = derivative(tr.times, de);
  const auto dj = derivative(tr.times, tr.j);

  std::vector<std::complex<double>> f(n);
  double chi = 0;
  for (std::size_t k = 0; k < n; ++k) {
    if (k > 0) chi += kTwoPi * 0.5 * (tr.times[k] - tr.times[k - 1]) * (rabi[k] + rabi[k - 1]);
    const double denom = rabi[k] * rabi[k];
    const double m = denom > 0 ? (dj[k] * de[k] - dde[k] * tr.j[k]) / denom : 0.0;
    f[k] = -std::polar(1.0, chi) * m;
  }

  const auto fine = trapezoid(tr.times, f, 1);
  std::complex<double> amp = fine;
  TransitionEstimate out;
  if ((n - 1) % 2 == 0) {
    const auto coarse = trapezoid(tr.times, f, 2);
    const auto corr = (fine - coarse) / 3.0;
    amp = fine + corr;
    out.quadrature_error = std::abs(corr);
  }
  out.probability = std::norm(amp);
  out.regime_warning = out.probability > 0.1;
  return out;
}

}  // namespace czsim
