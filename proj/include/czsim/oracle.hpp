#pragma once

#include <vector>

#include "czsim/dynamics.hpp"

namespace czsim {

/// Two-level model of |11> and |02> along the on-ramp, bare-basis matrix elements.
struct TwoLevelTrace {
  std::vector<double> times;  // ns
  std::vector<double> e11;    // GHz
  std::vector<double> e02;
  std::vector<double> j;
};

/// Uniform grid over [0, tau_s] with the given number of intervals.
std::vector<double> uniform_grid(double tau_s, int intervals);

TwoLevelTrace project_two_level(const CoupledPair& pair, const PulseSchedule& schedule,
                                const std::vector<double>& grid);

struct TransitionEstimate {
  double probability = 0;
  double quadrature_error = 0;  // |Richardson correction| on the amplitude
  bool regime_warning = false;  // P > 0.1: the weak-transition assumption fails
};

/// |C02(tau_s)|^2 from dC02/dt = -e^{i chi} M with chi = 2 pi int sqrt(dE^2 + 4 J^2) and
/// M = (J' dE - dE' J) / (dE^2 + 4 J^2).
TransitionEstimate transition_probability(const TwoLevelTrace& trace);

}  // namespace czsim
