#pragma once

#include <array>
#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "czsim/devices.hpp"
#include "czsim/metrics.hpp"

namespace czsim {

enum class PulseShape { erf };
enum class RampPhase { on, plateau, off };

struct PulseSchedule {
  double tau_s = 15;  // ns
  double tau_w = 0;   // ns
  double t0 = 0.01;   // plateau transmission T_0
  PulseShape shape = PulseShape::erf;

  double gate_time() const { return 2 * tau_s + tau_w; }

  friend bool operator==(const PulseSchedule&, const PulseSchedule&) = default;
};

void validate(const PulseSchedule& s);

/// Erf ramp rescaled to be exactly 0 at t = 0 and T_0 at t = tau_s; the off ramp is its time reverse.
double transmission_profile(double t, const PulseSchedule& s, RampPhase phase);

/// Unit-amplitude ramp shape s(u), u = t / tau_s in [0, 1].
double ramp_shape(double u);

using HamiltonianFn = std::function<OperatorMatrix(double)>;
using RealHamiltonianFn = std::function<RMatrix<double>(double)>;

struct PropagationOptions {
  double tolerance = 1e-5;
  int max_halvings = 20;
  double initial_steps_per_ns = 8;
  /// Columns on which the step-halving change is measured; empty means the identity.
  CMatrix<double> probe;
};

struct Propagation {
  CMatrix<double> u;
  Index steps = 0;
  double change = 0;  // max column norm of (U_dt - U_dt/2) P at acceptance
};

/// Piecewise-constant midpoint exponentials, each step exact via eigendecomposition; the step is
/// halved until successive results differ by less than the tolerance on the probe columns.
Propagation propagate(const HamiltonianFn& h, double t0, double t1, const PropagationOptions& opt = {});
Propagation propagate(const RealHamiltonianFn& h, double t0, double t1,
                      const PropagationOptions& opt = {});

struct SwitchingPhases {
  std::array<double, 4> phi{};  // order 00, 01, 10, 11
  double delta_phi_cz = 0;      // phi11 + phi00 - phi10 - phi01, wrapped to (-pi, pi]
};

/// phi_m = -arg <m~|U|m>, dressed states on the left and bare states on the right.
SwitchingPhases switching_phases(const CMatrix<double>& u, const SpectrumTable& dressed,
                                 const SpectrumTable& bare);

using LeakageTable = std::map<std::pair<StateLabel, StateLabel>, double>;  // (from, to) -> P

/// P_{m,n} = |<m~|U|n>|^2 for each requested n, over n itself and its nearest dressed neighbours.
LeakageTable leakage_probabilities(const CMatrix<double>& u, const SpectrumTable& dressed,
                                   const SpectrumTable& bare, const std::vector<StateLabel>& from,
                                   int neighbours = 6);

/// Smallest tau_w >= 0 with 2 dphi / (2 pi) + Delta_CZ tau_w = 1/2 (mod 1).
double waiting_time(double delta_phi_on, double delta_cz);

struct SwitchOn {
  double tau_s = 0;
  double t0 = 0;
  SpectrumTable dressed;  // at T_0
  double delta_cz = 0;
  CMatrix<double> u_on;
  SwitchingPhases phases;
  LeakageTable leakage;  // from the computational states
  Index steps = 0;
};

SwitchOn switch_on(const CoupledPair& pair, double tau_s, double t0, const PropagationOptions& opt = {});

struct GateReport {
  PulseSchedule schedule;
  double delta_cz = 0;
  std::array<double, 4> phi_on{};
  double delta_phi_on = 0;
  LeakageTable switch_on_leakage;
  LeakageTable leakage;  // full gate, computational states to their neighbours
  ComputationalBlock w;
  double fidelity = 0;
  double error = 0;
  double gate_time = 0;
  double unitarity_defect = 0;
  Index steps = 0;
};

GateReport compose_gate(const PulseSchedule& schedule, const CoupledPair& pair,
                        const PropagationOptions& opt = {});
/// Reuses an on-ramp computed for the same tau_s and T_0.
GateReport compose_gate(const PulseSchedule& schedule, const CoupledPair& pair, const SwitchOn& on);

/// tau_w from the waiting-time condition for a computed on-ramp.
PulseSchedule plateau_schedule(const SwitchOn& on);

/// Adiabatic estimate of the accumulated on-ramp phase 2 pi tau_s * mean Delta_CZ along the ramp.
double adiabatic_switching_phase(const CoupledPair& pair, double tau_s, double t0, int nodes = 16);

/// tau_s such that a tau_w = 0 gate completes the conditional phase: 2 dphi_on = pi (mod 2 pi).
PulseSchedule zero_wait_schedule(const CoupledPair& pair, double t0, const PropagationOptions& opt = {},
                                 SwitchOn* on_out = nullptr);

/// Probe columns for propagation: the tracked bare states.
CMatrix<double> bare_probe(const CoupledPair& pair);

}  // namespace czsim
