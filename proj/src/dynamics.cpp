#include "czsim/dynamics.hpp"

#include <algorithm>
#include <cmath>

namespace czsim {

void validate(const PulseSchedule& s) {
  require(s.tau_s > 0, ErrorKind::parameter, "tau_s must be positive");
  require(s.tau_w >= 0, ErrorKind::parameter, "tau_w must be non-negative");
  require(s.t0 >= 0 && s.t0 <= 1, ErrorKind::parameter, "T_0 outside [0,1]");
}

double ramp_shape(double u) {
  static const double lo = std::erf(-2.0), hi = std::erf(2.0);
  if (u <= 0) return 0;
  if (u >= 1) return 1;
  return (std::erf(4 * u - 2) - lo) / (hi - lo);
}

double transmission_profile(double t, const PulseSchedule& s, RampPhase phase) {
  switch (phase) {
    case RampPhase::on: return s.t0 * ramp_shape(t / s.tau_s);
    case RampPhase::plateau: return s.t0;
    case RampPhase::off: return s.t0 * ramp_shape((s.tau_s - t) / s.tau_s);
  }
  return 0;
}

namespace {

// U <- exp(-2 pi i H dt) U for real symmetric H.
void apply_step(const RMatrix<double>& h, double dt, CMatrix<double>& u) {
  Eigen::SelfAdjointEigenSolver<RMatrix<double>> es(h);
  const RMatrix<double>& v = es.eigenvectors();
  const Eigen::ArrayXd ang = es.eigenvalues().array() * (-kTwoPi * dt);
  const Eigen::ArrayXd c = ang.cos(), s = ang.sin();
  const RMatrix<double> xr = v.transpose() * u.real();
  const RMatrix<double> xi = v.transpose() * u.imag();
  const RMatrix<double> yr = (xr.array().colwise() * c - xi.array().colwise() * s).matrix();
  const RMatrix<double> yi = (xr.array().colwise() * s + xi.array().colwise() * c).matrix();
  u.real() = v * yr;
  u.imag() = v * yi;
}

void apply_step(const CMatrix<double>& h, double dt, CMatrix<double>& u) {
  Eigen::SelfAdjointEigenSolver<CMatrix<double>> es(h);
  const auto& v = es.eigenvectors();
  const CVector<double> ph = (es.eigenvalues().array() * (-kTwoPi * dt))
                                 .unaryExpr([](double x) { return std::polar(1.0, x); })
                                 .matrix();
  u = v * (ph.asDiagonal() * (v.adjoint() * u));
}

template <typename Matrix, typename Fn>
Propagation propagate_impl(const Fn& h, double t0, double t1, const PropagationOptions& opt) {
  require(t1 > t0, ErrorKind::parameter, "propagate: t1 must exceed t0");
  const Index dim = h(t0).rows();
  const CMatrix<double> probe = opt.probe.size() ? opt.probe : CMatrix<double>::Identity(dim, dim);
  require(probe.rows() == dim, ErrorKind::dimension, "propagate: probe dimension mismatch");

  const auto run = [&](Index steps) {
    CMatrix<double> u = CMatrix<double>::Identity(dim, dim);
    const double dt = (t1 - t0) / static_cast<double>(steps);
    for (Index k = 0; k < steps; ++k) apply_step(Matrix(h(t0 + (k + 0.5) * dt)), dt, u);
    return u;
  };

  Index steps = std::max<Index>(4, static_cast<Index>(std::ceil(opt.initial_steps_per_ns * (t1 - t0))));
  CMatrix<double> prev = run(steps);
  double change = 0;
  for (int halving = 0; halving < opt.max_halvings; ++halving) {
    steps *= 2;
    CMatrix<double> cur = run(steps);
    change = ((cur - prev) * probe).colwise().norm().maxCoeff();
    if (change < opt.tolerance) return {std::move(cur), steps, change};
    prev = std::move(cur);
  }
  throw Error(ErrorKind::integration, "propagate: no convergence after " +
                                          std::to_string(opt.max_halvings) + " halvings (change " +
                                          std::to_string(change) + ")");
}

}  // namespace

Propagation propagate(const HamiltonianFn& h, double t0, double t1, const PropagationOptions& opt) {
  const auto checked = [&](double t) {
    OperatorMatrix op = h(t);
    require(hermiticity_defect(op.entries) <= 1e-12, ErrorKind::parameter,
            "propagate: Hamiltonian not Hermitian");
    return op.entries;
  };
  return propagate_impl<CMatrix<double>>(checked, t0, t1, opt);
}

Propagation propagate(const RealHamiltonianFn& h, double t0, double t1, const PropagationOptions& opt) {
  return propagate_impl<RMatrix<double>>(h, t0, t1, opt);
}

SwitchingPhases switching_phases(const CMatrix<double>& u, const SpectrumTable& dressed,
                                 const SpectrumTable& bare) {
  SwitchingPhases out;
  for (int m = 0; m < 4; ++m) {
    const auto s = kComputational[m];
    const auto amp = dressed.state(s).dot(u * bare.state(s));
    require(std::abs(amp) >= 0.5, ErrorKind::leakage,
            "switching_phases: |<" + to_string(s) + "~|U|" + to_string(s) + ">| below 0.5");
    out.phi[m] = -std::arg(amp);
  }
  out.delta_phi_cz = wrap_phase(out.phi[3] + out.phi[0] - out.phi[2] - out.phi[1]);
  return out;
}

LeakageTable leakage_probabilities(const CMatrix<double>& u, const SpectrumTable& dressed,
                                   const SpectrumTable& bare, const std::vector<StateLabel>& from,
                                   int neighbours) {
  LeakageTable out;
  for (const auto n : from) {
    const CVector<double> psi = u * bare.state(n);
    const double en = dressed.energy(n);
    std::vector<std::pair<double, StateLabel>> near;
    for (const auto m : dressed.labels)
      if (m != n) near.emplace_back(std::abs(dressed.energy(m) - en), m);
    std::stable_sort(near.begin(), near.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    if (static_cast<int>(near.size()) > neighbours) near.resize(neighbours);
    out[{n, n}] = std::norm(dressed.state(n).dot(psi));
    for (const auto& [gap, m] : near) out[{n, m}] = std::norm(dressed.state(m).dot(psi));
  }
  return out;
}

double waiting_time(double delta_phi_on, double delta_cz) {
  require(std::abs(delta_cz) >= 1e-6, ErrorKind::no_coupling,
          "waiting_time: |Delta_CZ| below 1e-6 GHz");
  const double x = 0.5 - 2 * delta_phi_on / kTwoPi;
  double frac = delta_cz > 0 ? x - std::floor(x) : -x - std::floor(-x);
  if (frac > 1 - 1e-12) frac = 0;
  return frac / std::abs(delta_cz);
}

CMatrix<double> bare_probe(const CoupledPair& pair) {
  return pair.bare().eigenvectors;
}

namespace {

std::vector<StateLabel> computational_labels() {
  return {kComputational.begin(), kComputational.end()};
}

// Sign continuity between bare and dressed computational states; a flip would shift phases by pi.
void check_gauge(const SpectrumTable& dressed, const SpectrumTable& bare) {
  for (const auto s : kComputational)
    require(bare.state(s).dot(dressed.state(s)).real() > 0, ErrorKind::labeling,
            "dressed state " + to_string(s) + " has a gauge opposite to its bare state");
}

}  // namespace

SwitchOn switch_on(const CoupledPair& pair, double tau_s, double t0, const PropagationOptions& opt) {
  PulseSchedule sched{tau_s, 0, t0, PulseShape::erf};
  validate(sched);
  SwitchOn on;
  on.tau_s = tau_s;
  on.t0 = t0;
  on.dressed = pair.dressed(t0);
  check_gauge(on.dressed, pair.bare());
  on.delta_cz = delta_cz(on.dressed);

  PropagationOptions popt = opt;
  if (!popt.probe.size()) popt.probe = bare_probe(pair);
  const RealHamiltonianFn h = [&](double t) {
    return pair.real_hamiltonian(transmission_profile(t, sched, RampPhase::on));
  };
  auto prop = propagate(h, 0.0, tau_s, popt);
  on.u_on = std::move(prop.u);
  on.steps = prop.steps;
  on.phases = switching_phases(on.u_on, on.dressed, pair.bare());
  on.leakage = leakage_probabilities(on.u_on, on.dressed, pair.bare(), computational_labels());
  return on;
}

GateReport compose_gate(const PulseSchedule& schedule, const CoupledPair& pair, const SwitchOn& on) {
  validate(schedule);
  require(on.tau_s == schedule.tau_s && on.t0 == schedule.t0, ErrorKind::parameter,
          "compose_gate: on-ramp computed for a different schedule");
  GateReport r;
  r.schedule = schedule;
  r.delta_cz = on.delta_cz;
  r.phi_on = on.phases.phi;
  r.delta_phi_on = on.phases.delta_phi_cz;
  r.switch_on_leakage = on.leakage;
  r.gate_time = schedule.gate_time();
  r.steps = on.steps;

  // H(t) is real symmetric, so the time-reversed ramp propagates as the transpose of the on-ramp.
  const CMatrix<double>& u_on = on.u_on;
  CMatrix<double> u_off = u_on.transpose();
  CMatrix<double> u = schedule.tau_w > 0
                          ? CMatrix<double>(u_off * evolution_operator(pair.real_hamiltonian(schedule.t0),
                                                                       schedule.tau_w) * u_on)
                          : CMatrix<double>(u_off * u_on);
  r.unitarity_defect = unitarity_defect(u);

  const auto& bare = pair.bare();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      r.w(i, j) = bare.state(kComputational[i]).dot(u * bare.state(kComputational[j]));
  validate_block(r.w);
  r.fidelity = fidelity(r.w);
  r.error = 1 - r.fidelity;
  r.leakage = leakage_probabilities(u, bare, bare, computational_labels());
  return r;
}

GateReport compose_gate(const PulseSchedule& schedule, const CoupledPair& pair,
                        const PropagationOptions& opt) {
  return compose_gate(schedule, pair, switch_on(pair, schedule.tau_s, schedule.t0, opt));
}

PulseSchedule plateau_schedule(const SwitchOn& on) {
  return {on.tau_s, waiting_time(on.phases.delta_phi_cz, on.delta_cz), on.t0, PulseShape::erf};
}

double adiabatic_switching_phase(const CoupledPair& pair, double tau_s, double t0, int nodes) {
  require(nodes >= 2, ErrorKind::parameter, "adiabatic phase: at least 2 intervals");
  if (nodes % 2) ++nodes;
  SpectrumTable cur = pair.bare();
  double sum = 0;
  for (int k = 0; k <= nodes; ++k) {
    const double tr = t0 * ramp_shape(static_cast<double>(k) / nodes);
    try {
      cur = pair.dressed(tr, cur);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::labeling) throw;
      cur = pair.dressed(tr);
    }
    const double w = (k == 0 || k == nodes) ? 1.0 : (k % 2 ? 4.0 : 2.0);
    sum += w * delta_cz(cur);
  }
  return kTwoPi * tau_s * sum / (3.0 * nodes);
}

PulseSchedule zero_wait_schedule(const CoupledPair& pair, double t0, const PropagationOptions& opt,
                                 SwitchOn* on_out) {
  const double per_ns = adiabatic_switching_phase(pair, 1.0, t0);
  require(std::abs(per_ns) > 1e-9, ErrorKind::no_coupling, "zero-wait: no conditional phase at T_0");
  const double estimate = kPi / (2 * std::abs(per_ns));

  std::map<double, SwitchOn> cache;
  const auto g = [&](double tau) {
    auto it = cache.find(tau);
    if (it == cache.end()) it = cache.emplace(tau, switch_on(pair, tau, t0, opt)).first;
    return wrap_phase(2 * it->second.phases.delta_phi_cz - kPi);
  };

  double a = 0.85 * estimate, b = 1.15 * estimate;
  double ga = g(a), gb = g(b);
  for (int k = 0; k < 8 && !(ga * gb <= 0 && std::abs(ga) < kPi / 2 && std::abs(gb) < kPi / 2); ++k) {
    a *= 0.9;
    b *= 1.1;
    ga = g(a);
    gb = g(b);
  }
  require(ga * gb <= 0, ErrorKind::no_coupling, "zero-wait: could not bracket the phase condition");

  // Illinois regula falsi
  double c = a, gc = ga;
  int side = 0;
  for (int it = 0; it < 40; ++it) {
    c = (a * gb - b * ga) / (gb - ga);
    gc = g(c);
    if (std::abs(gc) < 1e-7 || std::abs(b - a) < 1e-5) break;
    if (gc * gb > 0) {
      b = c;
      gb = gc;
      if (side == -1) ga /= 2;
      side = -1;
    } else {
      a = c;
      ga = gc;
      if (side == 1) gb /= 2;
      side = 1;
    }
  }
  if (on_out) *on_out = cache.at(c);
  return {c, 0.0, t0, PulseShape::erf};
}

}  // namespace czsim
