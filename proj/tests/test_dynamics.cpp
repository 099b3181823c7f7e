#include <random>

#include "doctest.h"

#include "czsim/dynamics.hpp"

using namespace czsim;

namespace {

const CoupledPair& transmon_pair() {
  static const CoupledPair p(default_device(DeviceKind::transmon_pair));
  return p;
}

CMatrix<double> random_hermitian(int n, std::mt19937_64& g) {
  std::normal_distribution<double> d;
  CMatrix<double> a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = {d(g), d(g)};
  return (a + a.adjoint()) / 2;
}

}  // namespace

TEST_CASE("erf ramp endpoints, midpoint and time reversal") {
  const PulseSchedule s{15, 0, 0.013};
  CHECK(transmission_profile(0, s, RampPhase::on) == 0.0);
  CHECK(transmission_profile(15, s, RampPhase::on) == 0.013);
  CHECK(transmission_profile(7.5, s, RampPhase::on) == doctest::Approx(0.0065).epsilon(1e-14));
  CHECK(transmission_profile(3, s, RampPhase::plateau) == 0.013);
  for (double t = 0; t <= 15; t += 0.37)
    CHECK(transmission_profile(t, s, RampPhase::on) ==
          doctest::Approx(transmission_profile(15 - t, s, RampPhase::off)).epsilon(1e-13));
  // deviation from the unrenormalized profile stays below 0.3% of T_0
  for (double u = 0; u <= 1; u += 0.01)
    CHECK(std::abs(ramp_shape(u) - (std::erf(4 * u - 2) + 1) / 2) < 3e-3);
}

TEST_CASE("schedule validation and gate time") {
  PulseSchedule s{12.5, 7.25, 0.01};
  CHECK(s.gate_time() == 2 * 12.5 + 7.25);
  CHECK_THROWS_AS(validate(PulseSchedule{0, 0, 0.01}), Error);
  CHECK_THROWS_AS(validate(PulseSchedule{10, -1, 0.01}), Error);
  CHECK_THROWS_AS(validate(PulseSchedule{10, 0, 1.5}), Error);
}

TEST_CASE("constant Hamiltonian matches the exact exponential") {
  std::mt19937_64 g(3);
  const CMatrix<double> h = random_hermitian(6, g);
  const OperatorMatrix op{h, BasisTag{"test"}};
  const auto p = propagate(HamiltonianFn([&](double) { return op; }), 0.0, 1.7);
  CHECK((p.u - evolution_operator(h, 1.7)).norm() < 1e-10);
  const RMatrix<double> hr = h.real();
  const auto pr = propagate(RealHamiltonianFn([&](double) { return hr; }), 0.0, 1.7);
  CHECK((pr.u - evolution_operator(CMatrix<double>(hr.cast<Complex<double>>()), 1.7)).norm() < 1e-10);
}

TEST_CASE("time-dependent propagation is unitary and converged") {
  std::mt19937_64 g(5);
  const CMatrix<double> a = random_hermitian(8, g), b = random_hermitian(8, g);
  const HamiltonianFn h = [&](double t) { return OperatorMatrix{a + std::sin(2 * t) * b, BasisTag{"test"}}; };
  PropagationOptions opt;
  opt.tolerance = 1e-7;
  const auto p = propagate(h, 0.0, 2.0, opt);
  CHECK(unitarity_defect(p.u) < 1e-8);
  CHECK(p.change < 1e-7);
  // second-order midpoint rule: the reference at 4x the steps differs by about change / 3
  opt.initial_steps_per_ns = 2.0 * static_cast<double>(p.steps);
  opt.max_halvings = 1;
  opt.tolerance = 1;
  const auto fine = propagate(h, 0.0, 2.0, opt);
  CHECK((fine.u - p.u).colwise().norm().maxCoeff() < p.change);
}

TEST_CASE("non-convergence and bad input are reported") {
  std::mt19937_64 g(9);
  const CMatrix<double> a = random_hermitian(4, g);
  PropagationOptions opt;
  opt.max_halvings = 2;
  opt.tolerance = 1e-14;
  const HamiltonianFn h = [&](double t) { return OperatorMatrix{std::cos(40 * t) * a, BasisTag{"t"}}; };
  try {
    propagate(h, 0.0, 1.0, opt);
    FAIL("expected integration error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::integration);
  }
  CMatrix<double> bad = a;
  bad(0, 1) += 1.0;
  const HamiltonianFn nh = [&](double) { return OperatorMatrix{bad, BasisTag{"t"}}; };
  CHECK_THROWS_AS(propagate(nh, 0.0, 1.0), Error);
  CHECK_THROWS_AS(propagate(h, 1.0, 1.0), Error);
}

TEST_CASE("free evolution accumulates phases 2 pi E t") {
  const auto& p = transmon_pair();
  const RMatrix<double> h0 = p.real_hamiltonian(0);
  const double t = 3.3;
  const auto u = propagate(RealHamiltonianFn([&](double) { return h0; }), 0.0, t).u;
  const auto ph = switching_phases(u, p.bare(), p.bare());
  for (int m = 0; m < 4; ++m)
    CHECK(std::abs(wrap_phase(ph.phi[m] - kTwoPi * p.bare().absolute_energy(kComputational[m]) * t)) < 1e-8);
  CHECK(std::abs(ph.delta_phi_cz) < 1e-8);
}

TEST_CASE("waiting time") {
  CHECK(waiting_time(-kPi / 2, 0.012) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(waiting_time(-kPi / 2, -0.012) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(waiting_time(0.0, -0.010) == doctest::Approx(50.0).epsilon(1e-12));
  CHECK(waiting_time(0.0, 0.010) == doctest::Approx(50.0).epsilon(1e-12));
  std::mt19937_64 g(11);
  std::uniform_real_distribution<double> ph(-kPi, kPi), dz(0.001, 0.05);
  for (int k = 0; k < 200; ++k) {
    const double d = ph(g), z = (k % 2 ? 1 : -1) * dz(g);
    const double tw = waiting_time(d, z);
    CHECK(tw >= 0);
    CHECK(tw < 1 / std::abs(z));
    const double x = 2 * d / kTwoPi + z * tw - 0.5;
    CHECK(std::abs(x - std::round(x)) < 1e-9);
  }
  try {
    waiting_time(0.1, 1e-7);
    FAIL("expected no-coupling error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::no_coupling);
  }
}

TEST_CASE("switching off a zero pulse leaves states in place") {
  const auto on = switch_on(transmon_pair(), 5, 0.0);
  for (const auto& [key, prob] : on.leakage) CHECK(prob == doctest::Approx(key.first == key.second ? 1.0 : 0.0).epsilon(1e-12));
  CHECK(std::abs(on.phases.delta_phi_cz) < 1e-10);
}

TEST_CASE("transmon on-ramp at T_0 = 0.015") {
  const auto& p = transmon_pair();
  const auto on = switch_on(p, 20, 0.015);
  CHECK(unitarity_defect(on.u_on) < 1e-8);
  CHECK(on.leakage.at({{1, 1}, {0, 2}}) <= 1e-3);
  for (const auto s : kComputational) {
    double row = 0;
    for (const auto& [key, prob] : on.leakage) {
      CHECK(prob >= 0);
      CHECK(prob <= 1 + 1e-8);
      if (key.first == s) row += prob;
    }
    CHECK(row <= 1 + 1e-8);
  }
  // probability is conserved over the full dressed basis
  Eigen::SelfAdjointEigenSolver<RMatrix<double>> es(p.real_hamiltonian(0.015));
  const CVector<double> psi = on.u_on * p.bare_state({1, 1});
  CHECK((es.eigenvectors().cast<Complex<double>>().adjoint() * psi).squaredNorm() == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("time-reversed off-ramp reproduces the on-ramp phase") {
  const auto& p = transmon_pair();
  const PulseSchedule s{15, 0, 0.013};
  const auto on = switch_on(p, s.tau_s, s.t0);
  PropagationOptions opt;
  opt.probe = on.dressed.eigenvectors;
  const auto off = propagate(
      RealHamiltonianFn([&](double t) { return p.real_hamiltonian(transmission_profile(t, s, RampPhase::off)); }),
      0.0, s.tau_s, opt);
  // phi_m^off = -arg <m|U_off|m~>
  std::array<double, 4> phi{};
  for (int m = 0; m < 4; ++m)
    phi[m] = -std::arg(p.bare().state(kComputational[m]).dot(off.u * on.dressed.state(kComputational[m])));
  const double d_off = wrap_phase(phi[3] + phi[0] - phi[2] - phi[1]);
  CHECK(std::abs(wrap_phase(d_off - on.phases.delta_phi_cz)) < 1e-3);
  CHECK((off.u - on.u_on.transpose()).colwise().norm().maxCoeff() < 1e-4);
}

TEST_CASE("degenerate gate without coupling") {
  const auto r = compose_gate(PulseSchedule{5, 0, 0.0}, transmon_pair());
  CHECK(r.fidelity == doctest::Approx(0.4).epsilon(1e-10));
  CHECK(r.unitarity_defect < 1e-8);
}

TEST_CASE("plateau gate assembly") {
  const auto& p = transmon_pair();
  const auto on = switch_on(p, 15, 0.014);
  const PulseSchedule s = plateau_schedule(on);
  CHECK(s.tau_w >= 0);
  const auto r = compose_gate(s, p, on);
  CHECK(r.gate_time == 2 * s.tau_s + s.tau_w);
  CHECK(r.unitarity_defect < 1e-8);
  CHECK(r.error >= 0);
  CHECK(r.error < 1e-3);
  // conditional phase of the corrected block is pi
  const Eigen::Matrix4cd zw = z_corrections(r.w) * r.w;
  CHECK(std::abs(wrap_phase(std::arg(zw(3, 3)) - std::arg(zw(0, 0)) - kPi)) < 1e-3);
  // bit-identical rerun
  const auto again = compose_gate(s, p, switch_on(p, 15, 0.014));
  CHECK(again.w == r.w);
  CHECK_THROWS_AS(compose_gate(PulseSchedule{14, 0, 0.014}, p, on), Error);
}

TEST_CASE("slow switching follows the adiabatic phase integral") {
  const auto& p = transmon_pair();
  for (double t0 : {0.01, 0.015}) {
    const auto on = switch_on(p, 30, t0);
    const double adiabatic = adiabatic_switching_phase(p, 30, t0);
    CHECK(std::abs(on.phases.delta_phi_cz - adiabatic) < 0.05 * std::abs(adiabatic));
  }
}
