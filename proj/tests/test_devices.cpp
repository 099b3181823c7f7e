#include <cmath>

#include "doctest.h"

#include "czsim/devices.hpp"
#include "czsim/metrics.hpp"

using namespace czsim;

namespace {

const QubitSpec kTransmon1 = QubitSpec::transmon(0.240, 20.55);
const QubitSpec kTransmon2 = QubitSpec::transmon(0.255, 20.55);
const QubitSpec kGatemon1 = QubitSpec::gatemon(0.240, 1.0, 82.2);
const QubitSpec kGatemon2 = QubitSpec::gatemon(0.255, 1.0, 82.2);

const CoupledPair& transmon_pair() {
  static const CoupledPair p(default_device(DeviceKind::transmon_pair));
  return p;
}

const CoupledPair& gatemon_pair() {
  static const CoupledPair p(default_device(DeviceKind::gatemon_pair));
  return p;
}

}  // namespace

TEST_CASE("transmon levels") {
  const auto l1 = qubit_levels(kTransmon1);
  CHECK(std::abs(l1.omega10 - 6.02) / 6.02 < 0.01);
  CHECK(std::abs(l1.anharmonicity + 0.294) / 0.294 < 0.02);
  // second-order quartic corrections push beta beyond -E_C
  CHECK(l1.anharmonicity < -0.240);
  const auto l2 = qubit_levels(kTransmon2);
  CHECK(std::abs(l2.omega10 - 6.20) / 6.20 < 0.01);
  CHECK(std::abs(l2.anharmonicity + 0.315) / 0.315 < 0.02);
}

TEST_CASE("harmonic limit has zero anharmonicity") {
  const auto b = natural_basis(kTransmon1, 10);
  const CMatrix<double> h = 4 * 0.240 * charge_squared(b).entries + 20.55 / 2 * phase_power(b, 2).entries;
  const auto l = qubit_levels(OperatorMatrix{h, basis_tag(b)});
  CHECK(std::abs(l.anharmonicity) < 1e-10);
  CHECK(l.omega10 == doctest::Approx(std::sqrt(8 * 20.55 * 0.240)).epsilon(1e-12));
}

TEST_CASE("gatemon levels") {
  const auto l1 = qubit_levels(kGatemon1);
  CHECK(std::abs(l1.omega10 - 6.22) / 6.22 < 0.02);
  CHECK(std::abs(l1.anharmonicity + 0.063) / 0.063 < 0.02);
  const auto l2 = qubit_levels(kGatemon2);
  CHECK(std::abs(l2.omega10 - 6.41) / 6.41 < 0.02);
  CHECK(std::abs(l2.anharmonicity + 0.067) / 0.067 < 0.02);
  CHECK(kGatemon1.josephson == doctest::Approx(82.2 / 4));
}

TEST_CASE("transmon anharmonicity is more negative than gatemon") {
  CHECK(qubit_levels(kTransmon1).anharmonicity < qubit_levels(kGatemon1).anharmonicity);
  CHECK(qubit_levels(kTransmon2).anharmonicity < qubit_levels(kGatemon2).anharmonicity);
}

TEST_CASE("gatemon approaches the transmon as T -> 0 at fixed E_J") {
  const double ej = 20.55;
  const auto b = natural_basis(kTransmon1, 10);
  const auto ht = transmon_hamiltonian(kTransmon1, b);
  const auto diff = [&](double t) {
    const auto g = QubitSpec::gatemon(0.240, t, 4 * ej / t);
    return (gatemon_hamiltonian(g, b).entries - ht.entries).norm();
  };
  const double d2 = diff(1e-2), d3 = diff(1e-3), d4 = diff(1e-4);
  CHECK(d2 / d3 == doctest::Approx(10).epsilon(1e-9));
  CHECK(d3 / d4 == doctest::Approx(10).epsilon(1e-9));
  // leading term: E_J / 24 * (3T/4) * ||theta^4||
  CHECK(d4 == doctest::Approx(ej / 24 * 0.75e-4 * phase_power(b, 4).entries.norm()).epsilon(1e-9));
}

TEST_CASE("qubit parameter validation") {
  CHECK_THROWS_AS(validate(QubitSpec::gatemon(0.24, 1.2)), Error);
  CHECK_THROWS_AS(validate(QubitSpec::gatemon(0.24, 0.0)), Error);
  CHECK_THROWS_AS(validate(QubitSpec::transmon(-0.1, 20)), Error);
  CHECK(validate(kTransmon1).empty());
  CHECK(validate(QubitSpec::transmon(1.0, 10.0)).size() == 1);
  CHECK_THROWS_AS(transmon_hamiltonian(kGatemon1, natural_basis(kGatemon1, 10)), Error);
}

TEST_CASE("all Hamiltonians are Hermitian") {
  CHECK(hermiticity_defect(transmon_hamiltonian(kTransmon1, natural_basis(kTransmon1, 10)).entries) <= 1e-12);
  CHECK(hermiticity_defect(gatemon_hamiltonian(kGatemon2, natural_basis(kGatemon2, 10)).entries) <= 1e-12);
  for (double tc : {0.0, 0.007, 0.02}) {
    CHECK(hermiticity_defect(transmon_pair().hamiltonian(tc).entries) <= 1e-12);
    CHECK(hermiticity_defect(gatemon_pair().hamiltonian(tc).entries) <= 1e-12);
  }
}

TEST_CASE("coupler interaction") {
  const int n = 10;
  const auto b1 = natural_basis(kTransmon1, n), b2 = natural_basis(kTransmon2, n);
  std::vector<OperatorMatrix> p1, p2;
  for (int k = 0; k <= 4; ++k) {
    p1.push_back(embed_pair(phase_power(b1, k), Slot::first, n, basis_tag(b2)));
    p2.push_back(embed_pair(phase_power(b2, k), Slot::second, n, basis_tag(b1)));
  }
  SUBCASE("closed coupler") {
    CHECK(abs_interaction(0, 82.2, p1, p2).entries.norm() == 0.0);
  }
  SUBCASE("quadratic coefficient") {
    const double c = 0.015 * 82.2 / 8;
    CHECK(c == doctest::Approx(0.154).epsilon(1e-3));
    const CMatrix<double> d = p1[1].entries - p2[1].entries;
    const auto v = abs_interaction(0.015, 82.2, p1, p2);
    // compare on the low block, where products of truncated theta are exact
    const CMatrix<double> naive = c * (d * d - d * d * d * d / 12.0);
    const auto low = [&](const CMatrix<double>& m) {
      Eigen::MatrixXcd out(4, 4);
      const int idx[4] = {0, 1, n, n + 1};
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) out(i, j) = m(idx[i], idx[j]);
      return out;
    };
    CHECK((low(v.entries) - low(naive)).norm() < 1e-12);
  }
  SUBCASE("exchange symmetry and hermiticity") {
    const auto v12 = abs_interaction(0.01, 82.2, p1, p2);
    const auto v21 = abs_interaction(0.01, 82.2, p2, p1);
    CHECK((v12.entries - v21.entries).norm() <= 1e-13 * v12.entries.norm());
    CHECK(hermiticity_defect(v12.entries) <= 1e-12);
  }
  SUBCASE("basis mismatch") {
    auto bad = p2;
    bad[3].basis.id = "other";
    try {
      abs_interaction(0.01, 82.2, p1, bad);
      FAIL("expected a basis mismatch");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::basis_mismatch);
    }
  }
}

TEST_CASE("uncoupled pair spectrum") {
  const auto& pair = transmon_pair();
  const auto& bare = pair.bare();
  const double e11 = bare.energy({1, 1});
  CHECK(std::abs(e11 - 12.22) / 12.22 < 0.01);
  CHECK(e11 == doctest::Approx(pair.qubit1_levels().omega10 + pair.qubit2_levels().omega10).epsilon(1e-12));
  // |11> lies above both |20> and |02>
  CHECK(e11 > bare.energy({2, 0}));
  CHECK(e11 > bare.energy({0, 2}));

  const auto h = pair.hamiltonian(0).entries;
  const auto h1 = embed_pair(transmon_hamiltonian(kTransmon1, natural_basis(kTransmon1, 10)), Slot::first, 10).entries;
  CHECK((h * h1 - h1 * h).norm() < 1e-10);

  // full diagonalization reproduces every pairwise sum
  Eigen::SelfAdjointEigenSolver<CMatrix<double>> es(h);
  const auto d = dressed_spectrum(pair.hamiltonian(0), bare);
  for (const auto s : d.labels) CHECK(d.energy(s) == doctest::Approx(bare.energy(s)).epsilon(1e-11));
  CHECK(d.labels == bare.labels);
}

TEST_CASE("free function form matches the pair") {
  const auto h = two_qubit_hamiltonian(kTransmon1, kTransmon2, 0.01);
  CHECK((h.entries - transmon_pair().hamiltonian(0.01).entries).norm() < 1e-12);
}

TEST_CASE("labels are stable between nearby grid points") {
  const auto& pair = transmon_pair();
  const auto a = pair.dressed(0.012);
  const auto b = pair.dressed(0.0121, a);
  const auto c = pair.dressed(0.0121);
  CHECK(b.labels == c.labels);
  for (const auto s : a.labels) {
    CHECK(std::abs(a.state(s).dot(b.state(s))) > 0.99);
    CHECK(std::abs(b.state(s).dot(c.state(s))) == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("label permanence over the default sweep") {
  for (const auto* pair : {&transmon_pair(), &gatemon_pair()}) {
    SpectrumTable cur = pair->bare();
    for (int k = 1; k <= 20; ++k) CHECK_NOTHROW(cur = pair->dressed(k * 1e-3, cur));
  }
}

TEST_CASE("eigenvector gauge") {
  const auto d = transmon_pair().dressed(0.015);
  for (Index c = 0; c < d.eigenvectors.cols(); ++c) {
    Index k;
    d.eigenvectors.col(c).cwiseAbs().maxCoeff(&k);
    CHECK(d.eigenvectors(k, c).real() > 0);
    CHECK(d.eigenvectors(k, c).imag() == 0.0);
  }
  CHECK(d.energy({0, 0}) == 0.0);
}

TEST_CASE("first-order level shifts") {
  for (const auto* pair : {&transmon_pair(), &gatemon_pair()}) {
    for (double tc : {5e-4, 1e-3, 2e-3}) {
      const auto d = pair->dressed(tc);
      const auto v = pair->interaction(tc).entries;
      for (const auto s : pair->bare().labels) {
        const auto m = pair->bare().state(s);
        const double first = m.dot(v * m).real();
        const double shift = d.absolute_energy(s) - pair->bare().absolute_energy(s);
        CHECK(std::abs(shift - first) <= 0.1 * std::abs(first));
      }
    }
  }
}

TEST_CASE("conditional rate grows with the coupler transmission") {
  // Delta_CZ of the transmon pair changes sign near T_c = 0.005: the first-order quartic cross
  // term and the second-order exchange shift have opposite signs. Past that, |Delta_CZ| grows.
  const auto& pair = transmon_pair();
  double prev = 0;
  for (int k = 6; k <= 20; ++k) {
    const double dcz = delta_cz(pair.dressed(k * 1e-3));
    CHECK(dcz > prev);
    prev = dcz;
  }
  CHECK(delta_cz(pair.dressed(0.0025)) < 0);
  CHECK(std::abs(delta_cz(pair.dressed(0.015))) > 0.010);
  // gatemon: negative and monotone over the whole range
  prev = 0;
  for (int k = 1; k <= 20; ++k) {
    const double dcz = delta_cz(gatemon_pair().dressed(k * 1e-3));
    CHECK(dcz < prev);
    prev = dcz;
  }
}

TEST_CASE("truncation convergence N = 10 versus N = 14") {
  // The quartic-truncated transmon potential is unbounded below, so its anharmonicity drifts
  // slowly with N (about 1e-3 relative from 10 to 14 levels) and diverges beyond ~20 levels.
  // Transition frequencies converge to 1e-6; the weakly anharmonic gatemon converges to ~1.5e-6.
  const auto rel = [](double a, double b) { return std::abs(a - b) / std::abs(b); };
  struct Bound {
    DeviceKind kind;
    double beta, dcz;
  };
  for (const auto& [kind, beta_tol, dcz_tol] :
       {Bound{DeviceKind::transmon_pair, 2e-3, 5e-3}, Bound{DeviceKind::gatemon_pair, 2e-6, 2e-6}}) {
    auto c10 = default_device(kind);
    auto c14 = c10;
    c14.levels = 14;
    const CoupledPair p10(c10), p14(c14);
    CHECK(rel(p10.qubit1_levels().omega10, p14.qubit1_levels().omega10) < 1e-6);
    CHECK(rel(p10.qubit2_levels().omega10, p14.qubit2_levels().omega10) < 1e-6);
    CHECK(rel(p10.qubit1_levels().anharmonicity, p14.qubit1_levels().anharmonicity) < beta_tol);
    CHECK(rel(p10.qubit2_levels().anharmonicity, p14.qubit2_levels().anharmonicity) < beta_tol);
    CHECK(rel(delta_cz(p10.dressed(0.015)), delta_cz(p14.dressed(0.015))) < dcz_tol);
  }
}

TEST_CASE("h-pair qubit levels") {
  const CoupledPair pair(default_device(DeviceKind::h_pair));
  const auto& q1 = pair.qubit1_levels();
  const auto& q2 = pair.qubit2_levels();
  CHECK(std::abs(q1.omega10 - 6.17) / 6.17 < 0.02);
  CHECK(std::abs(q2.omega10 - 6.36) / 6.36 < 0.02);
  CHECK(std::abs(q1.anharmonicity + 0.066) / 0.066 < 0.02);
  CHECK(std::abs(q2.anharmonicity + 0.070) / 0.070 < 0.02);
  CHECK(pair.config().qubit1.josephson == doctest::Approx(2 * 82.2 * 0.123).epsilon(1e-9));
  CHECK(pair.real_interaction(0).norm() == 0.0);
  CHECK(hermiticity_defect(pair.hamiltonian(0.6).entries) <= 1e-12);
}
