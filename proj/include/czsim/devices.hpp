#pragma once

#include <optional>
#include <string>
#include <vector>

#include "czsim/hilbert.hpp"
#include "czsim/hjunction.hpp"

namespace czsim {

enum class QubitKind { transmon, gatemon, hpair };

/// Quadratic and quartic phase coefficients of an H-pair qubit, in units of the gap.
struct QuarticCoefficients {
  double k2 = 0;
  double k4 = 0;

  friend bool operator==(const QuarticCoefficients&, const QuarticCoefficients&) = default;
};

struct QubitSpec {
  QubitKind kind = QubitKind::transmon;
  double charging = 0.240;   // E_C, GHz
  double josephson = 20.55;  // E_J, GHz (transmon)
  double transmission = 1;   // T_alpha (gatemon)
  double gap = 82.2;         // Delta, GHz
  std::optional<QuarticCoefficients> quartic;  // h-pair

  static QubitSpec transmon(double charging, double josephson, double gap = 82.2);
  static QubitSpec gatemon(double charging, double transmission, double gap = 82.2);
  static QubitSpec hpair(double charging, QuarticCoefficients k, double gap = 82.2);

  /// Coefficient of theta^2 in the Josephson potential, GHz.
  double quadratic_coefficient() const;
  /// Coefficient of theta^4, GHz.
  double quartic_coefficient() const;
  /// E_J_quad, the energy pairing with theta^2 / 2.
  double josephson_quad() const { return 2 * quadratic_coefficient(); }

  friend bool operator==(const QubitSpec&, const QubitSpec&) = default;
};

/// Throws on invalid parameters; returns soft warnings (transmon-regime guard).
std::vector<std::string> validate(const QubitSpec& spec);

OscillatorBasis natural_basis(const QubitSpec& spec, int levels);

OperatorMatrix transmon_hamiltonian(const QubitSpec& spec, const OscillatorBasis& basis);
OperatorMatrix gatemon_hamiltonian(const QubitSpec& spec, const OscillatorBasis& basis);
OperatorMatrix hpair_qubit_hamiltonian(const QubitSpec& spec, const OscillatorBasis& basis);
OperatorMatrix qubit_hamiltonian(const QubitSpec& spec, const OscillatorBasis& basis);

struct QubitLevels {
  Eigen::VectorXd energies;  // relative to the ground state
  CMatrix<double> eigenvectors;
  double omega10 = 0;
  double anharmonicity = 0;  // E2 - 2 E1
};

QubitLevels qubit_levels(const OperatorMatrix& h);
QubitLevels qubit_levels(const QubitSpec& spec, int levels = 10);

/// Coupler interaction (T_c Delta / 8) [(theta1 - theta2)^2 - (theta1 - theta2)^4 / 12].
/// theta*_powers hold theta^0 .. theta^4 of each qubit, embedded in the same product basis.
OperatorMatrix abs_interaction(double transmission, double gap,
                               const std::vector<OperatorMatrix>& theta1_powers,
                               const std::vector<OperatorMatrix>& theta2_powers);

struct StateLabel {
  int n1 = 0;
  int n2 = 0;
  friend auto operator<=>(const StateLabel&, const StateLabel&) = default;
};

std::string to_string(StateLabel s);

/// Tracked labels: all (n1, n2) with n1 + n2 <= max_excitation, ordered by excitation then n1.
std::vector<StateLabel> tracked_labels(int max_excitation = 3);

inline const std::array<StateLabel, 4> kComputational{{{0, 0}, {0, 1}, {1, 0}, {1, 1}}};

struct SpectrumTable {
  std::vector<StateLabel> labels;
  Eigen::VectorXd energies;       // relative to (0,0)
  CMatrix<double> eigenvectors;   // column k belongs to labels[k]
  double ground_offset = 0;       // absolute energy of (0,0)

  Index index_of(StateLabel s) const;
  bool contains(StateLabel s) const;
  double energy(StateLabel s) const { return energies(index_of(s)); }
  double absolute_energy(StateLabel s) const { return ground_offset + energy(s); }
  auto state(StateLabel s) const { return eigenvectors.col(index_of(s)); }
};

/// Labels eigenpairs of h by greedy maximal squared overlap (>= 0.5) with the reference vectors.
SpectrumTable dressed_spectrum(const OperatorMatrix& h, const SpectrumTable& reference);

enum class DeviceKind { transmon_pair, gatemon_pair, h_pair };

std::string to_string(DeviceKind k);
DeviceKind device_kind_from_string(const std::string& s);

struct DeviceConfig {
  DeviceKind kind = DeviceKind::transmon_pair;
  QubitSpec qubit1;
  QubitSpec qubit2;
  double coupler_gap = 82.2;  // Delta of the coupler junction (transmon/gatemon pairs)
  std::optional<ScatteringModel> scattering;  // h-pair
  int levels = 10;

  friend bool operator==(const DeviceConfig&, const DeviceConfig&) = default;
};

/// Default parameter set: E_J = 20.55 GHz, E_C = 0.240 / 0.255 GHz, Delta = 82.2 GHz,
/// H-pair K20 = K02 = 0.123 via calibrated splitters.
DeviceConfig default_device(DeviceKind kind);

/// Two coupled qubits: H(T_c) = H1 + H2 + V(T_c) on the N x N product basis.
class CoupledPair {
 public:
  explicit CoupledPair(DeviceConfig config);

  const DeviceConfig& config() const { return config_; }
  Index dim() const { return static_cast<Index>(h0_.rows()); }
  const BasisTag& basis() const { return tag_; }

  /// Real symmetric matrices; the full Hamiltonian is real in the oscillator basis.
  RMatrix<double> real_hamiltonian(double transmission) const;
  RMatrix<double> real_interaction(double transmission) const;
  OperatorMatrix hamiltonian(double transmission) const;
  OperatorMatrix interaction(double transmission) const;

  /// Factorized T_c = 0 eigenstates, tracked label set.
  const SpectrumTable& bare() const { return bare_; }
  const QubitLevels& qubit1_levels() const { return levels1_; }
  const QubitLevels& qubit2_levels() const { return levels2_; }
  /// Bare product state for any label (not restricted to the tracked set).
  CVector<double> bare_state(StateLabel s) const;

  /// Dressed spectrum at T_c, labels continued adiabatically from T_c = 0.
  SpectrumTable dressed(double transmission) const;
  SpectrumTable dressed(double transmission, const SpectrumTable& from) const;

  /// Coupler expansion coefficients at T_c (h-pair only).
  CouplingExpansion coupling(double transmission) const;

 private:
  DeviceConfig config_;
  BasisTag tag_;
  RMatrix<double> h0_;
  // transmon/gatemon: V(T_c) = T_c * v_unit_
  RMatrix<double> v_unit_;
  // h-pair: theta1^i theta2^j for i + j <= 4
  std::array<std::array<RMatrix<double>, 5>, 5> mono_;
  QuarticExpansion reference_;
  QubitLevels levels1_, levels2_;
  SpectrumTable bare_;
  double track_step_ = 0.002;
};

/// H1 + H2 + V for two transmon or gatemon specs sharing the first spec's gap as coupler gap.
OperatorMatrix two_qubit_hamiltonian(const QubitSpec& spec1, const QubitSpec& spec2,
                                     double transmission, int levels = 10);
OperatorMatrix two_qubit_hamiltonian(const DeviceConfig& config, double transmission);

}  // namespace czsim
