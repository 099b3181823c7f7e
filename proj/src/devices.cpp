#include "czsim/devices.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

namespace czsim {

QubitSpec QubitSpec::transmon(double charging, double josephson, double gap) {
  QubitSpec s;
  s.kind = QubitKind::transmon;
  s.charging = charging;
  s.josephson = josephson;
  s.gap = gap;
  return s;
}

QubitSpec QubitSpec::gatemon(double charging, double transmission, double gap) {
  QubitSpec s;
  s.kind = QubitKind::gatemon;
  s.charging = charging;
  s.transmission = transmission;
  s.gap = gap;
  s.josephson = gap * transmission / 4;
  return s;
}

QubitSpec QubitSpec::hpair(double charging, QuarticCoefficients k, double gap) {
  QubitSpec s;
  s.kind = QubitKind::hpair;
  s.charging = charging;
  s.gap = gap;
  s.quartic = k;
  s.josephson = 2 * gap * k.k2;
  return s;
}

double QubitSpec::quadratic_coefficient() const {
  switch (kind) {
    case QubitKind::transmon: return josephson / 2;
    case QubitKind::gatemon: return gap * transmission / 8;
    case QubitKind::hpair:
      require(quartic.has_value(), ErrorKind::parameter, "h-pair qubit without K coefficients");
      return gap * quartic->k2;
  }
  return 0;
}

double QubitSpec::quartic_coefficient() const {
  switch (kind) {
    case QubitKind::transmon: return -josephson / 24;
    case QubitKind::gatemon: return -gap * transmission / 96 * (1 - 0.75 * transmission);
    case QubitKind::hpair:
      require(quartic.has_value(), ErrorKind::parameter, "h-pair qubit without K coefficients");
      return gap * quartic->k4;
  }
  return 0;
}

std::vector<std::string> validate(const QubitSpec& spec) {
  require(spec.charging > 0, ErrorKind::parameter, "E_C must be positive");
  require(spec.gap > 0, ErrorKind::parameter, "gap must be positive");
  if (spec.kind == QubitKind::gatemon)
    require(spec.transmission > 0 && spec.transmission <= 1, ErrorKind::parameter,
            "gatemon transmission outside (0,1]");
  if (spec.kind == QubitKind::transmon)
    require(spec.josephson > 0, ErrorKind::parameter, "E_J must be positive");
  require(spec.quadratic_coefficient() > 0, ErrorKind::parameter,
          "quadratic Josephson coefficient must be positive");
  std::vector<std::string> warnings;
  if (spec.josephson_quad() / spec.charging < 20)
    warnings.push_back("E_J/E_C below 20: outside the transmon regime");
  return warnings;
}

OscillatorBasis natural_basis(const QubitSpec& spec, int levels) {
  validate(spec);
  return make_oscillator_basis(spec.charging, spec.josephson_quad(), levels);
}

namespace {

OperatorMatrix quartic_hamiltonian(const QubitSpec& spec, const OscillatorBasis& basis) {
  validate(spec);
  const auto n2 = charge_squared(basis);
  const auto t2 = phase_power(basis, 2);
  const auto t4 = phase_power(basis, 4);
  return {4 * spec.charging * n2.entries + spec.quadratic_coefficient() * t2.entries +
              spec.quartic_coefficient() * t4.entries,
          basis_tag(basis)};
}

}  // namespace

OperatorMatrix transmon_hamiltonian(const QubitSpec& spec, const OscillatorBasis& basis) {
  require(spec.kind == QubitKind::transmon, ErrorKind::parameter, "spec is not a transmon");
  return quartic_hamiltonian(spec, basis);
}

OperatorMatrix gatemon_hamiltonian(const QubitSpec& spec, const OscillatorBasis& basis) {
  require(spec.kind == QubitKind::gatemon, ErrorKind::parameter, "spec is not a gatemon");
  return quartic_hamiltonian(spec, basis);
}

OperatorMatrix hpair_qubit_hamiltonian(const QubitSpec& spec, const OscillatorBasis& basis) {
  require(spec.kind == QubitKind::hpair, ErrorKind::parameter, "spec is not an h-pair qubit");
  return quartic_hamiltonian(spec, basis);
}

OperatorMatrix qubit_hamiltonian(const QubitSpec& spec, const OscillatorBasis& basis) {
  return quartic_hamiltonian(spec, basis);
}

namespace {

void fix_gauge(CMatrix<double>& vecs) {
  for (Index c = 0; c < vecs.cols(); ++c) {
    Index k;
    vecs.col(c).cwiseAbs().maxCoeff(&k);
    const auto z = vecs(k, c);
    vecs.col(c) *= std::conj(z) / std::abs(z);
  }
}

}  // namespace

QubitLevels qubit_levels(const OperatorMatrix& h) {
  Eigen::SelfAdjointEigenSolver<CMatrix<double>> es(h.entries);
  QubitLevels out;
  out.energies = es.eigenvalues().array() - es.eigenvalues()(0);
  out.eigenvectors = es.eigenvectors();
  fix_gauge(out.eigenvectors);
  out.omega10 = out.energies(1);
  out.anharmonicity = out.energies(2) - 2 * out.energies(1);
  return out;
}

QubitLevels qubit_levels(const QubitSpec& spec, int levels) {
  return qubit_levels(qubit_hamiltonian(spec, natural_basis(spec, levels)));
}

OperatorMatrix abs_interaction(double transmission, double gap,
                               const std::vector<OperatorMatrix>& theta1_powers,
                               const std::vector<OperatorMatrix>& theta2_powers) {
  require(transmission >= 0 && transmission <= 1, ErrorKind::parameter,
          "coupler transmission outside [0,1]");
  require(theta1_powers.size() >= 5 && theta2_powers.size() >= 5, ErrorKind::parameter,
          "abs_interaction needs theta powers 0..4");
  const auto& tag = theta1_powers[0].basis;
  for (const auto* v : {&theta1_powers, &theta2_powers})
    for (const auto& op : *v)
      require(op.basis == tag && op.dim() == theta1_powers[0].dim(), ErrorKind::basis_mismatch,
              "abs_interaction: theta operators live in different bases");

  // (t1 - t2)^k = sum_m C(k,m) t1^m (-t2)^(k-m)
  const auto diff_power = [&](int k) {
    const Index dim = theta1_powers[0].dim();
    CMatrix<double> acc = CMatrix<double>::Zero(dim, dim);
    double binom = 1;
    for (int m = 0; m <= k; ++m) {
      const double sign = ((k - m) % 2 == 0) ? 1.0 : -1.0;
      acc += binom * sign * theta1_powers[m].entries * theta2_powers[k - m].entries;
      binom = binom * (k - m) / (m + 1);
    }
    return acc;
  };
  const double c = transmission * gap / 8;
  return {c * (diff_power(2) - diff_power(4) / 12.0), tag};
}

std::string to_string(StateLabel s) {
  return std::to_string(s.n1) + std::to_string(s.n2);
}

std::vector<StateLabel> tracked_labels(int max_excitation) {
  std::vector<StateLabel> out;
  for (int e = 0; e <= max_excitation; ++e)
    for (int n1 = 0; n1 <= e; ++n1) out.push_back({n1, e - n1});
  return out;
}

Index SpectrumTable::index_of(StateLabel s) const {
  const auto it = std::find(labels.begin(), labels.end(), s);
  require(it != labels.end(), ErrorKind::labeling, "state " + to_string(s) + " not in spectrum table");
  return static_cast<Index>(it - labels.begin());
}

bool SpectrumTable::contains(StateLabel s) const {
  return std::find(labels.begin(), labels.end(), s) != labels.end();
}

SpectrumTable dressed_spectrum(const OperatorMatrix& h, const SpectrumTable& reference) {
  require(reference.eigenvectors.rows() == h.dim(), ErrorKind::basis_mismatch,
          "dressed_spectrum: reference lives in a different space");
  Eigen::SelfAdjointEigenSolver<CMatrix<double>> es(h.entries);
  const auto& vecs = es.eigenvectors();
  const Eigen::MatrixXd overlap = (reference.eigenvectors.adjoint() * vecs).cwiseAbs2();

  std::vector<std::tuple<double, Index, Index>> cand;
  for (Index r = 0; r < overlap.rows(); ++r)
    for (Index c = 0; c < overlap.cols(); ++c)
      if (overlap(r, c) >= 0.5) cand.emplace_back(overlap(r, c), r, c);
  std::sort(cand.begin(), cand.end(), [](const auto& x, const auto& y) {
    if (std::get<0>(x) != std::get<0>(y)) return std::get<0>(x) > std::get<0>(y);
    return std::tie(std::get<1>(x), std::get<2>(x)) < std::tie(std::get<1>(y), std::get<2>(y));
  });
  const Index nref = overlap.rows();
  std::vector<Index> match(nref, -1);
  std::vector<bool> used(vecs.cols(), false);
  for (const auto& [ov, r, c] : cand) {
    if (match[r] >= 0 || used[c]) continue;
    match[r] = c;
    used[c] = true;
  }
  for (Index r = 0; r < nref; ++r)
    require(match[r] >= 0, ErrorKind::labeling,
            "dressed_spectrum: ambiguous overlap for state " + to_string(reference.labels[r]) +
                ", refine the T_c grid");

  SpectrumTable out;
  out.labels = reference.labels;
  out.energies.resize(nref);
  out.eigenvectors.resize(h.dim(), nref);
  const StateLabel ground{0, 0};
  double e0 = 0;
  for (Index r = 0; r < nref; ++r) {
    out.eigenvectors.col(r) = vecs.col(match[r]);
    out.energies(r) = es.eigenvalues()(match[r]);
    if (reference.labels[r] == ground) e0 = out.energies(r);
  }
  fix_gauge(out.eigenvectors);
  out.energies.array() -= e0;
  out.ground_offset = e0;
  return out;
}

std::string to_string(DeviceKind k) {
  switch (k) {
    case DeviceKind::transmon_pair: return "transmon-pair";
    case DeviceKind::gatemon_pair: return "gatemon-pair";
    case DeviceKind::h_pair: return "h-pair";
  }
  return "?";
}

DeviceKind device_kind_from_string(const std::string& s) {
  if (s == "transmon-pair" || s == "transmon") return DeviceKind::transmon_pair;
  if (s == "gatemon-pair" || s == "gatemon") return DeviceKind::gatemon_pair;
  if (s == "h-pair" || s == "hpair") return DeviceKind::h_pair;
  throw Error(ErrorKind::config, "unknown device kind '" + s + "'");
}

DeviceConfig default_device(DeviceKind kind) {
  constexpr double kEJ = 20.55, kEC1 = 0.240, kEC2 = 0.255, kGap = 82.2, kK20 = 0.123;
  DeviceConfig c;
  c.kind = kind;
  c.coupler_gap = kGap;
  switch (kind) {
    case DeviceKind::transmon_pair:
      c.qubit1 = QubitSpec::transmon(kEC1, kEJ, kGap);
      c.qubit2 = QubitSpec::transmon(kEC2, kEJ, kGap);
      break;
    case DeviceKind::gatemon_pair:
      c.qubit1 = QubitSpec::gatemon(kEC1, 1.0, kGap);
      c.qubit2 = QubitSpec::gatemon(kEC2, 1.0, kGap);
      break;
    case DeviceKind::h_pair: {
      c.scattering = calibrate_beamsplitters(kK20, kK20, WireParams{});
      const auto ref = josephson_expansion(compose_h_smatrix(c.scattering->with_transmission(0)));
      c.qubit1 = QubitSpec::hpair(kEC1, {ref(2, 0), ref(4, 0)}, kGap);
      c.qubit2 = QubitSpec::hpair(kEC2, {ref(0, 2), ref(0, 4)}, kGap);
      break;
    }
  }
  return c;
}

namespace {

RMatrix<double> kron_real(const RMatrix<double>& a, const RMatrix<double>& b) {
  RMatrix<double> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

}  // namespace

CoupledPair::CoupledPair(DeviceConfig config) : config_(std::move(config)) {
  const int n = config_.levels;
  require(n >= 5, ErrorKind::truncation, "levels per qubit must be at least 5");
  require(static_cast<Index>(n) * n <= kMaxProductDim, ErrorKind::dimension,
          "product dimension exceeds 10000");

  if (config_.kind == DeviceKind::h_pair) {
    if (!config_.scattering) config_.scattering = calibrate_beamsplitters(0.123, 0.123, WireParams{});
    reference_ = josephson_expansion(compose_h_smatrix(config_.scattering->with_transmission(0)));
    config_.qubit1 =
        QubitSpec::hpair(config_.qubit1.charging, {reference_(2, 0), reference_(4, 0)}, config_.qubit1.gap);
    config_.qubit2 =
        QubitSpec::hpair(config_.qubit2.charging, {reference_(0, 2), reference_(0, 4)}, config_.qubit2.gap);
    track_step_ = 0.05;
  } else {
    const QubitKind want =
        config_.kind == DeviceKind::transmon_pair ? QubitKind::transmon : QubitKind::gatemon;
    require(config_.qubit1.kind == want && config_.qubit2.kind == want, ErrorKind::parameter,
            "qubit kinds do not match the device kind");
    require(config_.coupler_gap > 0, ErrorKind::parameter, "coupler gap must be positive");
  }

  const auto b1 = natural_basis(config_.qubit1, n);
  const auto b2 = natural_basis(config_.qubit2, n);
  const auto h1 = qubit_hamiltonian(config_.qubit1, b1);
  const auto h2 = qubit_hamiltonian(config_.qubit2, b2);
  levels1_ = qubit_levels(h1);
  levels2_ = qubit_levels(h2);
  tag_ = product_tag(basis_tag(b1), basis_tag(b2));

  const RMatrix<double> id = RMatrix<double>::Identity(n, n);
  h0_ = kron_real(h1.entries.real(), id) + kron_real(id, h2.entries.real());

  const auto p1 = phase_powers(b1, 4);
  const auto p2 = phase_powers(b2, 4);
  if (config_.kind == DeviceKind::h_pair) {
    for (int i = 0; i <= 4; ++i)
      for (int j = 0; i + j <= 4; ++j)
        mono_[i][j] = kron_real(p1[i].entries.real(), p2[j].entries.real());
  } else {
    std::vector<OperatorMatrix> e1, e2;
    for (int k = 0; k <= 4; ++k) {
      e1.push_back(embed_pair(p1[k], Slot::first, n, basis_tag(b2)));
      e2.push_back(embed_pair(p2[k], Slot::second, n, basis_tag(b1)));
    }
    v_unit_ = abs_interaction(1.0, config_.coupler_gap, e1, e2).entries.real();
  }

  // factorized labels at T_c = 0
  const auto labels = tracked_labels(3);
  bare_.labels = labels;
  bare_.energies.resize(static_cast<Index>(labels.size()));
  bare_.eigenvectors.resize(dim(), static_cast<Index>(labels.size()));
  for (std::size_t k = 0; k < labels.size(); ++k) {
    const auto s = labels[k];
    bare_.energies(static_cast<Index>(k)) = levels1_.energies(s.n1) + levels2_.energies(s.n2);
    bare_.eigenvectors.col(static_cast<Index>(k)) = bare_state(s);
  }
  Eigen::SelfAdjointEigenSolver<RMatrix<double>> es(h0_, Eigen::EigenvaluesOnly);
  bare_.ground_offset = es.eigenvalues()(0);
}

CVector<double> CoupledPair::bare_state(StateLabel s) const {
  const Index n = config_.levels;
  require(s.n1 >= 0 && s.n1 < n && s.n2 >= 0 && s.n2 < n, ErrorKind::labeling,
          "bare_state: label outside the truncated basis");
  CVector<double> v(n * n);
  const auto a = levels1_.eigenvectors.col(s.n1);
  const auto b = levels2_.eigenvectors.col(s.n2);
  for (Index i = 0; i < n; ++i) v.segment(i * n, n) = a(i) * b;
  return v;
}

CouplingExpansion CoupledPair::coupling(double transmission) const {
  require(config_.kind == DeviceKind::h_pair, ErrorKind::parameter, "coupling(): not an h-pair");
  return coupling_expansion(config_.scattering->with_transmission(transmission));
}

RMatrix<double> CoupledPair::real_interaction(double transmission) const {
  require(transmission >= 0 && transmission <= 1, ErrorKind::parameter,
          "coupler transmission outside [0,1]");
  if (config_.kind != DeviceKind::h_pair) return transmission * v_unit_;
  RMatrix<double> v = RMatrix<double>::Zero(dim(), dim());
  if (transmission == 0) return v;
  const auto full = josephson_expansion(compose_h_smatrix(config_.scattering->with_transmission(transmission)));
  const double gap = config_.coupler_gap;
  for (int i = 0; i <= 4; ++i)
    for (int j = 0; i + j <= 4; ++j) {
      if (i + j == 0) continue;
      const double dk = full(i, j) - reference_(i, j);
      if (dk != 0) v += (gap * dk) * mono_[i][j];
    }
  return v;
}

RMatrix<double> CoupledPair::real_hamiltonian(double transmission) const {
  return h0_ + real_interaction(transmission);
}

OperatorMatrix CoupledPair::hamiltonian(double transmission) const {
  return {real_hamiltonian(transmission).cast<Complex<double>>(), tag_};
}

OperatorMatrix CoupledPair::interaction(double transmission) const {
  return {real_interaction(transmission).cast<Complex<double>>(), tag_};
}

SpectrumTable CoupledPair::dressed(double transmission, const SpectrumTable& from) const {
  return dressed_spectrum(hamiltonian(transmission), from);
}

SpectrumTable CoupledPair::dressed(double transmission) const {
  require(transmission >= 0 && transmission <= 1, ErrorKind::parameter,
          "coupler transmission outside [0,1]");
  if (transmission == 0) return bare_;
  SpectrumTable cur = bare_;
  double t = 0;
  int steps = std::max(1, static_cast<int>(std::ceil(transmission / track_step_)));
  double dt = transmission / steps;
  int refinements = 0;
  while (t < transmission) {
    const double next = std::min(transmission, t + dt);
    try {
      cur = dressed_spectrum(hamiltonian(next), cur);
      t = next;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::labeling || ++refinements > 12) throw;
      dt /= 2;
    }
  }
  return cur;
}

OperatorMatrix two_qubit_hamiltonian(const DeviceConfig& config, double transmission) {
  return CoupledPair(config).hamiltonian(transmission);
}

OperatorMatrix two_qubit_hamiltonian(const QubitSpec& spec1, const QubitSpec& spec2,
                                     double transmission, int levels) {
  require(spec1.kind == spec2.kind, ErrorKind::parameter, "qubit kinds differ");
  DeviceConfig c;
  c.qubit1 = spec1;
  c.qubit2 = spec2;
  c.levels = levels;
  c.coupler_gap = spec1.gap;
  switch (spec1.kind) {
    case QubitKind::transmon: c.kind = DeviceKind::transmon_pair; break;
    case QubitKind::gatemon: c.kind = DeviceKind::gatemon_pair; break;
    case QubitKind::hpair:
      throw Error(ErrorKind::parameter, "h-pair Hamiltonians need a scattering model (use DeviceConfig)");
  }
  return two_qubit_hamiltonian(c, transmission);
}

}  // namespace czsim
