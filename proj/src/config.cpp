#include "czsim/config.hpp"

#include <fstream>

namespace czsim {

using nlohmann::json;

std::vector<double> SweepRange::values() const {
  std::vector<double> v;
  if (count <= 0) return v;
  if (count == 1) return {start};
  for (int k = 0; k < count; ++k) v.push_back(start + (stop - start) * k / (count - 1));
  return v;
}

std::string to_string(GateMode m) {
  return m == GateMode::plateau ? "plateau" : "zero-wait";
}

RunConfig default_run_config(DeviceKind kind) {
  RunConfig c;
  c.device = default_device(kind);
  c.schedule = {15.0, 0.0, kind == DeviceKind::h_pair ? 0.6 : 0.015, PulseShape::erf};
  c.tau_s_grid = {5, 30, 6};
  switch (kind) {
    case DeviceKind::transmon_pair:
      c.tc_grid = {0, 0.02, 21};
      c.t0_grid = {0.005, 0.03, 26};
      break;
    case DeviceKind::gatemon_pair:
      c.tc_grid = {0, 0.02, 21};
      c.t0_grid = {0.005, 0.03, 26};
      break;
    case DeviceKind::h_pair:
      c.tc_grid = {0, 0.8, 17};
      c.t0_grid = {0.5, 1.0, 11};
      break;
  }
  return c;
}

namespace {

std::string kind_name(QubitKind k) {
  switch (k) {
    case QubitKind::transmon: return "transmon";
    case QubitKind::gatemon: return "gatemon";
    case QubitKind::hpair: return "hpair";
  }
  return "?";
}

QubitKind qubit_kind_from(const std::string& s) {
  if (s == "transmon") return QubitKind::transmon;
  if (s == "gatemon") return QubitKind::gatemon;
  if (s == "hpair") return QubitKind::hpair;
  throw Error(ErrorKind::config, "unknown qubit kind '" + s + "'");
}

template <typename T>
void read(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

json qubit_json(const QubitSpec& q) {
  json j{{"kind", kind_name(q.kind)}, {"E_C", q.charging}, {"E_J", q.josephson},
         {"T", q.transmission}, {"Delta", q.gap}};
  if (q.quartic) j["K"] = {{"k2", q.quartic->k2}, {"k4", q.quartic->k4}};
  return j;
}

QubitSpec qubit_from(const json& j, QubitSpec q) {
  if (j.contains("kind")) q.kind = qubit_kind_from(j.at("kind").get<std::string>());
  read(j, "E_C", q.charging);
  read(j, "E_J", q.josephson);
  read(j, "T", q.transmission);
  read(j, "Delta", q.gap);
  if (j.contains("K")) q.quartic = QuarticCoefficients{j.at("K").at("k2"), j.at("K").at("k4")};
  if (q.kind == QubitKind::gatemon) q.josephson = q.gap * q.transmission / 4;
  return q;
}

json splitter_json(const BeamSplitterParams& p) {
  return {{"a", p.a}, {"b", p.b}, {"phi11", p.phi11}, {"phi22", p.phi22}, {"phi12", p.phi12},
          {"phi13", p.phi13}};
}

BeamSplitterParams splitter_from(const json& j) {
  BeamSplitterParams p;
  read(j, "a", p.a);
  read(j, "b", p.b);
  read(j, "phi11", p.phi11);
  read(j, "phi22", p.phi22);
  read(j, "phi12", p.phi12);
  read(j, "phi13", p.phi13);
  return p;
}

json range_json(const SweepRange& r) {
  return {{"start", r.start}, {"stop", r.stop}, {"count", r.count}};
}

SweepRange range_from(const json& j, SweepRange r) {
  read(j, "start", r.start);
  read(j, "stop", r.stop);
  read(j, "count", r.count);
  require(r.count >= 0, ErrorKind::config, "sweep count must be non-negative");
  return r;
}

}  // namespace

json to_json(const RunConfig& c) {
  json j;
  j["device"] = to_string(c.device.kind);
  j["levels"] = c.device.levels;
  j["tolerance"] = c.tolerance;
  j["coupler_gap"] = c.device.coupler_gap;
  j["qubit1"] = qubit_json(c.device.qubit1);
  j["qubit2"] = qubit_json(c.device.qubit2);
  if (c.device.scattering) {
    const auto& s = *c.device.scattering;
    j["scattering"] = {{"left", splitter_json(s.left)},
                       {"right", splitter_json(s.right)},
                       {"wire", {{"T", s.wire.transmission}, {"vartheta", s.wire.vartheta}, {"eta", s.wire.eta}}}};
  }
  j["schedule"] = {{"tau_s", c.schedule.tau_s}, {"tau_w", c.schedule.tau_w}, {"T0", c.schedule.t0},
                   {"shape", "erf"}};
  j["sweep"] = {{"T_c", range_json(c.tc_grid)},
                {"tau_s", range_json(c.tau_s_grid)},
                {"T0", range_json(c.t0_grid)},
                {"mode", to_string(c.gate_mode)}};
  return j;
}

RunConfig config_from_json(const json& j) {
  try {
    const DeviceKind kind = device_kind_from_string(j.value("device", std::string("transmon-pair")));
    const bool has_scattering = j.contains("scattering");
    RunConfig c = default_run_config(kind);
    read(j, "levels", c.device.levels);
    read(j, "tolerance", c.tolerance);
    read(j, "coupler_gap", c.device.coupler_gap);
    if (j.contains("qubit1")) c.device.qubit1 = qubit_from(j.at("qubit1"), c.device.qubit1);
    if (j.contains("qubit2")) c.device.qubit2 = qubit_from(j.at("qubit2"), c.device.qubit2);
    if (has_scattering) {
      const auto& s = j.at("scattering");
      ScatteringModel m;
      if (s.contains("left")) m.left = splitter_from(s.at("left"));
      if (s.contains("right")) m.right = splitter_from(s.at("right"));
      if (s.contains("wire")) {
        const auto& w = s.at("wire");
        read(w, "T", m.wire.transmission);
        read(w, "vartheta", m.wire.vartheta);
        read(w, "eta", m.wire.eta);
      }
      c.device.scattering = m;
      if (kind == DeviceKind::h_pair) {
        // qubit K coefficients follow from the closed-wire expansion of the given model
        const auto ref = josephson_expansion(compose_h_smatrix(m.with_transmission(0)));
        c.device.qubit1.quartic = QuarticCoefficients{ref(2, 0), ref(4, 0)};
        c.device.qubit2.quartic = QuarticCoefficients{ref(0, 2), ref(0, 4)};
        c.device.qubit1.josephson = 2 * c.device.qubit1.gap * ref(2, 0);
        c.device.qubit2.josephson = 2 * c.device.qubit2.gap * ref(0, 2);
      }
    }
    if (j.contains("schedule")) {
      const auto& s = j.at("schedule");
      read(s, "tau_s", c.schedule.tau_s);
      read(s, "tau_w", c.schedule.tau_w);
      read(s, "T0", c.schedule.t0);
      require(s.value("shape", std::string("erf")) == "erf", ErrorKind::config,
              "only the erf pulse shape is supported");
    }
    if (j.contains("sweep")) {
      const auto& s = j.at("sweep");
      if (s.contains("T_c")) c.tc_grid = range_from(s.at("T_c"), c.tc_grid);
      if (s.contains("tau_s")) c.tau_s_grid = range_from(s.at("tau_s"), c.tau_s_grid);
      if (s.contains("T0")) c.t0_grid = range_from(s.at("T0"), c.t0_grid);
      if (s.contains("mode")) {
        const auto m = s.at("mode").get<std::string>();
        require(m == "plateau" || m == "zero-wait", ErrorKind::config, "unknown gate mode '" + m + "'");
        c.gate_mode = m == "plateau" ? GateMode::plateau : GateMode::zero_wait;
      }
    }
    require(c.tolerance > 0, ErrorKind::config, "tolerance must be positive");
    require(c.device.levels >= 5, ErrorKind::truncation, "levels must be at least 5");
    validate(c.device.qubit1);
    validate(c.device.qubit2);
    validate(c.schedule);
    return c;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::config, std::string("config: ") + e.what());
  }
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), ErrorKind::io, "cannot open config '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::config, std::string("config parse error: ") + e.what());
  }
  return config_from_json(j);
}

}  // namespace czsim
