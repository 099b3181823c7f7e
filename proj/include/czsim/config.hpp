#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "czsim/dynamics.hpp"

namespace czsim {

struct SweepRange {
  double start = 0;
  double stop = 0;
  int count = 0;

  std::vector<double> values() const;
  friend bool operator==(const SweepRange&, const SweepRange&) = default;
};

enum class GateMode { plateau, zero_wait };

std::string to_string(GateMode m);

struct RunConfig {
  DeviceConfig device;
  PulseSchedule schedule;
  double tolerance = 1e-5;
  SweepRange tc_grid;     // spectrum
  SweepRange tau_s_grid;  // leakage
  SweepRange t0_grid;     // gate and compare
  GateMode gate_mode = GateMode::plateau;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Default device parameters plus per-device sweep ranges.
RunConfig default_run_config(DeviceKind kind);

/// Missing keys take the defaults of the named device.
RunConfig config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const RunConfig& c);
RunConfig load_config(const std::string& path);

}  // namespace czsim
