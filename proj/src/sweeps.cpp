#include "czsim/sweeps.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <sstream>

namespace czsim {

std::string CsvTable::to_csv() const {
  std::ostringstream out;
  const auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t k = 0; k < cells.size(); ++k) out << (k ? "," : "") << cells[k];
    out << '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
  return out.str();
}

std::string fmt_fixed(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

std::string fmt_sci(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6e", x);
  return buf;
}

namespace {

PropagationOptions propagation_options(const RunConfig& c) {
  PropagationOptions o;
  o.tolerance = c.tolerance;
  return o;
}

template <typename Key>
void sort_rows(std::vector<std::pair<Key, std::vector<std::string>>>& keyed, CsvTable& table) {
  std::stable_sort(keyed.begin(), keyed.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  for (auto& [k, row] : keyed) table.rows.push_back(std::move(row));
}

constexpr int kOracleIntervals = 4000;

}  // namespace

CsvTable cmd_spectrum(const RunConfig& config, const std::vector<double>& grid, int jobs) {
  CsvTable t{{"T_c", "dE_01", "dE_10", "dE_11", "Delta_CZ"}, {}};
  if (grid.empty()) return t;
  const CoupledPair pair(config.device);
  const auto& bare = pair.bare();
  std::vector<std::pair<double, std::vector<std::string>>> keyed(grid.size());
  parallel_for(grid.size(), jobs, [&](std::size_t i) {
    const double tc = grid[i];
    SpectrumTable d;
    try {
      d = pair.dressed(tc);
    } catch (const Error& e) {
      throw Error(e.kind(), std::string(e.what()) + " at T_c = " + fmt_fixed(tc));
    }
    const auto shift = [&](StateLabel s) { return d.energy(s) - bare.energy(s); };
    keyed[i] = {tc,
                {fmt_fixed(tc), fmt_fixed(shift({0, 1})), fmt_fixed(shift({1, 0})),
                 fmt_fixed(shift({1, 1})), fmt_fixed(delta_cz(d))}};
  });
  sort_rows(keyed, t);
  return t;
}

CsvTable cmd_leakage(const RunConfig& config, const std::vector<double>& tau_s_grid, double t0, int jobs) {
  CsvTable t{{"tau_s", "P_11_02", "P_11_20", "P_oracle"}, {}};
  if (tau_s_grid.empty()) return t;
  const CoupledPair pair(config.device);
  const auto popt = propagation_options(config);
  std::vector<std::pair<double, std::vector<std::string>>> keyed(tau_s_grid.size());
  parallel_for(tau_s_grid.size(), jobs, [&](std::size_t i) {
    const double tau = tau_s_grid[i];
    const auto on = switch_on(pair, tau, t0, popt);
    const PulseSchedule sched{tau, 0, t0, PulseShape::erf};
    const auto trace = project_two_level(pair, sched, uniform_grid(tau, kOracleIntervals));
    const auto est = transition_probability(trace);
    keyed[i] = {tau,
                {fmt_fixed(tau), fmt_sci(on.leakage.at({{1, 1}, {0, 2}})),
                 fmt_sci(on.leakage.at({{1, 1}, {2, 0}})), fmt_sci(est.probability)}};
  });
  sort_rows(keyed, t);
  return t;
}

namespace {

struct GateRow {
  double t0 = 0;
  std::optional<GateReport> report;
  std::string status = "ok";
};

GateRow run_gate_point(const CoupledPair& pair, const RunConfig& config, double t0, GateMode mode) {
  GateRow row;
  row.t0 = t0;
  const auto popt = propagation_options(config);
  try {
    SwitchOn on;
    PulseSchedule sched;
    if (mode == GateMode::plateau) {
      on = switch_on(pair, config.schedule.tau_s, t0, popt);
      sched = plateau_schedule(on);
    } else {
      sched = zero_wait_schedule(pair, t0, popt, &on);
    }
    row.report = compose_gate(sched, pair, on);
  } catch (const Error& e) {
    row.status = std::string(to_string(e.kind()));
  }
  return row;
}

std::vector<std::string> gate_cells(const GateRow& r) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const double err = r.report ? r.report->error : nan;
  const double gt = r.report ? r.report->gate_time : nan;
  const double tw = r.report ? r.report->schedule.tau_w : nan;
  return {fmt_fixed(r.t0), fmt_sci(err), fmt_fixed(gt), fmt_fixed(tw), r.status};
}

}  // namespace

CsvTable cmd_gate(const RunConfig& config, const std::vector<double>& t0_grid, GateMode mode, int jobs,
                  std::vector<GateReport>* reports) {
  CsvTable t{{"T_0", "error", "gate_time_ns", "tau_w_ns", "status"}, {}};
  if (t0_grid.empty()) return t;
  const CoupledPair pair(config.device);
  std::vector<GateRow> rows(t0_grid.size());
  parallel_for(t0_grid.size(), jobs,
               [&](std::size_t i) { rows[i] = run_gate_point(pair, config, t0_grid[i], mode); });
  std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.t0 < b.t0; });
  for (const auto& r : rows) {
    t.rows.push_back(gate_cells(r));
    if (reports && r.report) reports->push_back(*r.report);
  }
  return t;
}

CsvTable cmd_compare(const std::vector<RunConfig>& configs, int jobs, std::vector<GateReport>* reports) {
  CsvTable t{{"device", "gate_time_ns", "error", "T_0", "status"}, {}};
  struct Point {
    std::size_t config;
    double t0;
  };
  std::vector<Point> points;
  std::vector<CoupledPair> pairs;
  for (std::size_t c = 0; c < configs.size(); ++c) {
    pairs.emplace_back(configs[c].device);
    for (double t0 : configs[c].t0_grid.values()) points.push_back({c, t0});
  }
  std::vector<GateRow> rows(points.size());
  parallel_for(points.size(), jobs, [&](std::size_t i) {
    rows[i] = run_gate_point(pairs[points[i].config], configs[points[i].config], points[i].t0,
                             GateMode::zero_wait);
  });
  std::vector<std::pair<std::pair<std::string, double>, std::size_t>> order;
  for (std::size_t i = 0; i < points.size(); ++i)
    order.push_back({{to_string(configs[points[i].config].device.kind), points[i].t0}, i});
  std::stable_sort(order.begin(), order.end());
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (const auto& [key, i] : order) {
    const auto& r = rows[i];
    t.rows.push_back({key.first, fmt_fixed(r.report ? r.report->gate_time : nan),
                      fmt_sci(r.report ? r.report->error : nan), fmt_fixed(r.t0), r.status});
    if (reports && r.report) reports->push_back(*r.report);
  }
  return t;
}

nlohmann::json report_to_json(const GateReport& r) {
  using nlohmann::json;
  json leak = json::array();
  for (const auto& [k, p] : r.leakage)
    leak.push_back({{"from", to_string(k.first)}, {"to", to_string(k.second)}, {"P", p}});
  json on_leak = json::array();
  for (const auto& [k, p] : r.switch_on_leakage)
    on_leak.push_back({{"from", to_string(k.first)}, {"to", to_string(k.second)}, {"P", p}});
  json w = json::array();
  for (int i = 0; i < 4; ++i) {
    json row = json::array();
    for (int j = 0; j < 4; ++j) row.push_back({r.w(i, j).real(), r.w(i, j).imag()});
    w.push_back(row);
  }
  return {{"schedule", {{"tau_s", r.schedule.tau_s}, {"tau_w", r.schedule.tau_w}, {"T0", r.schedule.t0}}},
          {"delta_cz", r.delta_cz},
          {"phi_on", r.phi_on},
          {"delta_phi_on", r.delta_phi_on},
          {"switch_on_leakage", on_leak},
          {"leakage", leak},
          {"W", w},
          {"fidelity", r.fidelity},
          {"error", r.error},
          {"gate_time", r.gate_time},
          {"unitarity_defect", r.unitarity_defect},
          {"steps", r.steps}};
}

}  // namespace czsim
