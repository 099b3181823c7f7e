// czsim: CZ-gate sweeps for coupled transmon, gatemon and H-junction qubit pairs.
#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "czsim/sweeps.hpp"

namespace {

struct Common {
  std::vector<std::string> configs;
  std::string out;
  std::string report;
  int jobs = 1;
  int levels = 0;
  double tol = 0;
};

czsim::RunConfig load(const std::string& path, const Common& o, czsim::DeviceKind fallback) {
  czsim::RunConfig c = path.empty() ? czsim::default_run_config(fallback) : czsim::load_config(path);
  if (o.levels > 0) c.device.levels = o.levels;
  if (o.tol > 0) c.tolerance = o.tol;
  return c;
}

void emit(const czsim::CsvTable& t, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << t.to_csv();
    return;
  }
  std::ofstream f(out);
  if (!f) throw czsim::Error(czsim::ErrorKind::io, "cannot write '" + out + "'");
  f << t.to_csv();
}

void emit_reports(const std::vector<czsim::GateReport>& reports, const std::string& path) {
  if (path.empty()) return;
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : reports) arr.push_back(czsim::report_to_json(r));
  std::ofstream f(path);
  if (!f) throw czsim::Error(czsim::ErrorKind::io, "cannot write '" + path + "'");
  f << arr.dump(2) << '\n';
}

void error_record(std::string_view kind, const std::string& message) {
  std::cerr << nlohmann::json{{"error", {{"kind", kind}, {"message", message}}}}.dump() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"CZ-gate simulator for semiconductor-coupled superconducting qubits"};
  app.require_subcommand(1);
  Common opt;
  std::string device = "transmon-pair";
  std::string mode;

  const auto add_common = [&](CLI::App* sub, bool many_configs) {
    if (many_configs)
      sub->add_option("--config", opt.configs, "JSON run config (repeatable)");
    else
      sub->add_option("--config", opt.configs, "JSON run config")->expected(0, 1);
    sub->add_option("--device", device, "device used when no config is given")
        ->check(CLI::IsMember({"transmon-pair", "gatemon-pair", "h-pair"}));
    sub->add_option("--out", opt.out, "CSV output path (default stdout)");
    sub->add_option("--jobs", opt.jobs, "worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--levels", opt.levels, "oscillator levels per qubit")->check(CLI::Range(5, 100));
    sub->add_option("--tol", opt.tol, "propagation tolerance")->check(CLI::PositiveNumber);
  };

  auto* spectrum = app.add_subcommand("spectrum", "dressed-level shifts and Delta_CZ over the T_c grid");
  add_common(spectrum, false);
  auto* leakage = app.add_subcommand("leakage", "switch-on leakage from |11> over the tau_s grid");
  add_common(leakage, false);
  auto* gate = app.add_subcommand("gate", "gate error and time over the T_0 grid");
  add_common(gate, false);
  gate->add_option("--mode", mode, "plateau or zero-wait (overrides the config)")
      ->check(CLI::IsMember({"plateau", "zero-wait"}));
  gate->add_option("--report", opt.report, "JSON dump of every gate report");
  auto* compare = app.add_subcommand("compare", "zero-wait error versus gate time for several devices");
  add_common(compare, true);
  compare->add_option("--report", opt.report, "JSON dump of every gate report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() != 0) {
      error_record("usage", e.what());
      return e.get_exit_code();
    }
    return app.exit(e);
  }

  try {
    const auto kind = czsim::device_kind_from_string(device);
    const std::string first = opt.configs.empty() ? std::string() : opt.configs.front();
    if (spectrum->parsed()) {
      const auto c = load(first, opt, kind);
      emit(czsim::cmd_spectrum(c, c.tc_grid.values(), opt.jobs), opt.out);
    } else if (leakage->parsed()) {
      const auto c = load(first, opt, kind);
      emit(czsim::cmd_leakage(c, c.tau_s_grid.values(), c.schedule.t0, opt.jobs), opt.out);
    } else if (gate->parsed()) {
      auto c = load(first, opt, kind);
      if (!mode.empty()) c.gate_mode = mode == "plateau" ? czsim::GateMode::plateau : czsim::GateMode::zero_wait;
      std::vector<czsim::GateReport> reports;
      emit(czsim::cmd_gate(c, c.t0_grid.values(), c.gate_mode, opt.jobs, &reports), opt.out);
      emit_reports(reports, opt.report);
    } else if (compare->parsed()) {
      std::vector<czsim::RunConfig> cs;
      if (opt.configs.empty()) {
        for (auto k : {czsim::DeviceKind::transmon_pair, czsim::DeviceKind::gatemon_pair,
                       czsim::DeviceKind::h_pair})
          cs.push_back(load("", opt, k));
      } else {
        for (const auto& p : opt.configs) cs.push_back(load(p, opt, kind));
      }
      std::vector<czsim::GateReport> reports;
      emit(czsim::cmd_compare(cs, opt.jobs, &reports), opt.out);
      emit_reports(reports, opt.report);
    }
  } catch (const czsim::Error& e) {
    error_record(czsim::to_string(e.kind()), e.what());
    return 2;
  } catch (const std::exception& e) {
    error_record("internal", e.what());
    return 1;
  }
  return 0;
}
