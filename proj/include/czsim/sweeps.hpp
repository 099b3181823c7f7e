#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <string>
#include <thread>
#include <vector>

#include "czsim/config.hpp"
#include "czsim/oracle.hpp"

namespace czsim {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string to_csv() const;
};

std::string fmt_fixed(double x);  // %.10g
std::string fmt_sci(double x);    // %.6e

/// Runs fn(i) for i in [0, count) on up to jobs threads. The first exception is rethrown.
template <typename Fn>
void parallel_for(std::size_t count, int jobs, Fn&& fn) {
  const std::size_t workers = std::min<std::size_t>(count, static_cast<std::size_t>(std::max(1, jobs)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = next++; i < count; i = next++) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

/// Columns T_c, dE_01, dE_10, dE_11, Delta_CZ; shifts are relative to the dressed ground state.
CsvTable cmd_spectrum(const RunConfig& config, const std::vector<double>& grid, int jobs = 1);

/// Columns tau_s, P_11_02, P_11_20, P_oracle.
CsvTable cmd_leakage(const RunConfig& config, const std::vector<double>& tau_s_grid, double t0,
                     int jobs = 1);

/// Columns T_0, error, gate_time_ns, tau_w_ns, status. Failed rows keep their status and NaN values.
CsvTable cmd_gate(const RunConfig& config, const std::vector<double>& t0_grid, GateMode mode,
                  int jobs = 1, std::vector<GateReport>* reports = nullptr);

/// Columns device, gate_time_ns, error, T_0, status, zero-wait pulses on each config's T_0 grid.
CsvTable cmd_compare(const std::vector<RunConfig>& configs, int jobs = 1,
                     std::vector<GateReport>* reports = nullptr);

nlohmann::json report_to_json(const GateReport& r);

}  // namespace czsim
