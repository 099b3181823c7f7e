#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace czsim {

enum class ErrorKind {
  parameter,
  truncation,
  dimension,
  basis_mismatch,
  labeling,
  composition,
  numerical_consistency,
  fit,
  calibration,
  integration,
  leakage,
  no_coupling,
  resolution,
  config,
  io,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline void require(bool ok, ErrorKind kind, const std::string& what) {
  if (!ok) throw Error(kind, what);
}

}  // namespace czsim
