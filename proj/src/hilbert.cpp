#include "czsim/hilbert.hpp"

#include <cstdio>

namespace czsim {

OscillatorBasis make_oscillator_basis(double charging, double josephson_quad, int levels) {
  require(charging > 0 && josephson_quad > 0, ErrorKind::parameter,
          "oscillator basis: energies must be positive");
  require(levels >= 5, ErrorKind::truncation, "oscillator basis: N must be at least 5");
  OscillatorBasis b;
  b.levels = levels;
  b.theta_zpf = std::pow(2.0 * charging / josephson_quad, 0.25);
  b.plasma_freq = std::sqrt(8.0 * charging * josephson_quad);
  return b;
}

BasisTag basis_tag(const OscillatorBasis& basis) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "osc(%d,%.15g)", basis.levels, basis.theta_zpf);
  return {buf};
}

BasisTag product_tag(const BasisTag& first, const BasisTag& second) {
  return {first.id + "x" + second.id};
}

}  // namespace czsim
