#include "czsim/metrics.hpp"

namespace czsim {

void validate_block(const ComputationalBlock& w) {
  for (int c = 0; c < 4; ++c)
    require(w.col(c).norm() <= 1 + 1e-8, ErrorKind::numerical_consistency,
            "computational block column norm exceeds 1");
}

double delta_cz(const SpectrumTable& d) {
  return d.energy({1, 1}) + d.energy({0, 0}) - d.energy({0, 1}) - d.energy({1, 0});
}

Eigen::Matrix4cd z_corrections(const ComputationalBlock& w) {
  Eigen::Vector4d p;
  for (int m = 0; m < 4; ++m) {
    require(std::abs(w(m, m)) > 1e-8, ErrorKind::leakage,
            "z_corrections: vanishing diagonal entry");
    p(m) = -std::arg(w(m, m));
  }
  Eigen::Vector4cd d;
  d << 1.0, std::polar(1.0, p(1) - p(0)), std::polar(1.0, p(2) - p(0)),
      std::polar(1.0, p(2) + p(1) - 2 * p(0));
  return d.asDiagonal();
}

Eigen::Matrix4cd cz_target() {
  return Eigen::Vector4cd(1, 1, 1, -1).asDiagonal();
}

double fidelity(const ComputationalBlock& w) {
  const double norm_term = (w * w.adjoint()).trace().real();
  const auto t = (z_corrections(w) * w * cz_target()).trace();
  return (norm_term + std::norm(t)) / 20;
}

}  // namespace czsim
