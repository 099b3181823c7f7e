#pragma once

#include "czsim/devices.hpp"

namespace czsim {

/// W_nm = <n|U|m> on the computational states, order (00, 01, 10, 11).
using ComputationalBlock = Eigen::Matrix4cd;

/// Throws if a column norm exceeds 1 + 1e-8 (not the projection of a unitary).
void validate_block(const ComputationalBlock& w);

/// E11 + E00 - E01 - E10 of the dressed spectrum, GHz.
double delta_cz(const SpectrumTable& dressed);

/// diag{1, e^{i(p01-p00)}, e^{i(p10-p00)}, e^{i(p10+p01-2 p00)}} with p_m = -arg W_mm.
Eigen::Matrix4cd z_corrections(const ComputationalBlock& w);

Eigen::Matrix4cd cz_target();

/// (1/20)[tr(W W^dagger) + |tr(Uz W U_CZ)|^2].
double fidelity(const ComputationalBlock& w);
inline double gate_error(const ComputationalBlock& w) { return 1 - fidelity(w); }

}  // namespace czsim
