#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "czsim/errors.hpp"
#include "czsim/linalg.hpp"

namespace czsim {

/// Truncated harmonic-oscillator basis: theta = lambda (a + a^dagger), n = i (a - a^dagger) / (2 lambda).
struct OscillatorBasis {
  int levels = 0;
  double theta_zpf = 0;    // lambda, lambda^4 = 2 E_C / E_J_quad
  double plasma_freq = 0;  // sqrt(8 E_C E_J_quad), GHz
};

struct BasisTag {
  std::string id;
  friend bool operator==(const BasisTag&, const BasisTag&) = default;
};

template <typename Scalar = double>
struct Operator {
  CMatrix<Scalar> entries;
  BasisTag basis;

  Index dim() const { return entries.rows(); }
};

using OperatorMatrix = Operator<double>;

OscillatorBasis make_oscillator_basis(double charging, double josephson_quad, int levels);
BasisTag basis_tag(const OscillatorBasis& basis);
BasisTag product_tag(const BasisTag& first, const BasisTag& second);

template <typename Scalar = double>
RMatrix<Scalar> lowering_operator(int levels) {
  RMatrix<Scalar> a = RMatrix<Scalar>::Zero(levels, levels);
  for (int k = 1; k < levels; ++k) a(k - 1, k) = std::sqrt(Scalar(k));
  return a;
}

template <typename Scalar = double>
struct PhaseChargeOps {
  OscillatorBasis basis;
  Operator<Scalar> theta;
  Operator<Scalar> n;
};

/// Plain truncated theta and n; [n, theta] = i holds on the leading (N-1)x(N-1) block.
template <typename Scalar = double>
PhaseChargeOps<Scalar> build_phase_charge_ops(double charging, double josephson_quad, int levels) {
  const auto basis = make_oscillator_basis(charging, josephson_quad, levels);
  const Scalar lam = basis.theta_zpf;
  const RMatrix<Scalar> a = lowering_operator<Scalar>(levels);
  const Complex<Scalar> i_over(0, Scalar(1) / (Scalar(2) * lam));
  PhaseChargeOps<Scalar> ops{basis, {}, {}};
  ops.theta = {(lam * (a + a.transpose())).template cast<Complex<Scalar>>(), basis_tag(basis)};
  ops.n = {i_over * (a - a.transpose()).template cast<Complex<Scalar>>(), basis_tag(basis)};
  return ops;
}

/// theta^k projected onto the N-level basis. Built in N + k levels so no entry is corrupted by truncation.
template <typename Scalar = double>
Operator<Scalar> phase_power(const OscillatorBasis& basis, int power) {
  require(power >= 0, ErrorKind::parameter, "phase_power: negative power");
  const int big = basis.levels + power;
  const RMatrix<Scalar> a = lowering_operator<Scalar>(big);
  const RMatrix<Scalar> theta = Scalar(basis.theta_zpf) * (a + a.transpose());
  RMatrix<Scalar> p = RMatrix<Scalar>::Identity(big, big);
  for (int k = 0; k < power; ++k) p = p * theta;
  return {p.topLeftCorner(basis.levels, basis.levels).template cast<Complex<Scalar>>(),
          basis_tag(basis)};
}

/// n^2 projected onto the N-level basis.
template <typename Scalar = double>
Operator<Scalar> charge_squared(const OscillatorBasis& basis) {
  const int big = basis.levels + 2;
  const RMatrix<Scalar> a = lowering_operator<Scalar>(big);
  const RMatrix<Scalar> d = a - a.transpose();
  const Scalar lam = basis.theta_zpf;
  const RMatrix<Scalar> n2 = -(d * d) / (Scalar(4) * lam * lam);
  return {n2.topLeftCorner(basis.levels, basis.levels).template cast<Complex<Scalar>>(),
          basis_tag(basis)};
}

/// Projected powers theta^0 .. theta^max_power.
template <typename Scalar = double>
std::vector<Operator<Scalar>> phase_powers(const OscillatorBasis& basis, int max_power) {
  std::vector<Operator<Scalar>> out;
  for (int k = 0; k <= max_power; ++k) out.push_back(phase_power<Scalar>(basis, k));
  return out;
}

enum class Slot { first, second };

inline constexpr Index kMaxProductDim = 10000;

/// op (x) I for the first slot, I (x) op for the second.
template <typename Scalar>
Operator<Scalar> embed_pair(const Operator<Scalar>& op, Slot slot, Index other_dim,
                            const BasisTag& other) {
  require(op.entries.rows() == op.entries.cols(), ErrorKind::dimension, "embed_pair: op not square");
  require(other_dim >= 5, ErrorKind::truncation, "embed_pair: other_dim < 5");
  const Index n = op.dim();
  require(n * other_dim <= kMaxProductDim, ErrorKind::dimension,
          "embed_pair: product dimension " + std::to_string(n * other_dim) + " exceeds 10000");
  const Index dim = n * other_dim;
  CMatrix<Scalar> out = CMatrix<Scalar>::Zero(dim, dim);
  if (slot == Slot::first) {
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j)
        if (op.entries(i, j) != Complex<Scalar>(0))
          for (Index k = 0; k < other_dim; ++k)
            out(i * other_dim + k, j * other_dim + k) = op.entries(i, j);
    return {std::move(out), product_tag(op.basis, other)};
  }
  for (Index k = 0; k < other_dim; ++k)
    out.block(k * n, k * n, n, n) = op.entries;
  return {std::move(out), product_tag(other, op.basis)};
}

template <typename Scalar>
Operator<Scalar> embed_pair(const Operator<Scalar>& op, Slot slot, Index other_dim) {
  return embed_pair(op, slot, other_dim, BasisTag{"I" + std::to_string(other_dim)});
}

/// Kronecker product a (x) b of two single-qubit operators.
template <typename Scalar>
Operator<Scalar> kron(const Operator<Scalar>& a, const Operator<Scalar>& b) {
  const Index na = a.dim(), nb = b.dim();
  require(na * nb <= kMaxProductDim, ErrorKind::dimension, "kron: product dimension exceeds 10000");
  CMatrix<Scalar> out(na * nb, na * nb);
  for (Index i = 0; i < na; ++i)
    for (Index j = 0; j < na; ++j) out.block(i * nb, j * nb, nb, nb) = a.entries(i, j) * b.entries;
  return {std::move(out), product_tag(a.basis, b.basis)};
}

}  // namespace czsim
