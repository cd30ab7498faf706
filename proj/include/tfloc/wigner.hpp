#pragma once

#include "tfloc/grid.hpp"
#include "tfloc/types.hpp"

namespace tfloc {

/// Discrete Wigner distribution
///   W[n][m] = sum_k psi[n+k] conj(psi[n-k]) exp(-4 pi i m k / L),
/// indices mod L. Exact marginals need odd L; for even L the map has period L/2 in m.
PhaseMap wigner(const Signal& psi);

/// Adds weight * wigner(psi) into acc.
void accumulate_wigner(const Signal& psi, double weight, PhaseMap& acc);

/// Largest |Im W| seen while evaluating the distribution (diagnostic for the realness check).
double wigner_imag_residue(const Signal& psi);

/// Finite-rank Cohen's class Q_T(psi) = sum_i t_i |dgt(psi, tau_i)|^2.
PhaseMap cohen_q(const Signal& psi, const WindowSystem& T);

void accumulate_cohen_q(const Signal& psi, const WindowSystem& T, double weight, PhaseMap& acc);

}  // namespace tfloc
