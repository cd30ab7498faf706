#pragma once

#include "tfloc/types.hpp"

namespace tfloc {

/// Full-lattice discrete Gabor transform V[n][m] = <psi, pi(n, m) g>.
ComplexPhaseMap dgt(const Signal& psi, const Signal& g);

/// Synthesis (1/L) sum_{n,m} F[n][m] pi(n, m) g. Inverts dgt for unit-norm g.
Signal dgt_adjoint(const ComplexPhaseMap& coeffs, const Signal& g);

/// |dgt(psi, g)|^2.
PhaseMap spectrogram(const Signal& psi, const Signal& g);

/// Adds weight * |dgt(psi, g)|^2 into acc without allocating the full transform.
void accumulate_spectrogram(const Signal& psi, const Signal& g, double weight, PhaseMap& acc);

}  // namespace tfloc
