#pragma once

#include "tfloc/types.hpp"

#include <vector>

namespace tfloc::fft {

// Unnormalized DFTs: forward uses exp(-2 pi i m t / L), backward exp(+2 pi i m t / L).
// Safe to call concurrently; plans are cached per length.
void forward(const cdouble* in, cdouble* out, Index length);
void backward(const cdouble* in, cdouble* out, Index length);

Eigen::VectorXcd forward(const Eigen::VectorXcd& x);
Eigen::VectorXcd backward(const Eigen::VectorXcd& x);

/// Unnormalized 2D transforms over both axes of a phase-space map.
ComplexPhaseMap forward2d(const ComplexPhaseMap& x);
ComplexPhaseMap backward2d(const ComplexPhaseMap& x);

/// exp(2 pi i k / L) for k = 0..L-1, evaluated directly per k.
const std::vector<cdouble>& unit_roots(Index length);

}  // namespace tfloc::fft
