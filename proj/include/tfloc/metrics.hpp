#pragma once

#include "tfloc/types.hpp"

namespace tfloc {

/// ||estimate - truth||_1 / ||truth||_1. NaN entries of the estimate are skipped in both sums.
double rel_l1_error(const PhaseMap& estimate, const PhaseMap& truth);

/// Discrete isotropic total variation with forward cyclic differences.
double variation(const PhaseMap& f);

/// Euclidean length of the shortest representative of (n, m) on Z_L x Z_L.
double torus_norm(Index n, Index m, Index length);

/// Var(f) * sum_z |z| |kernel(z)|: bounds ||f (*) kernel - f||_1 for unit-mass kernels.
double blur_bound(const PhaseMap& f, const PhaseMap& kernel);

}  // namespace tfloc
