#pragma once

#include "tfloc/types.hpp"

#include <algorithm>
#include <vector>

namespace tfloc {

/// Caps the number of worker threads; 0 restores the runtime default.
void set_max_threads(int threads);
int max_threads();

/// Runs body(i) for i in [0, count). Iterations must write to disjoint outputs.
template <class Body>
void parallel_for(Index count, Body&& body) {
#pragma omp parallel for schedule(static)
    for (Index i = 0; i < count; ++i) body(i);
}

/// Sums `count` phase-space terms, accumulate(i, acc) adding term i into acc.
///
/// Terms are grouped into fixed blocks summed in index order, and block partials are
/// combined by a pairwise tree. The grouping never depends on the thread count, so
/// the result is bit-identical for any number of workers.
template <class Accumulate>
PhaseMap tree_sum(Index count, Index rows, Index cols, Accumulate&& accumulate, Index block = 8) {
    if (count <= 0) return PhaseMap::Zero(rows, cols);
    const Index blocks = (count + block - 1) / block;
    std::vector<PhaseMap> partial(static_cast<std::size_t>(blocks));
    parallel_for(blocks, [&](Index b) {
        PhaseMap acc = PhaseMap::Zero(rows, cols);
        const Index end = std::min(count, (b + 1) * block);
        for (Index i = b * block; i < end; ++i) accumulate(i, acc);
        partial[static_cast<std::size_t>(b)] = std::move(acc);
    });
    for (std::size_t stride = 1; stride < partial.size(); stride *= 2) {
        for (std::size_t i = 0; i + stride < partial.size(); i += 2 * stride) partial[i] += partial[i + stride];
    }
    return std::move(partial.front());
}

}  // namespace tfloc
