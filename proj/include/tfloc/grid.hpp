#pragma once

#include "tfloc/types.hpp"

#include <vector>

namespace tfloc {

double norm(const Signal& psi);

/// <a, b> = sum_t a[t] conj(b[t]), linear in the first slot.
cdouble inner(const Signal& a, const Signal& b);

/// Periodized Gaussian sum_{r=-1,0,1} exp(-pi (j - L/2 + rL)^2 / L), unit norm.
Signal make_gaussian_window(Index length);

/// pi(n, m) psi [t] = exp(2 pi i m t / L) psi[(t - n) mod L].
Signal tf_shift(const Signal& psi, LatticePoint z);

/// First `count` Hermite functions sampled at x = (j - L/2)/sqrt(L), made orthonormal by
/// Gram-Schmidt in order, then time-frequency shifted by `center`.
std::vector<Signal> hermite_system(Index length, Index count, LatticePoint center = {});

/// Orthonormalizes `vectors` in place (modified Gram-Schmidt, two passes).
void orthonormalize(std::vector<Signal>& vectors);

/// Positive finite-rank window operator S = sum_i s_i (g_i (x) g_i) with unit trace.
class WindowSystem {
public:
    struct Term {
        double weight;
        Signal window;
    };

    /// Validates: non-empty, equal lengths, non-negative weights summing to 1 and
    /// unit-norm windows (both within 1e-12).
    explicit WindowSystem(std::vector<Term> terms);

    static WindowSystem single(Signal window);

    const std::vector<Term>& terms() const noexcept { return terms_; }
    Index length() const noexcept { return terms_.front().window.size(); }
    std::size_t rank() const noexcept { return terms_.size(); }

private:
    std::vector<Term> terms_;
};

}  // namespace tfloc
