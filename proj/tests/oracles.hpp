#pragma once

// Independent reference implementations used only by the tests. Everything here is
// evaluated by direct summation with std::exp/std::polar; none of it goes through the
// library's FFT paths.

#include "tfloc/types.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace oracle {

using tfloc::cdouble;
using tfloc::Index;
using tfloc::PhaseMap;
using tfloc::Signal;

inline cdouble expi(double angle) { return std::polar(1.0, angle); }

inline Signal random_signal(Index L, std::mt19937_64& rng) {
    std::normal_distribution<double> nd;
    Signal s(L);
    for (Index i = 0; i < L; ++i) s[i] = {nd(rng), nd(rng)};
    return s;
}

inline Signal random_unit_signal(Index L, std::mt19937_64& rng) {
    Signal s = random_signal(L, rng);
    return s / s.norm();
}

inline PhaseMap random_symbol(Index L, std::mt19937_64& rng, double lo = 0.0, double hi = 1.0) {
    std::uniform_real_distribution<double> ud(lo, hi);
    PhaseMap f(L, L);
    for (Index i = 0; i < L; ++i)
        for (Index j = 0; j < L; ++j) f(i, j) = ud(rng);
    return f;
}

inline Index wrap(Index i, Index L) { return ((i % L) + L) % L; }

/// pi(n, m) psi by direct formula.
inline Signal shift(const Signal& psi, Index n, Index m) {
    const Index L = psi.size();
    Signal out(L);
    for (Index t = 0; t < L; ++t) out[t] = expi(2.0 * std::numbers::pi * double(m * t % L) / double(L)) * psi[wrap(t - n, L)];
    return out;
}

inline cdouble inner(const Signal& a, const Signal& b) {
    cdouble s{0.0, 0.0};
    for (Index t = 0; t < a.size(); ++t) s += a[t] * std::conj(b[t]);
    return s;
}

/// V[n][m] = sum_t psi[t] conj(g[t-n]) exp(-2 pi i m t / L), by direct summation.
inline tfloc::ComplexPhaseMap naive_dgt(const Signal& psi, const Signal& g) {
    const Index L = psi.size();
    tfloc::ComplexPhaseMap V(L, L);
    for (Index n = 0; n < L; ++n)
        for (Index m = 0; m < L; ++m) {
            cdouble s{0.0, 0.0};
            for (Index t = 0; t < L; ++t)
                s += psi[t] * std::conj(g[wrap(t - n, L)]) * expi(-2.0 * std::numbers::pi * double(m * t % L) / double(L));
            V(n, m) = s;
        }
    return V;
}

/// W[n][m] = sum_k psi[n+k] conj(psi[n-k]) exp(-4 pi i m k / L), by direct summation.
inline tfloc::ComplexPhaseMap naive_wigner(const Signal& psi) {
    const Index L = psi.size();
    tfloc::ComplexPhaseMap W(L, L);
    for (Index n = 0; n < L; ++n)
        for (Index m = 0; m < L; ++m) {
            cdouble s{0.0, 0.0};
            for (Index k = 0; k < L; ++k)
                s += psi[wrap(n + k, L)] * std::conj(psi[wrap(n - k, L)]) *
                     expi(-4.0 * std::numbers::pi * double(m * k % L) / double(L));
            W(n, m) = s;
        }
    return W;
}

/// (f (*) k)[z] = sum_w f[w] k[z - w], by direct summation.
inline PhaseMap direct_convolve(const PhaseMap& f, const PhaseMap& k) {
    const Index L = f.rows();
    PhaseMap out = PhaseMap::Zero(L, L);
    for (Index n = 0; n < L; ++n)
        for (Index m = 0; m < L; ++m) {
            double s = 0.0;
            for (Index a = 0; a < L; ++a)
                for (Index b = 0; b < L; ++b) s += f(a, b) * k(wrap(n - a, L), wrap(m - b, L));
            out(n, m) = s;
        }
    return out;
}

/// Operator assembled as (1/L) sum_z f[z] sum_i s_i (pi(z) g_i)(pi(z) g_i)^*, one rank-one
/// term per lattice point.
template <class Terms>
tfloc::Matrix rank_one_operator(const PhaseMap& f, const Terms& terms) {
    const Index L = f.rows();
    tfloc::Matrix A = tfloc::Matrix::Zero(L, L);
    for (const auto& [weight, g] : terms)
        for (Index n = 0; n < L; ++n)
            for (Index m = 0; m < L; ++m) {
                const Signal v = shift(g, n, m);
                A += (weight * f(n, m) / double(L)) * (v * v.adjoint());
            }
    return A;
}

template <class A, class B>
double max_abs_diff(const A& a, const B& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace oracle
