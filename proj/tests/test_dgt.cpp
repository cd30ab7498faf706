#include "oracles.hpp"

#include "tfloc/dgt.hpp"
#include "tfloc/grid.hpp"

#include <doctest.h>

using namespace tfloc;

TEST_CASE("dgt matches direct summation of <psi, pi(n,m) g>") {
    std::mt19937_64 rng(1);
    const Index L = 24;
    const Signal psi = oracle::random_signal(L, rng);
    const Signal g = oracle::random_unit_signal(L, rng);
    const ComplexPhaseMap V = dgt(psi, g);
    CHECK(oracle::max_abs_diff(V, oracle::naive_dgt(psi, g)) < 1e-12);
    // Spot-check the inner-product definition too.
    for (auto [n, m] : {std::pair<Index, Index>{0, 0}, {3, 17}, {23, 5}}) {
        CHECK(std::abs(V(n, m) - oracle::inner(psi, oracle::shift(g, n, m))) < 1e-12);
    }
}

TEST_CASE("dgt: Moyal identity and normalization") {
    std::mt19937_64 rng(2);
    const Index L = 64;
    const Signal psi = oracle::random_signal(L, rng);
    const Signal g = make_gaussian_window(L);
    const double lhs = dgt(psi, g).cwiseAbs2().sum() / double(L);
    CHECK(lhs == doctest::Approx(psi.squaredNorm()).epsilon(1e-12));
    CHECK(std::abs(dgt(g, g)(0, 0) - 1.0) < 1e-14);
    CHECK(spectrogram(psi, g).sum() / double(L) == doctest::Approx(psi.squaredNorm()).epsilon(1e-12));
}

TEST_CASE("dgt: covariance under time-frequency shifts") {
    std::mt19937_64 rng(3);
    const Index L = 32;
    const Signal psi = oracle::random_signal(L, rng);
    const Signal g = make_gaussian_window(L);
    const LatticePoint z0{7, 19};
    const ComplexPhaseMap a = dgt(tf_shift(psi, z0), g);
    const ComplexPhaseMap b = dgt(psi, g);
    double worst = 0.0;
    for (Index n = 0; n < L; ++n)
        for (Index m = 0; m < L; ++m)
            worst = std::max(worst, std::abs(std::abs(a(n, m)) - std::abs(b(wrap(n - z0.n, L), wrap(m - z0.m, L)))));
    CHECK(worst < 1e-12);
}

TEST_CASE("dgt_adjoint: perfect reconstruction, zero input, window scaling") {
    std::mt19937_64 rng(4);
    const Index L = 64;
    const Signal psi = oracle::random_signal(L, rng);
    const Signal g = make_gaussian_window(L);
    CHECK(oracle::max_abs_diff(dgt_adjoint(dgt(psi, g), g), psi) <= 1e-12);
    CHECK(dgt_adjoint(ComplexPhaseMap::Zero(L, L), g).cwiseAbs().maxCoeff() == 0.0);
    const double c = 1.7;
    const Signal gc = c * g;
    CHECK(oracle::max_abs_diff(dgt_adjoint(dgt(psi, gc), gc), c * c * psi) <= 1e-11);
    CHECK_THROWS_AS(dgt_adjoint(ComplexPhaseMap::Zero(L, L - 1), g), Error);
}

TEST_CASE("dgt: length mismatch is rejected") {
    CHECK_THROWS_AS(dgt(Signal::Zero(8), Signal::Zero(9)), Error);
}

TEST_CASE("spectrogram: peak of a shifted window, zero signal") {
    const Index L = 64;
    const Signal g = make_gaussian_window(L);
    const LatticePoint z0{11, 45};
    const PhaseMap S = spectrogram(tf_shift(g, z0), g);
    Index r = 0, c = 0;
    CHECK(S.maxCoeff(&r, &c) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(r == z0.n);
    CHECK(c == z0.m);
    CHECK(S.minCoeff() >= 0.0);
    CHECK(spectrogram(Signal::Zero(L), g).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("dgt: standard basis spectrograms tile to one") {
    const Index L = 32;
    const Signal phi = hermite_system(L, 3).back();
    PhaseMap total = PhaseMap::Zero(L, L);
    for (Index i = 0; i < L; ++i) total += spectrogram(Signal::Unit(L, i), phi);
    CHECK(oracle::max_abs_diff(total, PhaseMap::Ones(L, L)) < 1e-10);
}

TEST_CASE("dgt: linear in psi, conjugate-linear in g") {
    std::mt19937_64 rng(5);
    const Index L = 20;
    const Signal a = oracle::random_signal(L, rng), b = oracle::random_signal(L, rng);
    const Signal g = oracle::random_signal(L, rng), h = oracle::random_signal(L, rng);
    const cdouble alpha{0.3, -1.2}, beta{2.0, 0.5};
    CHECK(oracle::max_abs_diff(dgt(alpha * a + beta * b, g), alpha * dgt(a, g) + beta * dgt(b, g)) < 1e-11);
    CHECK(oracle::max_abs_diff(dgt(a, alpha * g + beta * h), std::conj(alpha) * dgt(a, g) + std::conj(beta) * dgt(a, h)) <
          1e-11);
}

TEST_CASE("dgt after dgt_adjoint is an orthogonal projection") {
    std::mt19937_64 rng(6);
    const Index L = 24;
    const Signal g = make_gaussian_window(L);
    ComplexPhaseMap F(L, L);
    std::normal_distribution<double> nd;
    for (Index i = 0; i < L; ++i)
        for (Index j = 0; j < L; ++j) F(i, j) = {nd(rng), nd(rng)};
    const ComplexPhaseMap once = dgt(dgt_adjoint(F, g), g);
    const ComplexPhaseMap twice = dgt(dgt_adjoint(once, g), g);
    CHECK(oracle::max_abs_diff(once, twice) < 1e-10);
}
