#include "oracles.hpp"

#include "tfloc/dgt.hpp"
#include "tfloc/estimators.hpp"
#include "tfloc/grid.hpp"
#include "tfloc/metrics.hpp"
#include "tfloc/symbols.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>

using namespace tfloc;

TEST_CASE("rel_l1_error") {
    std::mt19937_64 rng(71);
    const Index L = 16;
    const PhaseMap f = oracle::random_symbol(L, rng, 0.1, 1.0);
    CHECK(rel_l1_error(f, f) == 0.0);
    CHECK(rel_l1_error(PhaseMap(PhaseMap::Zero(L, L)), f) == doctest::Approx(1.0));
    const PhaseMap ones = PhaseMap::Ones(L, L);
    CHECK(rel_l1_error(PhaseMap(ones.array() + 0.25), ones) == doctest::Approx(0.25).epsilon(1e-14));
    const PhaseMap est = oracle::random_symbol(L, rng);
    CHECK(rel_l1_error(PhaseMap(3.0 * est), PhaseMap(3.0 * f)) == doctest::Approx(rel_l1_error(est, f)).epsilon(1e-14));
    CHECK_THROWS_AS(rel_l1_error(f, PhaseMap(PhaseMap::Zero(L, L))), Error);
    CHECK_THROWS_AS(rel_l1_error(f, PhaseMap(PhaseMap::Ones(L, L + 1))), Error);
}

TEST_CASE("rel_l1_error skips NaN entries on both sides") {
    PhaseMap truth = PhaseMap::Ones(2, 2);
    truth(1, 1) = 100.0;
    PhaseMap est = PhaseMap::Ones(2, 2);
    est(0, 0) = 2.0;
    est(1, 1) = std::numeric_limits<double>::quiet_NaN();
    CHECK(rel_l1_error(est, truth) == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("variation") {
    const Index L = 8;
    CHECK(variation(PhaseMap(PhaseMap::Constant(L, L, 0.7))) == 0.0);
    PhaseMap px = PhaseMap::Zero(L, L);
    px(3, 4) = 1.0;
    // Forward differences: (-1, -1) at the pixel, (1, 0) and (0, 1) at its two back neighbours.
    CHECK(variation(px) == doctest::Approx(2.0 + std::sqrt(2.0)).epsilon(1e-15));
    std::mt19937_64 rng(72);
    const PhaseMap f = oracle::random_symbol(L, rng, -1.0, 1.0);
    CHECK(variation(PhaseMap(-2.5 * f)) == doctest::Approx(2.5 * variation(f)).epsilon(1e-14));
    // A vertical stripe has two unit jumps per row.
    PhaseMap stripe = PhaseMap::Zero(L, L);
    stripe.col(2).setOnes();
    CHECK(variation(stripe) == doctest::Approx(2.0 * double(L)));
}

TEST_CASE("torus_norm") {
    CHECK(torus_norm(0, 0, 10) == 0.0);
    CHECK(torus_norm(9, 0, 10) == 1.0);
    CHECK(torus_norm(3, 6, 10) == doctest::Approx(5.0));
    CHECK(torus_norm(5, 5, 10) == doctest::Approx(std::sqrt(50.0)));
}

TEST_CASE("blur_bound: trivial cases and dominance") {
    const Index L = 32;
    PhaseMap delta = PhaseMap::Zero(L, L);
    delta(0, 0) = 1.0;
    SymbolSpec s;
    s.size = L;
    const PhaseMap disk = gen_symbol(s);
    CHECK(blur_bound(disk, delta) == 0.0);
    const Signal g = make_gaussian_window(L);
    const PhaseMap k = impulse_kernel(WindowSystem::single(g), g, KernelMode::analytic);
    CHECK(blur_bound(PhaseMap(PhaseMap::Ones(L, L)), k) == 0.0);
    const double actual = (oracle::direct_convolve(disk, k) - disk).cwiseAbs().sum();
    CHECK(actual <= blur_bound(disk, k));
    CHECK(actual > 0.0);

    std::mt19937_64 rng(73);
    for (int i = 0; i < 5; ++i) {
        const PhaseMap f = oracle::random_symbol(L, rng, -1.0, 1.0);
        const double err = (circular_convolve(f, k) - f).cwiseAbs().sum() / f.cwiseAbs().sum();
        CHECK(err <= blur_bound(f, k) / f.cwiseAbs().sum() + 1e-9);
    }
}
