#include "oracles.hpp"

#include "tfloc/symbols.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>

using namespace tfloc;

namespace {

std::filesystem::path tmp(const std::string& name) { return std::filesystem::temp_directory_path() / ("tfloc_" + name); }

void write_text(const std::filesystem::path& p, const std::string& text) {
    std::ofstream os(p, std::ios::binary);
    os << text;
}

SymbolSpec of_kind(SymbolKind kind, Index L = 64) {
    SymbolSpec s;
    s.kind = kind;
    s.size = L;
    return s;
}

}  // namespace

TEST_CASE("gen_symbol: circle") {
    SymbolSpec s = of_kind(SymbolKind::circle);
    s.radius = 0.0;
    CHECK(gen_symbol(s).cwiseAbs().maxCoeff() == 0.0);
    s.radius = 10.0;
    const PhaseMap f = gen_symbol(s);
    CHECK(f(32, 32) == 1.0);
    CHECK(f(32, 32 + 9) == 1.0);
    CHECK(f(32, 32 + 11) == 0.0);
    CHECK(f(0, 0) == 0.0);
    // Area close to pi r^2.
    CHECK(std::abs(f.sum() - std::numbers::pi * 100.0) < 0.05 * std::numbers::pi * 100.0);
}

TEST_CASE("gen_symbol: binary kinds take exactly two values and are deterministic") {
    for (SymbolKind k : {SymbolKind::circle, SymbolKind::star, SymbolKind::tiles, SymbolKind::lines_circles}) {
        SymbolSpec s = of_kind(k);
        s.lo = -0.5;
        s.hi = 0.75;
        const PhaseMap f = gen_symbol(s);
        std::set<double> values(f.data(), f.data() + f.size());
        CHECK(values == std::set<double>{-0.5, 0.75});
        CHECK(gen_symbol(s) == f);
    }
}

TEST_CASE("gen_symbol: gaussians") {
    SymbolSpec s = of_kind(SymbolKind::gaussians);
    s.bumps = {{20.0, 40.0, 3.0, 1.0}};
    const PhaseMap f = gen_symbol(s);
    Index r = 0, c = 0;
    CHECK(f.maxCoeff(&r, &c) == 1.0);
    CHECK(r == 20);
    CHECK(c == 40);
    CHECK(f.minCoeff() >= 0.0);
    const PhaseMap d = gen_symbol(of_kind(SymbolKind::gaussians));
    std::set<double> values(d.data(), d.data() + d.size());
    CHECK(values.size() > 100);
    CHECK(d.maxCoeff() <= 1.0);
}

TEST_CASE("gen_symbol: blur preserves mass and range") {
    const PhaseMap base = gen_symbol(of_kind(SymbolKind::lines_circles));
    const PhaseMap blurred = gen_symbol(of_kind(SymbolKind::blurred_lines_circles));
    CHECK(std::abs(blurred.sum() - base.sum()) <= 1e-8);
    CHECK(blurred.minCoeff() >= 0.0);
    CHECK(blurred.maxCoeff() <= 1.0);
    CHECK(blurred != base);
    SymbolSpec s = of_kind(SymbolKind::star);
    s.blur = 2.5;
    CHECK(std::abs(gen_symbol(s).sum() - gen_symbol(of_kind(SymbolKind::star)).sum()) <= 1e-8);
    CHECK(gaussian_blur(base, 0.0) == base);
}

TEST_CASE("gen_symbol: validation") {
    SymbolSpec s = of_kind(SymbolKind::circle);
    s.lo = -2.0;
    CHECK_THROWS_AS(gen_symbol(s), Error);
    s = of_kind(SymbolKind::circle);
    s.lo = 0.5;
    s.hi = 0.2;
    CHECK_THROWS_AS(gen_symbol(s), Error);
    CHECK_THROWS_AS(gaussian_blur(gen_symbol(of_kind(SymbolKind::circle)), -1.0), Error);
    CHECK_THROWS_AS(gen_symbol(of_kind(SymbolKind::bitmap)), Error);
    CHECK_THROWS_AS(parse_symbol_kind("hexagon"), Error);
    CHECK(parse_symbol_kind("blurred_lines_circles") == SymbolKind::blurred_lines_circles);
}

TEST_CASE("SymbolSpec json round trip") {
    SymbolSpec s = of_kind(SymbolKind::gaussians, 32);
    s.bumps = {{1.0, 2.0, 3.0, 0.5}};
    s.lo = -1.0;
    const SymbolSpec back = SymbolSpec::from_json(s.to_json());
    CHECK(gen_symbol(back) == gen_symbol(s));
    CHECK(back.to_json() == s.to_json());
}

TEST_CASE("pgm: 16-bit round trip within quantization") {
    std::mt19937_64 rng(61);
    const PhaseMap f = oracle::random_symbol(20, rng);
    const auto p = tmp("rt.pgm");
    save_pgm(f, p, 0.0, 1.0);
    const PhaseMap back = load_pgm(p, 0.0, 1.0);
    CHECK(oracle::max_abs_diff(back, f) <= 1.0 / 65535.0);
    // Clamping.
    save_pgm(PhaseMap(PhaseMap::Constant(4, 4, 3.0)), p, 0.0, 1.0);
    CHECK(load_pgm(p).minCoeff() == 1.0);
    std::filesystem::remove(p);
}

TEST_CASE("pgm: ascii, comments, 8-bit, errors") {
    const auto p = tmp("a.pgm");
    write_text(p, "P2\n# comment\n2 2\n255\n0 0\n0 0\n");
    CHECK((load_pgm(p, -0.5, 1.0).array() == -0.5).all());
    write_text(p, "P2 2 2 10 0 5 10 10\n");
    const PhaseMap f = load_pgm(p);
    CHECK(f(0, 1) == 0.5);
    CHECK(f(1, 0) == 1.0);
    write_text(p, std::string("P5 2 2 255\n") + char(0) + char(255) + char(0) + char(255));
    CHECK(load_pgm(p)(1, 1) == 1.0);

    write_text(p, "P2\n3 2\n255\n0 0 0\n0 0 0\n");
    try {
        load_pgm(p);
        FAIL("expected shape error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::shape);
    }
    for (const char* bad : {"P2\nx 2\n255\n", "P7\n2 2\n255\n0 0 0 0\n", "P2\n2 2\n70000\n0 0 0 0\n", "P2\n2 2\n255\n0 0\n"}) {
        write_text(p, bad);
        try {
            load_pgm(p);
            FAIL("expected parse error");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::parse);
        }
    }
    std::filesystem::remove(p);
    CHECK_THROWS_AS(load_pgm(p), Error);
}

TEST_CASE("csv: bit-exact round trip") {
    std::mt19937_64 rng(62);
    PhaseMap f = oracle::random_symbol(9, rng, -1.0, 1.0);
    f(0, 0) = 1e-300;
    f(1, 1) = -0.1;
    const auto p = tmp("rt.csv");
    save_csv(f, p);
    CHECK(load_csv(p) == f);
    CHECK(load_map(p) == f);
    write_text(p, "1,2\n3\n");
    CHECK_THROWS_AS(load_csv(p), Error);
    std::filesystem::remove(p);
}

TEST_CASE("bitmap kind loads a square PGM") {
    const auto p = tmp("bm.pgm");
    write_text(p, "P2 4 4 1 0 0 0 0 0 1 1 0 0 1 1 0 0 0 0 0\n");
    SymbolSpec s = of_kind(SymbolKind::bitmap, 4);
    s.path = p;
    s.lo = -1.0;
    const PhaseMap f = gen_symbol(s);
    CHECK(f(1, 1) == 1.0);
    CHECK(f(0, 0) == -1.0);
    s.size = 8;
    CHECK_THROWS_AS(gen_symbol(s), Error);
    std::filesystem::remove(p);
}
