#include "tfloc/bench.hpp"
#include "tfloc/parallel.hpp"

#include <doctest.h>

using namespace tfloc;

namespace {

BenchConfig small_config(Index L) {
    BenchConfig c;
    c.size = L;
    c.K = 50;
    for (auto& s : default_bench_symbols(L)) {
        if (s.name == "gaussians") c.symbols.push_back(s);
    }
    return c;
}

std::vector<double> errors(const BenchReport& r) {
    std::vector<double> out;
    for (const auto& row : r.rows)
        for (const auto& s : row.scores) out.push_back(s.error_percent);
    return out;
}

}  // namespace

TEST_CASE("bench_all: empty roster") {
    const BenchConfig c = BenchConfig::from_json({{"schema_version", 1}, {"size", 16}});
    const BenchReport r = bench_all(c);
    CHECK(r.rows.empty());
    CHECK(r.to_csv() == "symbol,method,error_percent,seconds,truth\n");
    CHECK(r.to_json()["config"]["size"] == 16);
}

TEST_CASE("bench config validation") {
    CHECK_THROWS_AS(BenchConfig::from_json({{"size", 16}}), Error);
    CHECK_THROWS_AS(BenchConfig::from_json({{"schema_version", 2}}), Error);
    CHECK_THROWS_AS(BenchConfig::from_json({{"schema_version", 1}, {"methods", {"gp", "foo"}}}), Error);
    CHECK_THROWS_AS(BenchConfig::from_json({{"schema_version", 1}, {"size", 16}, {"eigs", 17}}), Error);
    const nlohmann::json j = {{"schema_version", 1},
                              {"size", 32},
                              {"methods", {"gp", "was"}},
                              {"symbols", {{{"kind", "circle"}, {"radius", 5.0}}}}};
    const BenchConfig c = BenchConfig::from_json(j);
    CHECK(c.methods.size() == 2);
    REQUIRE(c.symbols.size() == 1);
    CHECK(c.symbols[0].name == "circle");
    CHECK(BenchConfig::from_json(c.to_json()).to_json() == c.to_json());
}

TEST_CASE("bench_all: gaussians at L = 64") {
    const BenchReport r = bench_all(small_config(64));
    REQUIRE(r.rows.size() == 1);
    const BenchRow& row = r.rows[0];
    CHECK_FALSE(row.signed_symbol);
    CHECK(row.score(Method::gp)->error_percent <= row.score(Method::was)->error_percent + 0.1);
    CHECK(row.score(Method::wawd)->error_percent >= row.score(Method::gp)->error_percent);
    CHECK(row.score(Method::wn)->compared_after_sqrt);
    CHECK(row.score(Method::pt)->truth == "f");
    CHECK(row.sanity.trace_error < 1e-8);
    CHECK(row.sanity.gram_error < 1e-9);
    CHECK(row.sanity.min_eigenvalue >= -1e-10);

    const std::string text = r.to_text();
    CHECK(text.find("gaussians") != std::string::npos);
    char cell[32];
    std::snprintf(cell, sizeof cell, "%.1f", row.score(Method::gp)->error_percent);
    CHECK(text.find(cell) != std::string::npos);
}

TEST_CASE("bench_all: signed symbols compare WN and PT against f^2") {
    BenchConfig c;
    c.size = 32;
    c.K = 10;
    c.methods = {Method::wn, Method::pt, Method::gp};
    SymbolSpec s;
    s.size = 32;
    s.lo = -1.0;
    c.symbols.push_back({"signed-circle", s});
    const BenchReport r = bench_all(c);
    CHECK(r.rows[0].signed_symbol);
    CHECK(r.rows[0].score(Method::wn)->truth == "f^2");
    CHECK(r.rows[0].score(Method::gp)->truth == "f");
    CHECK(r.to_text().find('*') != std::string::npos);
}

TEST_CASE("bench_all is independent of thread count") {
    const BenchConfig c = small_config(32);
    set_max_threads(1);
    const auto a = errors(bench_all(c));
    set_max_threads(4);
    const auto b = errors(bench_all(c));
    set_max_threads(0);
    CHECK(a == b);
}
