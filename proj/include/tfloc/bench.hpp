#pragma once

#include "tfloc/estimators.hpp"
#include "tfloc/symbols.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace tfloc {

struct BenchSymbol {
    std::string name;
    SymbolSpec spec;
};

struct BenchConfig {
    static constexpr int kSchemaVersion = 1;

    Index size = 128;
    std::string window = "gauss";
    std::string recon_window = "gauss";
    std::uint64_t seed = 0;
    Index K = 200;
    double sigma2 = 1.0;
    Index eigs = 0;  ///< 0 means N = L
    std::string basis = "standard";
    std::vector<Method> methods{Method::wn, Method::was, Method::wawd, Method::pt, Method::gp};
    std::vector<BenchSymbol> symbols;

    /// Symbols inherit `size` unless they set their own (which must then agree).
    static BenchConfig from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
};

struct MethodScore {
    Method method;
    double error_percent;
    double seconds;
    std::string truth;       ///< "f" or "f^2"
    bool compared_after_sqrt;
};

/// Spectral diagnostics recorded per symbol.
struct EigenSanity {
    double trace_error;   ///< |sum lambda - (1/L) sum f|
    double min_eigenvalue;
    double gram_error;    ///< max |H^* H - I|
    double tail_mass;
};

struct BenchRow {
    std::string symbol;
    bool signed_symbol;
    EigenSanity sanity;
    std::vector<MethodScore> scores;

    const MethodScore* score(Method m) const;
};

struct BenchReport {
    nlohmann::json config;
    std::vector<BenchRow> rows;

    nlohmann::json to_json() const;
    std::string to_text() const;
    std::string to_csv() const;
};

BenchReport bench_all(const BenchConfig& config);

/// Circle, sum of Gaussians, star and tiles at the given size.
std::vector<BenchSymbol> default_bench_symbols(Index size);

}  // namespace tfloc
