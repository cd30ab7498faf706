#include "tfloc/bench.hpp"

#include "tfloc/metrics.hpp"
#include "tfloc/windows.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace tfloc {
namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fixed1(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1f", v);
    return buf;
}

}  // namespace

BenchConfig BenchConfig::from_json(const nlohmann::json& j) {
    const int version = j.value("schema_version", -1);
    if (version != kSchemaVersion) {
        throw Error(ErrorKind::validation, "bench config: schema_version must be " + std::to_string(kSchemaVersion));
    }
    BenchConfig c;
    c.size = j.value("size", c.size);
    c.window = j.value("window", c.window);
    c.recon_window = j.value("recon_window", c.recon_window);
    c.seed = j.value("seed", c.seed);
    c.K = j.value("K", c.K);
    c.sigma2 = j.value("sigma2", c.sigma2);
    c.eigs = j.value("eigs", c.eigs);
    c.basis = j.value("basis", c.basis);
    if (j.contains("methods")) {
        c.methods.clear();
        for (const auto& m : j["methods"]) c.methods.push_back(parse_method(m.get<std::string>()));
    }
    if (j.contains("symbols")) {
        for (const auto& s : j["symbols"]) {
            nlohmann::json spec_json = s;
            if (!spec_json.contains("size")) spec_json["size"] = c.size;
            BenchSymbol sym{s.value("name", s.at("kind").get<std::string>()), SymbolSpec::from_json(spec_json)};
            if (sym.spec.size != c.size) throw Error(ErrorKind::validation, "bench config: symbol size differs from size");
            c.symbols.push_back(std::move(sym));
        }
    }
    if (c.size < 4) throw Error(ErrorKind::invalid_size, "bench config: size must be at least 4");
    if (c.eigs < 0 || c.eigs > c.size) throw Error(ErrorKind::invalid_count, "bench config: eigs must be in 0..size");
    return c;
}

nlohmann::json BenchConfig::to_json() const {
    nlohmann::json methods_json = nlohmann::json::array();
    for (Method m : methods) methods_json.push_back(to_string(m));
    nlohmann::json symbols_json = nlohmann::json::array();
    for (const auto& s : symbols) {
        nlohmann::json sj = s.spec.resolved().to_json();
        sj["name"] = s.name;
        symbols_json.push_back(std::move(sj));
    }
    return {{"schema_version", kSchemaVersion},
            {"size", size},
            {"window", window},
            {"recon_window", recon_window},
            {"seed", seed},
            {"K", K},
            {"sigma2", sigma2},
            {"eigs", eigs == 0 ? size : eigs},
            {"basis", basis},
            {"methods", methods_json},
            {"symbols", symbols_json}};
}

const MethodScore* BenchRow::score(Method m) const {
    for (const auto& s : scores) {
        if (s.method == m) return &s;
    }
    return nullptr;
}

std::vector<BenchSymbol> default_bench_symbols(Index size) {
    std::vector<BenchSymbol> out;
    for (auto [name, kind] : {std::pair{"circle", SymbolKind::circle}, std::pair{"gaussians", SymbolKind::gaussians},
                              std::pair{"star", SymbolKind::star}, std::pair{"tiles", SymbolKind::tiles}}) {
        SymbolSpec s;
        s.kind = kind;
        s.size = size;
        out.push_back({name, s});
    }
    return out;
}

BenchReport bench_all(const BenchConfig& config) {
    BenchReport report;
    report.config = config.to_json();
    if (config.symbols.empty()) return report;

    const Index L = config.size;
    const WindowSystem windows = parse_window_system(config.window, L);
    const Signal phi = parse_window(config.recon_window, L);
    const Index N = config.eigs == 0 ? L : config.eigs;

    for (const auto& sym : config.symbols) {
        const PhaseMap f = gen_symbol(sym.spec);
        const bool is_signed = f.minCoeff() < 0.0;
        const PhaseMap f2 = f.cwiseProduct(f);

        const LocOperator A = build_locop(f, windows);
        const Spectrum spec = eigendecompose(A);

        BenchRow row{sym.name, is_signed, {}, {}};
        const Matrix gram = spec.vectors.adjoint() * spec.vectors;
        row.sanity = {std::abs(spec.values.sum() - f.sum() / static_cast<double>(L)), spec.values.minCoeff(),
                      (gram - Matrix::Identity(L, L)).cwiseAbs().maxCoeff(), tail_mass(spec, N)};

        for (Method method : config.methods) {
            const auto start = std::chrono::steady_clock::now();
            PhaseMap est;
            switch (method) {
                case Method::wn: est = wn_recover(A, phi, config.K, config.sigma2, config.seed).estimate; break;
                case Method::was: est = was_recover(spec, WindowSystem::single(phi), N).estimate; break;
                case Method::wawd: est = wawd_recover(spec, N).estimate; break;
                case Method::pt: est = pt_recover(A, parse_basis(config.basis, L), phi).estimate; break;
                case Method::gp: est = gp_recover(A, phi).estimate; break;
            }
            const double secs = seconds_since(start);
            const bool squared = method == Method::wn || method == Method::pt;
            MethodScore score{method, 0.0, secs, "f", false};
            if (squared && is_signed) {
                score.truth = "f^2";
                score.error_percent = 100.0 * rel_l1_error(est, f2);
            } else if (squared) {
                score.compared_after_sqrt = true;
                score.error_percent = 100.0 * rel_l1_error(est.cwiseMax(0.0).cwiseSqrt(), f);
            } else {
                score.error_percent = 100.0 * rel_l1_error(est, f);
            }
            row.scores.push_back(score);
        }
        report.rows.push_back(std::move(row));
    }
    return report;
}

nlohmann::json BenchReport::to_json() const {
    nlohmann::json rows_json = nlohmann::json::array();
    for (const auto& r : rows) {
        nlohmann::json scores_json = nlohmann::json::array();
        for (const auto& s : r.scores) {
            scores_json.push_back({{"method", to_string(s.method)},
                                   {"error_percent", s.error_percent},
                                   {"error_percent_1dp", fixed1(s.error_percent)},
                                   {"seconds", s.seconds},
                                   {"truth", s.truth},
                                   {"compared_after_sqrt", s.compared_after_sqrt}});
        }
        rows_json.push_back({{"symbol", r.symbol},
                             {"signed", r.signed_symbol},
                             {"eigen_sanity",
                              {{"trace_error", r.sanity.trace_error},
                               {"min_eigenvalue", r.sanity.min_eigenvalue},
                               {"gram_error", r.sanity.gram_error},
                               {"tail_mass", r.sanity.tail_mass}}},
                             {"scores", scores_json}});
    }
    return {{"config", config},
            {"notes",
             "errors are percent of the symbol's L1 norm; WN and PT target f^2 and are compared after an entrywise "
             "square root for non-negative symbols, and against f^2 (flagged) for signed symbols"},
            {"rows", rows_json}};
}

std::string BenchReport::to_text() const {
    std::ostringstream os;
    std::vector<Method> methods;
    if (!rows.empty()) {
        for (const auto& s : rows.front().scores) methods.push_back(s.method);
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%-24s", "symbol");
    os << buf;
    for (Method m : methods) {
        std::snprintf(buf, sizeof buf, "%10s", to_string(m).c_str());
        os << buf;
    }
    os << '\n';
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%-24s", r.symbol.c_str());
        os << buf;
        for (const auto& s : r.scores) {
            const std::string cell = fixed1(s.error_percent) + (s.truth == "f^2" ? "*" : "");
            std::snprintf(buf, sizeof buf, "%10s", cell.c_str());
            os << buf;
        }
        os << '\n';
    }
    bool flagged = false;
    for (const auto& r : rows) {
        for (const auto& s : r.scores) flagged = flagged || s.truth == "f^2";
    }
    if (flagged) os << "* compared against f^2 (signed symbol)\n";
    return os.str();
}

std::string BenchReport::to_csv() const {
    std::ostringstream os;
    os << "symbol,method,error_percent,seconds,truth\n";
    char buf[64];
    for (const auto& r : rows) {
        for (const auto& s : r.scores) {
            std::snprintf(buf, sizeof buf, "%.17g,%.6f", s.error_percent, s.seconds);
            os << r.symbol << ',' << to_string(s.method) << ',' << buf << ',' << s.truth << '\n';
        }
    }
    return os.str();
}

}  // namespace tfloc
