#include "cli.hpp"

#include "tfloc/bench.hpp"
#include "tfloc/estimators.hpp"
#include "tfloc/metrics.hpp"
#include "tfloc/parallel.hpp"
#include "tfloc/symbols.hpp"
#include "tfloc/windows.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

namespace tfloc::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Common {
    int threads = 0;
};

struct GenSymbolArgs {
    std::string kind = "circle";
    Index size = 64;
    std::vector<double> range{0.0, 1.0};
    std::vector<double> center;
    double radius = -1.0;
    double inner_ratio = 0.5;
    int points = 5;
    double tile = -1.0;
    double extent = -1.0;
    double blur = -1.0;
    std::vector<std::string> bumps;
    std::string path;
    std::string out;
};

struct RecoverArgs {
    std::string method;
    std::string symbol;
    Index size = 0;
    std::vector<double> range{0.0, 1.0};
    std::string window = "gauss";
    std::string recon_window = "gauss";
    std::string cohen;
    Index K = 200;
    double sigma2 = 1.0;
    std::uint64_t seed = 0;
    std::string noise = "complex";
    Index eigs = 0;
    std::string basis = "standard";
    std::string region;
    bool compress = false;
    std::string save_operator;
    std::string out;
};

struct ImpulseArgs {
    std::string mode = "analytic";
    std::string pipeline = "gp";
    Index size = 64;
    std::string window = "gauss";
    std::string recon_window = "gauss";
    std::string out;
};

struct DeconvolveArgs {
    std::string est;
    std::string kernel;
    double eps = 1e-6;
    std::string out;
};

struct BenchArgs {
    std::string config;
    std::string out;
};

// Output base: "x/est.pgm" and "x/est" both become "x/est".
fs::path output_base(const std::string& out) {
    fs::path p(out);
    const auto ext = p.extension();
    if (ext == ".pgm" || ext == ".csv" || ext == ".json") p.replace_extension();
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    return p;
}

fs::path with_ext(const fs::path& base, const char* ext) {
    fs::path p = base;
    p += ext;
    return p;
}

void write_json(const fs::path& path, const json& j) {
    std::ofstream os(path);
    if (!os) throw Error(ErrorKind::io, "cannot write " + path.string());
    os << j.dump(2) << '\n';
}

std::pair<double, double> finite_range(const PhaseMap& f) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (Index i = 0; i < f.size(); ++i) {
        const double v = f.data()[i];
        if (std::isfinite(v)) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    if (!(lo <= hi)) return {0.0, 1.0};
    if (lo == hi) hi = lo + 1.0;
    return {lo, hi};
}

// Writes base.pgm (scaled to the finite range), base.csv and base.json.
void write_map_outputs(const fs::path& base, const PhaseMap& f, json sidecar) {
    const auto [lo, hi] = finite_range(f);
    save_pgm(f, with_ext(base, ".pgm"), lo, hi);
    save_csv(f, with_ext(base, ".csv"));
    sidecar["pgm_range"] = {lo, hi};
    sidecar["outputs"] = {with_ext(base, ".pgm").string(), with_ext(base, ".csv").string(),
                          with_ext(base, ".json").string()};
    write_json(with_ext(base, ".json"), sidecar);
}

std::vector<Index> parse_ints(const std::string& text, std::size_t count, const char* what) {
    std::vector<Index> v;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            v.push_back(std::stoll(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw Error(ErrorKind::validation, std::string(what) + ": cannot parse '" + text + "'");
        }
    }
    if (v.size() != count) throw Error(ErrorKind::validation, std::string(what) + ": expected " + std::to_string(count) + " integers");
    return v;
}

int cmd_gen_symbol(const GenSymbolArgs& a, std::ostream& out) {
    SymbolSpec s;
    s.kind = parse_symbol_kind(a.kind);
    s.size = a.size;
    s.lo = a.range.at(0);
    s.hi = a.range.at(1);
    if (!a.center.empty()) {
        s.center_n = a.center.at(0);
        s.center_m = a.center.at(1);
    }
    s.radius = a.radius;
    s.inner_ratio = a.inner_ratio;
    s.points = a.points;
    s.tile = a.tile;
    s.extent = a.extent;
    s.blur = a.blur;
    s.path = a.path;
    for (const auto& b : a.bumps) {
        std::stringstream ss(b);
        std::string item;
        std::vector<double> v;
        while (std::getline(ss, item, ',')) v.push_back(std::stod(item));
        if (v.size() < 3 || v.size() > 4) throw Error(ErrorKind::validation, "--bump expects n,m,sigma[,amplitude]");
        s.bumps.push_back({v[0], v[1], v[2], v.size() == 4 ? v[3] : 1.0});
    }
    const SymbolSpec resolved = s.resolved();
    const PhaseMap f = gen_symbol(resolved);

    fs::path target(a.out);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    if (target.extension() == ".csv") {
        save_csv(f, target);
    } else {
        save_pgm(f, target, resolved.lo, resolved.hi);
    }
    fs::path sidecar = target;
    sidecar.replace_extension(".json");
    write_json(sidecar, {{"command", "gen-symbol"}, {"config", resolved.to_json()}, {"output", target.string()}});
    out << "wrote " << target.string() << '\n';
    return kOk;
}

int cmd_recover(const RecoverArgs& a, int threads, std::ostream& out) {
    const auto start = std::chrono::steady_clock::now();
    const Method method = parse_method(a.method);
    PhaseMap f = load_map(a.symbol, a.range.at(0), a.range.at(1));
    if (f.rows() != f.cols()) throw Error(ErrorKind::shape, "symbol must be square");
    const Index L = a.size == 0 ? f.rows() : a.size;
    if (f.rows() != L) {
        throw Error(ErrorKind::shape, "symbol is " + std::to_string(f.rows()) + "x" + std::to_string(f.cols()) +
                                          " but --size is " + std::to_string(L));
    }
    if (a.compress) {
        // Zero the upper half of the frequency axis.
        for (Index n = 0; n < L; ++n) {
            for (Index m = (L + 1) / 2; m < L; ++m) f(n, m) = 0.0;
        }
    }
    const WindowSystem windows = parse_window_system(a.window, L);
    const Signal phi = parse_window(a.recon_window, L);
    const Index N = a.eigs == 0 ? L : a.eigs;
    const LocOperator A = build_locop(f, windows);
    if (!a.save_operator.empty()) save_operator(A.matrix(), a.save_operator);

    json config = {{"method", to_string(method)},
                   {"symbol", a.symbol},
                   {"size", L},
                   {"range", a.range},
                   {"window", a.window},
                   {"recon_window", a.recon_window},
                   {"compress_positive_frequency", a.compress},
                   {"threads", threads}};

    RecoveryResult result{};
    double tail = 0.0;
    switch (method) {
        case Method::wn: {
            if (a.noise != "complex" && a.noise != "real") throw Error(ErrorKind::validation, "--noise must be complex or real");
            config["K"] = a.K;
            config["sigma2"] = a.sigma2;
            config["seed"] = a.seed;
            config["noise"] = a.noise;
            result = wn_recover(A, phi, a.K, a.sigma2, a.seed,
                                a.noise == "real" ? NoiseKind::real_gaussian : NoiseKind::complex_gaussian);
            break;
        }
        case Method::was: {
            const WindowSystem T = a.cohen.empty() ? WindowSystem::single(phi) : parse_window_system(a.cohen, L);
            config["eigs"] = N;
            config["cohen"] = a.cohen.empty() ? a.recon_window : a.cohen;
            const Spectrum spec = eigendecompose(A);
            tail = tail_mass(spec, N);
            result = was_recover(spec, T, N);
            break;
        }
        case Method::wawd: {
            config["eigs"] = N;
            const Spectrum spec = eigendecompose(A);
            tail = tail_mass(spec, N);
            result = wawd_recover(spec, N);
            break;
        }
        case Method::pt:
            config["basis"] = a.basis;
            result = pt_recover(A, parse_basis(a.basis, L), phi);
            break;
        case Method::gp: {
            std::optional<Region> region;
            if (!a.region.empty()) {
                const auto c = parse_ints(a.region, 4, "--region");
                region = Region::rectangle(L, {c[0], c[1]}, {c[2], c[3]});
                config["region"] = c;
            }
            result = gp_recover(A, phi, region);
            break;
        }
    }
    const double runtime = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    json sidecar = {{"command", "recover"},
                    {"config", config},
                    {"meta", result.meta},
                    {"symbol_hash", A.symbol_hash()},
                    {"eigenvalue_tail_mass", tail},
                    {"runtime_seconds", runtime}};
    if (result.meta.contains("sigma2_hat")) sidecar["sigma2_hat"] = result.meta["sigma2_hat"];
    const fs::path base = output_base(a.out);
    write_map_outputs(base, result.estimate, sidecar);
    out << "wrote " << with_ext(base, ".csv").string() << '\n';
    return kOk;
}

int cmd_impulse(const ImpulseArgs& a, std::ostream& out) {
    KernelMode mode;
    if (a.mode == "analytic") {
        mode = KernelMode::analytic;
    } else if (a.mode == "measured") {
        mode = KernelMode::measured;
    } else {
        throw Error(ErrorKind::validation, "--mode must be analytic or measured");
    }
    if (a.pipeline != "gp" && a.pipeline != "was") throw Error(ErrorKind::validation, "--pipeline must be gp or was");
    const WindowSystem windows = parse_window_system(a.window, a.size);
    const Signal phi = parse_window(a.recon_window, a.size);
    const PhaseMap k = impulse_kernel(windows, phi, mode, a.pipeline == "gp" ? KernelPipeline::gp : KernelPipeline::was);
    const fs::path base = output_base(a.out);
    write_map_outputs(base, k,
                      {{"command", "impulse"},
                       {"config",
                        {{"mode", a.mode},
                         {"pipeline", a.pipeline},
                         {"size", a.size},
                         {"window", a.window},
                         {"recon_window", a.recon_window}}},
                       {"kernel_mass", k.sum()}});
    out << "wrote " << with_ext(base, ".csv").string() << '\n';
    return kOk;
}

int cmd_deconvolve(const DeconvolveArgs& a, std::ostream& out) {
    const PhaseMap est = load_map(a.est);
    const PhaseMap kernel = load_map(a.kernel);
    DeconvolveStats stats;
    const PhaseMap d = deconvolve(est, kernel, a.eps, &stats);
    const fs::path base = output_base(a.out);
    write_map_outputs(base, d,
                      {{"command", "deconvolve"},
                       {"config", {{"est", a.est}, {"kernel", a.kernel}, {"eps", a.eps}}},
                       {"imag_residue", stats.imag_residue},
                       {"kept_frequencies", stats.kept_frequencies}});
    out << "wrote " << with_ext(base, ".csv").string() << '\n';
    return kOk;
}

int cmd_bench(const BenchArgs& a, std::ostream& out) {
    std::ifstream is(a.config);
    if (!is) throw Error(ErrorKind::io, "cannot open config " + a.config);
    json j;
    try {
        j = json::parse(is);
    } catch (const json::exception& e) {
        throw Error(ErrorKind::parse, std::string("bench config: ") + e.what());
    }
    const BenchConfig config = BenchConfig::from_json(j);
    const BenchReport report = bench_all(config);
    const fs::path dir(a.out);
    fs::create_directories(dir);
    write_json(dir / "report.json", report.to_json());
    std::ofstream(dir / "report.txt") << report.to_text();
    std::ofstream(dir / "report.csv") << report.to_csv();
    out << report.to_text();
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Time-frequency localization operators: build, probe and recover symbols", "tfloc"};
    app.require_subcommand(1);
    Common common;
    app.add_option("--threads", common.threads, "Worker threads (0 = auto)")->check(CLI::NonNegativeNumber);

    GenSymbolArgs gs;
    auto* gen = app.add_subcommand("gen-symbol", "Write a synthetic symbol");
    gen->add_option("--kind", gs.kind, "circle|gaussians|star|lines_circles|blurred_lines_circles|tiles|bitmap");
    gen->add_option("--size", gs.size, "Grid size L")->required();
    gen->add_option("--range", gs.range, "Value range lo,hi")->delimiter(',')->expected(2);
    gen->add_option("--center", gs.center, "Center n,m")->delimiter(',')->expected(2);
    gen->add_option("--radius", gs.radius, "Circle / star outer radius");
    gen->add_option("--inner-ratio", gs.inner_ratio, "Star inner/outer radius");
    gen->add_option("--points", gs.points, "Star points");
    gen->add_option("--tile", gs.tile, "Tile edge");
    gen->add_option("--extent", gs.extent, "Half width of tiles / lines-and-circles area");
    gen->add_option("--blur", gs.blur, "Gaussian blur std-dev (0 disables)");
    gen->add_option("--bump", gs.bumps, "Gaussian bump n,m,sigma[,amplitude] (repeatable)");
    gen->add_option("--path", gs.path, "Bitmap source (PGM)");
    gen->add_option("--out", gs.out, "Output .pgm or .csv")->required();

    RecoverArgs ra;
    auto* rec = app.add_subcommand("recover", "Build the operator and recover its symbol");
    rec->add_option("--method", ra.method, "wn|was|wawd|pt|gp")->required();
    rec->add_option("--symbol", ra.symbol, "Symbol file (.pgm or .csv)")->required();
    rec->add_option("--size", ra.size, "Grid size L (defaults to the symbol size)");
    rec->add_option("--range", ra.range, "Value range for PGM symbols lo,hi")->delimiter(',')->expected(2);
    rec->add_option("--window", ra.window, "Window system, e.g. gauss or 0.5*gauss,0.5*hermite:1");
    rec->add_option("--recon-window", ra.recon_window, "Reconstruction window phi");
    rec->add_option("--cohen", ra.cohen, "Cohen window system T for was (default: recon window)");
    rec->add_option("--K", ra.K, "White-noise realizations");
    rec->add_option("--sigma2", ra.sigma2, "White-noise variance");
    rec->add_option("--seed", ra.seed, "Random seed");
    rec->add_option("--noise", ra.noise, "complex|real");
    rec->add_option("--eigs", ra.eigs, "Eigenpairs N (0 = L)");
    rec->add_option("--basis", ra.basis, "standard|dft|hermite:N@n,m");
    rec->add_option("--region", ra.region, "GP region n0,m0,n1,m1 (inclusive, wrapping)");
    rec->add_flag("--compress-positive-frequency", ra.compress, "Zero the symbol on the upper frequency half");
    rec->add_option("--save-operator", ra.save_operator, "Binary dump of the operator matrix");
    rec->add_option("--out", ra.out, "Output base path")->required();

    ImpulseArgs ia;
    auto* imp = app.add_subcommand("impulse", "Write the blurring kernel");
    imp->add_option("--mode", ia.mode, "analytic|measured");
    imp->add_option("--pipeline", ia.pipeline, "gp|was (measured mode)");
    imp->add_option("--size", ia.size, "Grid size L");
    imp->add_option("--window", ia.window, "Window system");
    imp->add_option("--recon-window", ia.recon_window, "Reconstruction window");
    imp->add_option("--out", ia.out, "Output base path")->required();

    DeconvolveArgs da;
    auto* dec = app.add_subcommand("deconvolve", "Spectral division of an estimate by a kernel");
    dec->add_option("--est", da.est, "Estimate (.csv or .pgm)")->required();
    dec->add_option("--kernel", da.kernel, "Kernel (.csv or .pgm)")->required();
    dec->add_option("--eps", da.eps, "Relative spectral threshold in (0, 1)");
    dec->add_option("--out", da.out, "Output base path")->required();

    BenchArgs ba;
    auto* bench = app.add_subcommand("bench", "Run every method on every configured symbol");
    bench->add_option("--config", ba.config, "JSON config")->required();
    bench->add_option("--out", ba.out, "Output directory")->required();

    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& s : args) argv.push_back(s.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kValidation;
    }

    try {
        set_max_threads(common.threads);
        if (*gen) return cmd_gen_symbol(gs, out);
        if (*rec) return cmd_recover(ra, common.threads, out);
        if (*imp) return cmd_impulse(ia, out);
        if (*dec) return cmd_deconvolve(da, out);
        if (*bench) return cmd_bench(ba, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return e.is_numerical() ? kNumerical : kValidation;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kValidation;
    }
    return kValidation;
}

}  // namespace tfloc::cli
