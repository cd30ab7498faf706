#include "tfloc/symbols.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <numbers>
#include <sstream>

namespace tfloc {
namespace {

constexpr SymbolKind kAllKinds[] = {SymbolKind::circle, SymbolKind::gaussians, SymbolKind::star,
                                    SymbolKind::lines_circles, SymbolKind::blurred_lines_circles,
                                    SymbolKind::tiles, SymbolKind::bitmap};

double torus_delta(double a, double b, double L) {
    double d = std::fmod(std::abs(a - b), L);
    return std::min(d, L - d);
}

template <class Pred>
PhaseMap binary_map(Index L, double lo, double hi, Pred&& inside) {
    PhaseMap f(L, L);
    for (Index n = 0; n < L; ++n) {
        for (Index m = 0; m < L; ++m) f(n, m) = inside(static_cast<double>(n), static_cast<double>(m)) ? hi : lo;
    }
    return f;
}

bool in_polygon(double x, double y, const std::vector<std::pair<double, double>>& poly) {
    bool inside = false;
    for (std::size_t i = 0, j = poly.size() - 1; i < poly.size(); j = i++) {
        const auto [xi, yi] = poly[i];
        const auto [xj, yj] = poly[j];
        if ((yi > y) != (yj > y) && x < (xj - xi) * (y - yi) / (yj - yi) + xi) inside = !inside;
    }
    return inside;
}

PhaseMap lines_and_circles(const SymbolSpec& s) {
    const double c_n = s.center_n, c_m = s.center_m, e = s.extent;
    const double r = e / 3.0;
    return binary_map(s.size, s.lo, s.hi, [&](double n, double m) {
        const double dn = n - c_n, dm = m - c_m;
        const bool in_box = std::abs(dn) < e && std::abs(dm) < e;
        // Two bars and a diagonal.
        if (in_box && dn >= -e && dn < -e + 2.0) return true;
        if (in_box && dm >= e - 2.0) return true;
        if (in_box && std::abs(dn + dm) < 1.0) return true;
        // Two rings.
        const double r1 = std::hypot(dn - e / 2.0, dm + e / 2.0);
        const double r2 = std::hypot(dn + e / 3.0, dm - e / 3.0);
        return std::abs(r1 - r) < 1.0 || std::abs(r2 - 0.75 * r) < 1.0;
    });
}

void expect_token(std::istream& is, std::string& tok) {
    tok.clear();
    int ch;
    while ((ch = is.get()) != EOF) {
        if (ch == '#') {
            while ((ch = is.get()) != EOF && ch != '\n') {
            }
            continue;
        }
        if (std::isspace(ch)) {
            if (!tok.empty()) return;
            continue;
        }
        tok.push_back(static_cast<char>(ch));
    }
    if (tok.empty()) throw Error(ErrorKind::parse, "pgm: truncated header");
}

long parse_header_int(std::istream& is) {
    std::string tok;
    expect_token(is, tok);
    if (tok.empty() || !std::all_of(tok.begin(), tok.end(), [](unsigned char c) { return std::isdigit(c); })) {
        throw Error(ErrorKind::parse, "pgm: malformed header field '" + tok + "'");
    }
    return std::stol(tok);
}

}  // namespace

std::string to_string(SymbolKind kind) {
    switch (kind) {
        case SymbolKind::circle: return "circle";
        case SymbolKind::gaussians: return "gaussians";
        case SymbolKind::star: return "star";
        case SymbolKind::lines_circles: return "lines_circles";
        case SymbolKind::blurred_lines_circles: return "blurred_lines_circles";
        case SymbolKind::tiles: return "tiles";
        case SymbolKind::bitmap: return "bitmap";
    }
    return "unknown";
}

SymbolKind parse_symbol_kind(const std::string& name) {
    for (SymbolKind k : kAllKinds) {
        if (to_string(k) == name) return k;
    }
    throw Error(ErrorKind::validation, "unknown symbol kind '" + name + "'");
}

SymbolSpec SymbolSpec::resolved() const {
    SymbolSpec s = *this;
    if (s.size < 4) throw Error(ErrorKind::invalid_size, "symbol: size must be at least 4");
    if (!(s.lo <= s.hi) || s.lo < -1.0 || s.hi > 1.0) {
        throw Error(ErrorKind::validation, "symbol: value range must satisfy -1 <= lo <= hi <= 1");
    }
    const double L = static_cast<double>(s.size);
    if (s.center_n < 0.0) s.center_n = L / 2.0;
    if (s.center_m < 0.0) s.center_m = L / 2.0;
    if (s.radius < 0.0) s.radius = s.kind == SymbolKind::star ? L / 3.0 : L / 4.0;
    if (s.tile < 0.0) s.tile = L / 8.0;
    if (s.extent < 0.0) s.extent = L / 4.0;
    if (s.blur < 0.0) s.blur = s.kind == SymbolKind::blurred_lines_circles ? L / 64.0 : 0.0;
    if (s.kind == SymbolKind::gaussians && s.bumps.empty()) {
        s.bumps = {{s.center_n - L / 8.0, s.center_m - L / 10.0, L / 10.0, 1.0},
                   {s.center_n + L / 10.0, s.center_m + L / 8.0, L / 12.0, 0.8},
                   {s.center_n + L / 6.0, s.center_m - L / 6.0, L / 14.0, 0.6}};
    }
    if (s.points < 2) throw Error(ErrorKind::validation, "symbol: star needs at least 2 points");
    if (s.tile <= 0.0) throw Error(ErrorKind::validation, "symbol: tile size must be positive");
    for (const auto& b : s.bumps) {
        if (!(b.sigma > 0.0)) throw Error(ErrorKind::validation, "symbol: bump sigma must be positive");
    }
    return s;
}

nlohmann::json SymbolSpec::to_json() const {
    nlohmann::json bumps_json = nlohmann::json::array();
    for (const auto& b : bumps) {
        bumps_json.push_back({{"n", b.n}, {"m", b.m}, {"sigma", b.sigma}, {"amplitude", b.amplitude}});
    }
    nlohmann::json j = {{"kind", to_string(kind)},
                        {"size", size},
                        {"range", {lo, hi}},
                        {"center", {center_n, center_m}},
                        {"radius", radius},
                        {"inner_ratio", inner_ratio},
                        {"points", points},
                        {"tile", tile},
                        {"extent", extent},
                        {"blur", blur},
                        {"bumps", bumps_json}};
    if (!path.empty()) j["path"] = path.string();
    return j;
}

SymbolSpec SymbolSpec::from_json(const nlohmann::json& j) {
    SymbolSpec s;
    s.kind = parse_symbol_kind(j.at("kind").get<std::string>());
    s.size = j.value("size", s.size);
    if (j.contains("range")) {
        s.lo = j["range"].at(0).get<double>();
        s.hi = j["range"].at(1).get<double>();
    }
    if (j.contains("center")) {
        s.center_n = j["center"].at(0).get<double>();
        s.center_m = j["center"].at(1).get<double>();
    }
    s.radius = j.value("radius", s.radius);
    s.inner_ratio = j.value("inner_ratio", s.inner_ratio);
    s.points = j.value("points", s.points);
    s.tile = j.value("tile", s.tile);
    s.extent = j.value("extent", s.extent);
    s.blur = j.value("blur", s.blur);
    if (j.contains("bumps")) {
        for (const auto& b : j["bumps"]) {
            s.bumps.push_back({b.at("n").get<double>(), b.at("m").get<double>(), b.at("sigma").get<double>(),
                               b.value("amplitude", 1.0)});
        }
    }
    if (j.contains("path")) s.path = j["path"].get<std::string>();
    return s;
}

PhaseMap gen_symbol(const SymbolSpec& spec) {
    const SymbolSpec s = spec.resolved();
    const Index L = s.size;
    const double Ld = static_cast<double>(L);
    PhaseMap f;
    switch (s.kind) {
        case SymbolKind::circle:
            f = binary_map(L, s.lo, s.hi, [&](double n, double m) {
                return std::hypot(n - s.center_n, m - s.center_m) < s.radius;
            });
            break;
        case SymbolKind::gaussians: {
            f.resize(L, L);
            for (Index n = 0; n < L; ++n) {
                for (Index m = 0; m < L; ++m) {
                    double v = 0.0;
                    for (const auto& b : s.bumps) {
                        const double dn = torus_delta(static_cast<double>(n), b.n, Ld);
                        const double dm = torus_delta(static_cast<double>(m), b.m, Ld);
                        v += b.amplitude * std::exp(-(dn * dn + dm * dm) / (2.0 * b.sigma * b.sigma));
                    }
                    f(n, m) = s.lo + (s.hi - s.lo) * std::clamp(v, 0.0, 1.0);
                }
            }
            break;
        }
        case SymbolKind::star: {
            std::vector<std::pair<double, double>> poly;
            for (int k = 0; k < 2 * s.points; ++k) {
                const double r = k % 2 == 0 ? s.radius : s.radius * s.inner_ratio;
                const double a = std::numbers::pi * k / s.points;
                poly.emplace_back(s.center_n - r * std::cos(a), s.center_m + r * std::sin(a));
            }
            f = binary_map(L, s.lo, s.hi, [&](double n, double m) { return in_polygon(n, m, poly); });
            break;
        }
        case SymbolKind::lines_circles:
        case SymbolKind::blurred_lines_circles:
            f = lines_and_circles(s);
            break;
        case SymbolKind::tiles: {
            const double n0 = s.center_n - s.extent, m0 = s.center_m - s.extent;
            f = binary_map(L, s.lo, s.hi, [&](double n, double m) {
                if (n < n0 || m < m0 || n >= n0 + 2 * s.extent || m >= m0 + 2 * s.extent) return false;
                const auto cell = static_cast<long>(std::floor((n - n0) / s.tile) + std::floor((m - m0) / s.tile));
                return cell % 2 == 0;
            });
            break;
        }
        case SymbolKind::bitmap:
            if (s.path.empty()) throw Error(ErrorKind::validation, "symbol: bitmap kind needs a path");
            f = load_pgm(s.path, s.lo, s.hi);
            if (f.rows() != L) {
                throw Error(ErrorKind::shape, "symbol: bitmap is " + std::to_string(f.rows()) + "x" +
                                                  std::to_string(f.cols()) + ", expected size " + std::to_string(L));
            }
            break;
    }
    if (s.blur > 0.0) f = gaussian_blur(f, s.blur).cwiseMax(s.lo).cwiseMin(s.hi);
    return f;
}

PhaseMap gaussian_blur(const PhaseMap& f, double sigma) {
    if (!(sigma >= 0.0)) throw Error(ErrorKind::validation, "blur: sigma must be non-negative");
    if (sigma == 0.0) return f;
    const Index L = f.rows();
    if (f.cols() != L) throw Error(ErrorKind::shape, "blur: map must be square");
    Eigen::VectorXd k(L);
    for (Index d = 0; d < L; ++d) {
        const double x = static_cast<double>(std::min(d, L - d));
        k[d] = std::exp(-x * x / (2.0 * sigma * sigma));
    }
    k /= k.sum();
    PhaseMap tmp = PhaseMap::Zero(L, L), out = PhaseMap::Zero(L, L);
    for (Index n = 0; n < L; ++n) {
        for (Index m = 0; m < L; ++m) {
            double acc = 0.0;
            for (Index d = 0; d < L; ++d) acc += k[d] * f(n, wrap(m - d, L));
            tmp(n, m) = acc;
        }
    }
    for (Index n = 0; n < L; ++n) {
        for (Index m = 0; m < L; ++m) {
            double acc = 0.0;
            for (Index d = 0; d < L; ++d) acc += k[d] * tmp(wrap(n - d, L), m);
            out(n, m) = acc;
        }
    }
    return out;
}

PhaseMap load_pgm(const std::filesystem::path& path, double lo, double hi) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw Error(ErrorKind::io, "pgm: cannot open " + path.string());
    std::string magic;
    expect_token(is, magic);
    if (magic != "P2" && magic != "P5") throw Error(ErrorKind::parse, "pgm: unsupported magic '" + magic + "'");
    const long width = parse_header_int(is);
    const long height = parse_header_int(is);
    const long maxval = parse_header_int(is);
    if (width <= 0 || height <= 0) throw Error(ErrorKind::parse, "pgm: non-positive dimensions");
    if (maxval <= 0 || maxval > 65535) throw Error(ErrorKind::parse, "pgm: maxval must be in 1..65535");
    if (width != height) {
        throw Error(ErrorKind::shape, "pgm: image must be square (got " + std::to_string(width) + "x" +
                                          std::to_string(height) + ")");
    }
    PhaseMap f(height, width);
    const double scale = (hi - lo) / static_cast<double>(maxval);
    for (long r = 0; r < height; ++r) {
        for (long c = 0; c < width; ++c) {
            long gray = 0;
            if (magic == "P2") {
                gray = parse_header_int(is);
            } else if (maxval < 256) {
                const int b = is.get();
                if (b == EOF) throw Error(ErrorKind::parse, "pgm: truncated pixel data");
                gray = b;
            } else {
                const int b0 = is.get();
                const int b1 = is.get();
                if (b1 == EOF) throw Error(ErrorKind::parse, "pgm: truncated pixel data");
                gray = (b0 << 8) | b1;
            }
            if (gray > maxval) throw Error(ErrorKind::parse, "pgm: pixel exceeds maxval");
            f(r, c) = lo + scale * static_cast<double>(gray);
        }
    }
    return f;
}

void save_pgm(const PhaseMap& map, const std::filesystem::path& path, double lo, double hi) {
    if (!(lo <= hi)) throw Error(ErrorKind::validation, "pgm: invalid value range");
    std::ofstream os(path, std::ios::binary);
    if (!os) throw Error(ErrorKind::io, "pgm: cannot open " + path.string() + " for writing");
    os << "P5\n" << map.cols() << ' ' << map.rows() << "\n65535\n";
    const double span = hi - lo;
    for (Index r = 0; r < map.rows(); ++r) {
        for (Index c = 0; c < map.cols(); ++c) {
            const double v = map(r, c);
            long q = 0;
            if (span > 0.0 && std::isfinite(v)) q = std::lround((std::clamp(v, lo, hi) - lo) / span * 65535.0);
            os.put(static_cast<char>((q >> 8) & 0xFF));
            os.put(static_cast<char>(q & 0xFF));
        }
    }
    if (!os) throw Error(ErrorKind::io, "pgm: write failed for " + path.string());
}

void save_csv(const PhaseMap& map, const std::filesystem::path& path) {
    std::ofstream os(path);
    if (!os) throw Error(ErrorKind::io, "csv: cannot open " + path.string() + " for writing");
    char buf[32];
    for (Index r = 0; r < map.rows(); ++r) {
        for (Index c = 0; c < map.cols(); ++c) {
            std::snprintf(buf, sizeof buf, "%.17g", map(r, c));
            if (c > 0) os << ',';
            os << buf;
        }
        os << '\n';
    }
    if (!os) throw Error(ErrorKind::io, "csv: write failed for " + path.string());
}

PhaseMap load_csv(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw Error(ErrorKind::io, "csv: cannot open " + path.string());
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        const char* p = line.c_str();
        while (true) {
            char* end = nullptr;
            const double v = std::strtod(p, &end);
            if (end == p) throw Error(ErrorKind::parse, "csv: malformed number in " + path.string());
            row.push_back(v);
            p = end;
            if (*p == ',') {
                ++p;
                continue;
            }
            if (*p == '\0' || *p == '\r') break;
            throw Error(ErrorKind::parse, "csv: unexpected character in " + path.string());
        }
        if (!rows.empty() && row.size() != rows.front().size()) throw Error(ErrorKind::shape, "csv: ragged rows");
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw Error(ErrorKind::parse, "csv: empty file " + path.string());
    PhaseMap f(static_cast<Index>(rows.size()), static_cast<Index>(rows.front().size()));
    for (Index r = 0; r < f.rows(); ++r) {
        for (Index c = 0; c < f.cols(); ++c) f(r, c) = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
    }
    return f;
}

PhaseMap load_map(const std::filesystem::path& path, double lo, double hi) {
    if (path.extension() == ".csv") return load_csv(path);
    return load_pgm(path, lo, hi);
}

}  // namespace tfloc
