#include "tfloc/windows.hpp"

#include "tfloc/estimators.hpp"

#include <charconv>

namespace tfloc {
namespace {

long parse_long(const std::string& s, const std::string& context) {
    long v = 0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size()) {
        throw Error(ErrorKind::validation, "cannot parse integer '" + s + "' in " + context);
    }
    return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string::size_type start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        out.push_back(s.substr(start, pos - start));
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    return out;
}

}  // namespace

Signal parse_window(const std::string& text, Index length) {
    if (text == "gauss") return make_gaussian_window(length);
    if (text.rfind("hermite:", 0) == 0) {
        const long k = parse_long(text.substr(8), "window '" + text + "'");
        if (k < 0) throw Error(ErrorKind::validation, "window: hermite order must be non-negative");
        return hermite_system(length, k + 1).back();
    }
    throw Error(ErrorKind::validation, "unknown window '" + text + "' (expected gauss or hermite:k)");
}

WindowSystem parse_window_system(const std::string& text, Index length) {
    std::vector<WindowSystem::Term> terms;
    for (const auto& item : split(text, ',')) {
        const auto star = item.find('*');
        if (star == std::string::npos) {
            terms.push_back({1.0, parse_window(item, length)});
            continue;
        }
        double w = 0.0;
        try {
            std::size_t used = 0;
            w = std::stod(item.substr(0, star), &used);
            if (used != star) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            throw Error(ErrorKind::validation, "window system: bad weight in '" + item + "'");
        }
        terms.push_back({w, parse_window(item.substr(star + 1), length)});
    }
    return WindowSystem(std::move(terms));
}

std::vector<Signal> parse_basis(const std::string& text, Index length) {
    if (text == "standard") return standard_basis(length);
    if (text == "dft") return dft_basis(length);
    if (text.rfind("hermite:", 0) == 0) {
        const std::string rest = text.substr(8);
        const auto at = rest.find('@');
        const long count = parse_long(rest.substr(0, at), "basis '" + text + "'");
        LatticePoint center{};
        if (at != std::string::npos) {
            const auto parts = split(rest.substr(at + 1), ',');
            if (parts.size() != 2) throw Error(ErrorKind::validation, "basis: expected hermite:N@n,m");
            center = {parse_long(parts[0], "basis"), parse_long(parts[1], "basis")};
        }
        return hermite_system(length, count, center);
    }
    throw Error(ErrorKind::validation, "unknown basis '" + text + "' (expected standard|dft|hermite:N@n,m)");
}

}  // namespace tfloc
