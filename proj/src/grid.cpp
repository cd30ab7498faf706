#include "tfloc/grid.hpp"

#include "tfloc/fft.hpp"

#include <cmath>
#include <numbers>

namespace tfloc {

double norm(const Signal& psi) { return psi.norm(); }

cdouble inner(const Signal& a, const Signal& b) {
    require_same_length(a, b, "inner");
    // Eigen's dot conjugates its first argument.
    return b.dot(a);
}

Signal make_gaussian_window(Index length) {
    if (length < 4) throw Error(ErrorKind::invalid_size, "gaussian window: L must be at least 4");
    const double L = static_cast<double>(length);
    Signal g(length);
    for (Index j = 0; j < length; ++j) {
        double v = 0.0;
        for (int r = -1; r <= 1; ++r) {
            const double x = static_cast<double>(j) - L / 2.0 + r * L;
            v += std::exp(-std::numbers::pi * x * x / L);
        }
        g[j] = v;
    }
    g /= g.norm();
    return g;
}

Signal tf_shift(const Signal& psi, LatticePoint z) {
    const Index L = psi.size();
    const Index n = wrap(z.n, L);
    const Index m = wrap(z.m, L);
    const auto& w = fft::unit_roots(L);
    Signal out(L);
    for (Index t = 0; t < L; ++t) {
        const cdouble v = psi[wrap(t - n, L)];
        out[t] = m == 0 ? v : w[static_cast<std::size_t>((m * t) % L)] * v;
    }
    return out;
}

void orthonormalize(std::vector<Signal>& vectors) {
    for (std::size_t k = 0; k < vectors.size(); ++k) {
        Signal& v = vectors[k];
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t j = 0; j < k; ++j) v -= vectors[j].dot(v) * vectors[j];
        }
        const double nv = v.norm();
        if (!(nv > 0.0)) throw Error(ErrorKind::validation, "orthonormalize: zero vector in family");
        v /= nv;
    }
}

std::vector<Signal> hermite_system(Index length, Index count, LatticePoint center) {
    if (length < 1) throw Error(ErrorKind::invalid_size, "hermite system: L must be positive");
    if (count < 1 || count > length) {
        throw Error(ErrorKind::invalid_count, "hermite system: need 1 <= N <= L");
    }
    const double L = static_cast<double>(length);
    // Normalized Hermite functions in u = sqrt(2 pi) x, i.e. weight exp(-pi x^2):
    //   h_{k+1} = sqrt(2/(k+1)) u h_k - sqrt(k/(k+1)) h_{k-1}.
    std::vector<Signal> family;
    family.reserve(static_cast<std::size_t>(count));
    Eigen::VectorXd prev = Eigen::VectorXd::Zero(length);
    Eigen::VectorXd cur(length);
    Eigen::VectorXd u(length);
    for (Index j = 0; j < length; ++j) {
        const double x = (static_cast<double>(j) - L / 2.0) / std::sqrt(L);
        u[j] = std::sqrt(2.0 * std::numbers::pi) * x;
        cur[j] = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * u[j] * u[j]);
    }
    for (Index k = 0; k < count; ++k) {
        family.emplace_back(cur.cast<cdouble>());
        const double kd = static_cast<double>(k);
        Eigen::VectorXd next = std::sqrt(2.0 / (kd + 1.0)) * u.cwiseProduct(cur) - std::sqrt(kd / (kd + 1.0)) * prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    orthonormalize(family);
    if (center.n != 0 || center.m != 0) {
        for (auto& h : family) h = tf_shift(h, center);
    }
    return family;
}

WindowSystem::WindowSystem(std::vector<Term> terms) : terms_(std::move(terms)) {
    if (terms_.empty()) throw Error(ErrorKind::validation, "window system: no terms");
    const Index L = terms_.front().window.size();
    double total = 0.0;
    for (const auto& t : terms_) {
        if (t.window.size() != L) throw Error(ErrorKind::size_mismatch, "window system: windows differ in length");
        if (!(t.weight >= 0.0) || !std::isfinite(t.weight)) {
            throw Error(ErrorKind::validation, "window system: weights must be finite and non-negative");
        }
        if (!t.window.allFinite()) throw Error(ErrorKind::validation, "window system: non-finite window entry");
        if (std::abs(t.window.norm() - 1.0) > 1e-12) {
            throw Error(ErrorKind::validation, "window system: windows must have unit norm");
        }
        total += t.weight;
    }
    if (std::abs(total - 1.0) > 1e-12) throw Error(ErrorKind::validation, "window system: weights must sum to 1");
}

WindowSystem WindowSystem::single(Signal window) { return WindowSystem({Term{1.0, std::move(window)}}); }

}  // namespace tfloc
