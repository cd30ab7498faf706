#include "tfloc/estimators.hpp"

#include "tfloc/dgt.hpp"
#include "tfloc/fft.hpp"
#include "tfloc/parallel.hpp"
#include "tfloc/rng.hpp"
#include "tfloc/wigner.hpp"

#include <cmath>
#include <limits>

namespace tfloc {
namespace {

void require_unit(const Signal& phi, const char* where) {
    if (!phi.allFinite() || std::abs(phi.norm() - 1.0) > 1e-10) {
        throw Error(ErrorKind::validation, std::string(where) + ": reconstruction window must have unit norm");
    }
}

void require_eig_count(const Spectrum& spectrum, Index N, const char* where) {
    if (N < 1 || N > spectrum.size()) {
        throw Error(ErrorKind::invalid_count, std::string(where) + ": need 1 <= N <= L (got N = " + std::to_string(N) + ")");
    }
}

}  // namespace

std::string to_string(Method method) {
    switch (method) {
        case Method::wn: return "wn";
        case Method::was: return "was";
        case Method::wawd: return "wawd";
        case Method::pt: return "pt";
        case Method::gp: return "gp";
    }
    return "unknown";
}

Method parse_method(const std::string& name) {
    for (Method m : {Method::wn, Method::was, Method::wawd, Method::pt, Method::gp}) {
        if (to_string(m) == name) return m;
    }
    throw Error(ErrorKind::validation, "unknown method '" + name + "' (expected wn|was|wawd|pt|gp)");
}

PhaseMap theta(const Spectrum& spectrum, const Signal& phi) {
    require_unit(phi, "theta");
    const Index L = phi.size();
    return tree_sum(spectrum.size(), L, L, [&](Index m, PhaseMap& acc) {
        const double lambda = spectrum.values[m];
        if (lambda != 0.0) accumulate_spectrogram(spectrum.vector(m), phi, lambda * lambda, acc);
    });
}

Signal white_noise(Index length, double sigma2, std::uint64_t seed, std::uint64_t index, NoiseKind kind) {
    CounterRng rng(seed, index);
    Signal noise(length);
    if (kind == NoiseKind::complex_gaussian) {
        const double scale = std::sqrt(sigma2 / 2.0);
        for (Index t = 0; t < length; ++t) {
            const auto [a, b] = rng.normal_pair();
            noise[t] = {scale * a, scale * b};
        }
    } else {
        const double scale = std::sqrt(sigma2);
        for (Index t = 0; t < length; ++t) noise[t] = scale * rng.normal_pair().first;
    }
    return noise;
}

NoiseAverage average_observed_spectrogram(const LocOperator& A, const Signal& phi, Index K, double sigma2,
                                          std::uint64_t seed, NoiseKind kind) {
    if (K < 1) throw Error(ErrorKind::invalid_count, "white noise: K must be at least 1");
    if (!(sigma2 > 0.0) || !std::isfinite(sigma2)) throw Error(ErrorKind::validation, "white noise: sigma2 must be positive");
    require_same_length(phi, Signal(A.length()), "white noise");
    const Index L = A.length();

    std::vector<double> noise_energy(static_cast<std::size_t>(K));
    PhaseMap rho = tree_sum(K, L, L, [&](Index k, PhaseMap& acc) {
        const Signal noise = white_noise(L, sigma2, seed, static_cast<std::uint64_t>(k), kind);
        accumulate_spectrogram(apply(A, noise), phi, 1.0, acc);
        noise_energy[static_cast<std::size_t>(k)] = spectrogram(noise, phi).sum();
    });
    rho /= static_cast<double>(K);
    double total = 0.0;
    for (double e : noise_energy) total += e;
    return {std::move(rho), total / (static_cast<double>(K) * static_cast<double>(L * L))};
}

RecoveryResult wn_recover(const LocOperator& A, const Signal& phi, Index K, double sigma2, std::uint64_t seed,
                          NoiseKind kind) {
    require_unit(phi, "wn_recover");
    NoiseAverage avg = average_observed_spectrogram(A, phi, K, sigma2, seed, kind);
    RecoveryResult out{avg.rho / avg.sigma2_hat, Method::wn, {}};
    out.meta = {{"K", K},
                {"sigma2", sigma2},
                {"sigma2_hat", avg.sigma2_hat},
                {"seed", seed},
                {"noise", kind == NoiseKind::complex_gaussian ? "complex" : "real"},
                {"target", "f^2"}};
    return out;
}

RecoveryResult was_recover(const Spectrum& spectrum, const WindowSystem& T, Index N) {
    require_eig_count(spectrum, N, "was_recover");
    const Index L = spectrum.vectors.rows();
    if (T.length() != L) throw Error(ErrorKind::size_mismatch, "was_recover: window length does not match operator");
    PhaseMap est = tree_sum(N, L, L, [&](Index m, PhaseMap& acc) {
        accumulate_cohen_q(spectrum.vector(m), T, spectrum.values[m], acc);
    });
    RecoveryResult out{std::move(est), Method::was, {}};
    out.meta = {{"N", N}, {"tail_mass", tail_mass(spectrum, N)}, {"cohen_rank", T.rank()}};
    return out;
}

RecoveryResult wawd_recover(const Spectrum& spectrum, Index N) {
    require_eig_count(spectrum, N, "wawd_recover");
    const Index L = spectrum.vectors.rows();
    PhaseMap est = tree_sum(N, L, L, [&](Index m, PhaseMap& acc) {
        accumulate_wigner(spectrum.vector(m), spectrum.values[m], acc);
    });
    RecoveryResult out{std::move(est), Method::wawd, {}};
    out.meta = {{"N", N}, {"tail_mass", tail_mass(spectrum, N)}, {"odd_length", L % 2 == 1}};
    return out;
}

RecoveryResult pt_recover(const LocOperator& A, const std::vector<Signal>& basis, const Signal& phi) {
    require_unit(phi, "pt_recover");
    const Index L = A.length();
    for (std::size_t i = 0; i < basis.size(); ++i) {
        if (basis[i].size() != L) throw Error(ErrorKind::size_mismatch, "pt_recover: basis element length");
        if (std::abs(basis[i].norm() - 1.0) > 1e-8) throw Error(ErrorKind::validation, "pt_recover: basis element not unit norm");
        for (std::size_t j = 0; j < i; ++j) {
            if (std::abs(basis[j].dot(basis[i])) > 1e-8) {
                throw Error(ErrorKind::validation, "pt_recover: basis elements not orthogonal");
            }
        }
    }
    PhaseMap est = tree_sum(static_cast<Index>(basis.size()), L, L, [&](Index i, PhaseMap& acc) {
        accumulate_spectrogram(apply(A, basis[static_cast<std::size_t>(i)]), phi, 1.0, acc);
    });
    RecoveryResult out{std::move(est), Method::pt, {}};
    out.meta = {{"basis_size", basis.size()}, {"complete", static_cast<Index>(basis.size()) == L}, {"target", "f^2"}};
    return out;
}

Region Region::full(Index length) {
    return Region(Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>::Constant(length, length, true));
}

Region Region::rectangle(Index length, LatticePoint first, LatticePoint last) {
    Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> mask =
        Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>::Constant(length, length, false);
    for (LatticePoint p : {first, last}) {
        if (p.n < 0 || p.m < 0 || p.n >= length || p.m >= length) {
            throw Error(ErrorKind::validation, "region: corner outside the grid");
        }
    }
    const Index rows = wrap(last.n - first.n, length) + 1;
    const Index cols = wrap(last.m - first.m, length) + 1;
    for (Index i = 0; i < rows; ++i) {
        for (Index j = 0; j < cols; ++j) mask(wrap(first.n + i, length), wrap(first.m + j, length)) = true;
    }
    return Region(std::move(mask));
}

Region Region::from_points(Index length, const std::vector<LatticePoint>& points) {
    Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> mask =
        Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>::Constant(length, length, false);
    for (LatticePoint p : points) {
        if (p.n < 0 || p.m < 0 || p.n >= length || p.m >= length) {
            throw Error(ErrorKind::validation, "region: point outside the grid");
        }
        mask(p.n, p.m) = true;
    }
    return Region(std::move(mask));
}

RecoveryResult gp_recover(const LocOperator& A, const Signal& phi, const std::optional<Region>& region) {
    require_unit(phi, "gp_recover");
    const Index L = A.length();
    require_same_length(phi, Signal(L), "gp_recover");
    if (region && region->length() != L) throw Error(ErrorKind::size_mismatch, "gp_recover: region size");
    const Matrix& M = A.matrix();

    PhaseMap est = PhaseMap::Constant(L, L, std::numeric_limits<double>::quiet_NaN());
    double worst_imag = 0.0;
    std::vector<double> row_imag(static_cast<std::size_t>(L), 0.0);
    // For u = T_n phi: <A M_m u, M_m u> = sum_d exp(2 pi i m d / L) c[d],
    // c[d] = sum_t conj(u[t]) A[t][t+d] u[t+d].
    parallel_for(L, [&](Index n) {
        if (region && !region->row_touched(n)) return;
        Eigen::VectorXcd u(L), c(L), values(L);
        for (Index t = 0; t < L; ++t) u[t] = phi[wrap(t - n, L)];
        for (Index d = 0; d < L; ++d) {
            cdouble acc{0.0, 0.0};
            for (Index t = 0; t < L; ++t) {
                const Index s = (t + d) % L;
                acc += std::conj(u[t]) * M(t, s) * u[s];
            }
            c[d] = acc;
        }
        fft::backward(c.data(), values.data(), L);
        double imag = 0.0;
        for (Index m = 0; m < L; ++m) {
            if (region && !region->contains(n, m)) continue;
            est(n, m) = values[m].real();
            imag = std::max(imag, std::abs(values[m].imag()));
        }
        row_imag[static_cast<std::size_t>(n)] = imag;
    });
    for (double v : row_imag) worst_imag = std::max(worst_imag, v);

    RecoveryResult out{std::move(est), Method::gp, {}};
    out.meta = {{"points", region ? region->count() : L * L}, {"max_imag", worst_imag}, {"outside_region", "NaN"}};
    return out;
}

PhaseMap impulse_kernel(const WindowSystem& windows, const Signal& phi, KernelMode mode, KernelPipeline pipeline) {
    require_unit(phi, "impulse_kernel");
    const Index L = windows.length();
    require_same_length(phi, Signal(L), "impulse_kernel");
    if (mode == KernelMode::analytic) {
        PhaseMap k = PhaseMap::Zero(L, L);
        for (const auto& term : windows.terms()) accumulate_spectrogram(term.window, phi, term.weight, k);
        return k / static_cast<double>(L);
    }
    PhaseMap delta = PhaseMap::Zero(L, L);
    delta(0, 0) = 1.0;
    const LocOperator A = build_locop(delta, windows);
    if (pipeline == KernelPipeline::gp) return gp_recover(A, phi).estimate;
    return was_recover(eigendecompose(A), WindowSystem::single(phi), L).estimate;
}

PhaseMap circular_convolve(const PhaseMap& f, const PhaseMap& k) {
    if (f.rows() != k.rows() || f.cols() != k.cols()) throw Error(ErrorKind::size_mismatch, "convolve: size mismatch");
    const ComplexPhaseMap F = fft::forward2d(f.cast<cdouble>());
    const ComplexPhaseMap K = fft::forward2d(k.cast<cdouble>());
    const ComplexPhaseMap prod = F.cwiseProduct(K);
    return fft::backward2d(prod).real() / static_cast<double>(f.size());
}

PhaseMap deconvolve(const PhaseMap& estimate, const PhaseMap& kernel, double eps, DeconvolveStats* stats) {
    if (estimate.rows() != kernel.rows() || estimate.cols() != kernel.cols()) {
        throw Error(ErrorKind::size_mismatch, "deconvolve: estimate and kernel differ in size");
    }
    if (!(eps > 0.0 && eps < 1.0)) throw Error(ErrorKind::validation, "deconvolve: eps must lie in (0, 1)");
    if (!estimate.allFinite() || !kernel.allFinite()) {
        throw Error(ErrorKind::validation, "deconvolve: inputs must be finite (restrict region-limited estimates first)");
    }
    const ComplexPhaseMap E = fft::forward2d(estimate.cast<cdouble>());
    const ComplexPhaseMap K = fft::forward2d(kernel.cast<cdouble>());
    const double peak = K.cwiseAbs().maxCoeff();
    if (!(peak > 0.0)) throw Error(ErrorKind::degenerate_kernel, "deconvolve: kernel is identically zero");
    ComplexPhaseMap Q = ComplexPhaseMap::Zero(E.rows(), E.cols());
    Index kept = 0;
    for (Index i = 0; i < E.rows(); ++i) {
        for (Index j = 0; j < E.cols(); ++j) {
            if (std::abs(K(i, j)) > eps * peak) {
                Q(i, j) = E(i, j) / K(i, j);
                ++kept;
            }
        }
    }
    const ComplexPhaseMap q = fft::backward2d(Q) / static_cast<double>(E.size());
    if (stats) {
        stats->imag_residue = q.imag().cwiseAbs().maxCoeff();
        stats->kept_frequencies = kept;
    }
    return q.real();
}

double tail_mass(const Spectrum& spectrum, Index N) {
    double s = 0.0;
    for (Index m = std::max<Index>(N, 0); m < spectrum.size(); ++m) s += std::abs(spectrum.values[m]);
    return s;
}

std::vector<Signal> standard_basis(Index length) {
    std::vector<Signal> basis;
    basis.reserve(static_cast<std::size_t>(length));
    for (Index i = 0; i < length; ++i) basis.push_back(Signal::Unit(length, i));
    return basis;
}

std::vector<Signal> dft_basis(Index length) {
    std::vector<Signal> basis;
    basis.reserve(static_cast<std::size_t>(length));
    const auto& w = fft::unit_roots(length);
    const double scale = 1.0 / std::sqrt(static_cast<double>(length));
    for (Index k = 0; k < length; ++k) {
        Signal e(length);
        for (Index t = 0; t < length; ++t) e[t] = scale * w[static_cast<std::size_t>((k * t) % length)];
        basis.push_back(std::move(e));
    }
    return basis;
}

}  // namespace tfloc
