#pragma once

#include "tfloc/grid.hpp"
#include "tfloc/locop.hpp"
#include "tfloc/types.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace tfloc {

enum class Method { wn, was, wawd, pt, gp };

std::string to_string(Method method);
/// Parses "wn", "was", "wawd", "pt" or "gp"; throws ErrorKind::validation otherwise.
Method parse_method(const std::string& name);

struct RecoveryResult {
    PhaseMap estimate;
    Method method;
    nlohmann::json meta;
};

/// theta(z) = sum_m lambda_m^2 |dgt(h_m, phi)(z)|^2, the limit of the white-noise estimator.
PhaseMap theta(const Spectrum& spectrum, const Signal& phi);

enum class NoiseKind { complex_gaussian, real_gaussian };

/// Realization `index` of the white-noise stream `seed`. Complex noise has independent
/// real and imaginary parts of variance sigma2/2 each; real noise has variance sigma2.
Signal white_noise(Index length, double sigma2, std::uint64_t seed, std::uint64_t index,
                   NoiseKind kind = NoiseKind::complex_gaussian);

struct NoiseAverage {
    PhaseMap rho;       ///< (1/K) sum_k |dgt(A N_k, phi)|^2
    double sigma2_hat;  ///< mean over k and z of |dgt(N_k, phi)|^2
};

NoiseAverage average_observed_spectrogram(const LocOperator& A, const Signal& phi, Index K, double sigma2,
                                          std::uint64_t seed, NoiseKind kind = NoiseKind::complex_gaussian);

/// White-noise probing. The estimate is rho / sigma2_hat, which targets f^2.
RecoveryResult wn_recover(const LocOperator& A, const Signal& phi, Index K, double sigma2, std::uint64_t seed,
                          NoiseKind kind = NoiseKind::complex_gaussian);

/// Weighted accumulated Cohen's class sum_{m<N} lambda_m Q_T(h_m).
RecoveryResult was_recover(const Spectrum& spectrum, const WindowSystem& T, Index N);

/// Weighted accumulated Wigner distribution sum_{m<N} lambda_m W(h_m).
RecoveryResult wawd_recover(const Spectrum& spectrum, Index N);

/// Plane tiling sum_n |dgt(A e_n, phi)|^2 over an orthonormal (possibly partial) family.
RecoveryResult pt_recover(const LocOperator& A, const std::vector<Signal>& basis, const Signal& phi);

/// Rectangular (cyclically wrapping) set of lattice points.
class Region {
public:
    static Region full(Index length);
    /// Points with n in [n0..n1] and m in [m0..m1], inclusive, wrapping when n1 < n0 or m1 < m0.
    static Region rectangle(Index length, LatticePoint first, LatticePoint last);
    static Region from_points(Index length, const std::vector<LatticePoint>& points);

    Index length() const noexcept { return mask_.rows(); }
    bool contains(Index n, Index m) const { return mask_(n, m) != 0; }
    bool row_touched(Index n) const { return mask_.row(n).any(); }
    Index count() const { return mask_.cast<Index>().sum(); }

private:
    explicit Region(Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> mask)
        : mask_(std::move(mask)) {}
    Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> mask_;
};

/// Gabor projection Re <A pi(z) phi, pi(z) phi>. Points outside `region` are NaN.
RecoveryResult gp_recover(const LocOperator& A, const Signal& phi, const std::optional<Region>& region = std::nullopt);

enum class KernelMode { analytic, measured };
enum class KernelPipeline { gp, was };

/// Blurring kernel k with gp(f) = f (*) k. Analytic: (1/L) sum_i s_i |dgt(g_i, phi)|^2.
/// Measured: the estimator's response to the unit Dirac symbol at the origin.
PhaseMap impulse_kernel(const WindowSystem& windows, const Signal& phi, KernelMode mode,
                        KernelPipeline pipeline = KernelPipeline::gp);

struct DeconvolveStats {
    double imag_residue = 0.0;
    Index kept_frequencies = 0;
};

/// Spectral division of est by kernel where |K^| > eps * max |K^|, zero elsewhere.
PhaseMap deconvolve(const PhaseMap& estimate, const PhaseMap& kernel, double eps, DeconvolveStats* stats = nullptr);

/// Cyclic convolution (f (*) k)[z] = sum_w f[w] k[z - w] via 2D FFT.
PhaseMap circular_convolve(const PhaseMap& f, const PhaseMap& k);

/// sum_{m >= N} |lambda_m|.
double tail_mass(const Spectrum& spectrum, Index N);

std::vector<Signal> standard_basis(Index length);
std::vector<Signal> dft_basis(Index length);

}  // namespace tfloc
