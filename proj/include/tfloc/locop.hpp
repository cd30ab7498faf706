#pragma once

#include "tfloc/grid.hpp"
#include "tfloc/types.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>

namespace tfloc {

/// Dense matrix of the mixed-state localization operator
///   A = (1/L) sum_z f[z] sum_i s_i (pi(z) g_i)(pi(z) g_i)^*.
class LocOperator {
public:
    LocOperator(Matrix matrix, std::optional<WindowSystem> windows, std::uint64_t symbol_hash, bool real_symbol);

    const Matrix& matrix() const noexcept { return matrix_; }
    Index length() const noexcept { return matrix_.rows(); }
    const std::optional<WindowSystem>& window_system() const noexcept { return windows_; }
    std::uint64_t symbol_hash() const noexcept { return symbol_hash_; }
    bool real_symbol() const noexcept { return real_symbol_; }

private:
    Matrix matrix_;
    std::optional<WindowSystem> windows_;
    std::uint64_t symbol_hash_;
    bool real_symbol_;
};

/// Eigenpairs of a self-adjoint operator. Column m of `vectors` belongs to values[m].
/// Ordered by descending |lambda|, then descending lambda, then the rounded eigenvector.
struct Spectrum {
    Eigen::VectorXd values;
    Matrix vectors;

    Index size() const noexcept { return values.size(); }
    Signal vector(Index m) const { return vectors.col(m); }
};

LocOperator build_locop(const PhaseMap& symbol, const WindowSystem& windows);
LocOperator build_locop(const ComplexPhaseMap& symbol, const WindowSystem& windows);

Signal apply(const LocOperator& A, const Signal& psi);

/// Full spectrum of a Hermitian operator. The matrix is averaged with its adjoint first;
/// an asymmetry above 1e-6 raises ErrorKind::not_self_adjoint.
Spectrum eigendecompose(const LocOperator& A);
Spectrum eigendecompose(const Matrix& matrix);

/// Largest |A - A^*| entry.
double asymmetry(const Matrix& matrix);

/// FNV-1a digest of the raw symbol values.
std::uint64_t symbol_digest(const PhaseMap& symbol);

/// Binary dump: 16-byte header ("LOCOP1", two zero bytes, u32 L, four zero bytes), then
/// row-major (re, im) little-endian float64 pairs.
void save_operator(const Matrix& matrix, const std::filesystem::path& path);
Matrix load_operator(const std::filesystem::path& path);

}  // namespace tfloc
