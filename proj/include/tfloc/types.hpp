#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace tfloc {

using cdouble = std::complex<double>;
using Index = Eigen::Index;

/// A discrete time-domain signal of length L.
using Signal = Eigen::VectorXcd;

/// Real phase-space map indexed [n][m] (time shift n, frequency bin m).
/// Row-major so that a fixed-n row is contiguous.
using PhaseMap = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ComplexPhaseMap = Eigen::Matrix<cdouble, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Dense L x L operator matrix.
using Matrix = Eigen::MatrixXcd;

/// A point (n, m) of the discrete torus Z_L x Z_L.
struct LatticePoint {
    Index n = 0;
    Index m = 0;

    friend bool operator==(const LatticePoint&, const LatticePoint&) = default;
};

enum class ErrorKind {
    invalid_size,
    invalid_count,
    size_mismatch,
    validation,
    not_self_adjoint,
    degenerate_kernel,
    no_convergence,
    shape,
    parse,
    io,
};

/// Library error. `is_numerical()` separates numerical failures from input validation.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

    bool is_numerical() const noexcept {
        return kind_ == ErrorKind::not_self_adjoint || kind_ == ErrorKind::degenerate_kernel ||
               kind_ == ErrorKind::no_convergence;
    }

private:
    ErrorKind kind_;
};

inline Index wrap(Index i, Index L) {
    Index r = i % L;
    return r < 0 ? r + L : r;
}

inline void require_same_length(const Signal& a, const Signal& b, const char* where) {
    if (a.size() != b.size()) {
        throw Error(ErrorKind::size_mismatch, std::string(where) + ": length mismatch (" +
                                                  std::to_string(a.size()) + " vs " +
                                                  std::to_string(b.size()) + ")");
    }
}

}  // namespace tfloc
