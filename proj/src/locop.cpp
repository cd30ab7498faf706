#include "tfloc/locop.hpp"

#include "tfloc/fft.hpp"
#include "tfloc/parallel.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <numeric>

namespace tfloc {
namespace {

template <class Map>
void check_symbol(const Map& f, Index L) {
    if (f.rows() != L || f.cols() != L) {
        throw Error(ErrorKind::size_mismatch, "build_locop: symbol must be " + std::to_string(L) + "x" +
                                                  std::to_string(L));
    }
    if (!f.allFinite()) throw Error(ErrorKind::validation, "build_locop: symbol has non-finite entries");
}

// Rows of the symbol transformed along frequency: F[n][d] = sum_m f[n][m] exp(2 pi i m d / L).
ComplexPhaseMap frequency_transform(const ComplexPhaseMap& f) {
    const Index L = f.rows();
    ComplexPhaseMap F(L, L);
    for (Index n = 0; n < L; ++n) fft::backward(f.row(n).data(), F.row(n).data(), L);
    return F;
}

// A[t][s] = (1/L) sum_n g[t-n] conj(g[s-n]) F[n][(t-s) mod L]; only t <= s when hermitian.
Matrix single_window(const ComplexPhaseMap& F, const Signal& g, bool hermitian) {
    const Index L = g.size();
    Matrix A(L, L);
    const double scale = 1.0 / static_cast<double>(L);
    parallel_for(L, [&](Index t) {
        for (Index s = hermitian ? t : 0; s < L; ++s) {
            const Index d = wrap(t - s, L);
            cdouble acc{0.0, 0.0};
            for (Index n = 0; n < L; ++n) acc += g[wrap(t - n, L)] * std::conj(g[wrap(s - n, L)]) * F(n, d);
            A(t, s) = scale * acc;
        }
    });
    if (hermitian) {
        for (Index t = 0; t < L; ++t) {
            A(t, t) = A(t, t).real();
            for (Index s = t + 1; s < L; ++s) A(s, t) = std::conj(A(t, s));
        }
    }
    return A;
}

Matrix assemble(const ComplexPhaseMap& f, const WindowSystem& windows, bool hermitian) {
    const ComplexPhaseMap F = frequency_transform(f);
    const Index L = windows.length();
    Matrix A = Matrix::Zero(L, L);
    for (const auto& term : windows.terms()) A += term.weight * single_window(F, term.window, hermitian);
    return A;
}

std::uint64_t fnv1a(const void* data, std::size_t bytes, std::uint64_t h = 1469598103934665603ULL) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < bytes; ++i) {
        h ^= p[i];
        h *= 1099511628211ULL;
    }
    return h;
}

// Rotates v so its dominant entry is real and positive.
void fix_phase(Eigen::Ref<Eigen::VectorXcd> v) {
    const double peak = v.cwiseAbs().maxCoeff();
    if (!(peak > 0.0)) return;
    for (Index i = 0; i < v.size(); ++i) {
        if (std::abs(v[i]) > (1.0 - 1e-9) * peak) {
            v *= std::conj(v[i]) / std::abs(v[i]);
            return;
        }
    }
}

bool rounded_less(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
    for (Index i = 0; i < a.size(); ++i) {
        const std::array<double, 2> ra{std::round(a[i].real() * 1e9), std::round(a[i].imag() * 1e9)};
        const std::array<double, 2> rb{std::round(b[i].real() * 1e9), std::round(b[i].imag() * 1e9)};
        if (ra != rb) return ra < rb;
    }
    return false;
}

// +1 or -1 with canonical_sign(-H) == -canonical_sign(H) whenever H != 0: the sign of the
// trace, else of the first non-zero entry in storage order.
double canonical_sign(const Matrix& H) {
    double trace = 0.0;
    for (Index i = 0; i < H.rows(); ++i) trace += H(i, i).real();
    if (trace != 0.0) return trace > 0.0 ? 1.0 : -1.0;
    for (Index k = 0; k < H.size(); ++k) {
        const cdouble x = H.data()[k];
        if (x.real() != 0.0) return x.real() > 0.0 ? 1.0 : -1.0;
        if (x.imag() != 0.0) return x.imag() > 0.0 ? 1.0 : -1.0;
    }
    return 1.0;
}

void put_u32(std::ostream& os, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) os.put(static_cast<char>((v >> (8 * i)) & 0xFF));
}

void put_f64(std::ostream& os, double x) {
    const auto bits = std::bit_cast<std::uint64_t>(x);
    for (int i = 0; i < 8; ++i) os.put(static_cast<char>((bits >> (8 * i)) & 0xFF));
}

std::uint64_t get_le(const unsigned char* p, int bytes) {
    std::uint64_t v = 0;
    for (int i = bytes - 1; i >= 0; --i) v = (v << 8) | p[i];
    return v;
}

}  // namespace

LocOperator::LocOperator(Matrix matrix, std::optional<WindowSystem> windows, std::uint64_t symbol_hash,
                         bool real_symbol)
    : matrix_(std::move(matrix)), windows_(std::move(windows)), symbol_hash_(symbol_hash), real_symbol_(real_symbol) {
    if (matrix_.rows() != matrix_.cols()) throw Error(ErrorKind::shape, "operator matrix must be square");
}

LocOperator build_locop(const PhaseMap& symbol, const WindowSystem& windows) {
    check_symbol(symbol, windows.length());
    const ComplexPhaseMap f = symbol.cast<cdouble>();
    return LocOperator(assemble(f, windows, true), windows, symbol_digest(symbol), true);
}

LocOperator build_locop(const ComplexPhaseMap& symbol, const WindowSystem& windows) {
    check_symbol(symbol, windows.length());
    const std::uint64_t h =
        fnv1a(symbol.data(), static_cast<std::size_t>(symbol.size()) * sizeof(cdouble), 0xcbf29ce484222325ULL ^ 1);
    return LocOperator(assemble(symbol, windows, false), windows, h, false);
}

Signal apply(const LocOperator& A, const Signal& psi) {
    if (psi.size() != A.length()) throw Error(ErrorKind::size_mismatch, "apply: signal length does not match operator");
    return A.matrix() * psi;
}

double asymmetry(const Matrix& matrix) { return (matrix - matrix.adjoint()).cwiseAbs().maxCoeff(); }

Spectrum eigendecompose(const LocOperator& A) { return eigendecompose(A.matrix()); }

Spectrum eigendecompose(const Matrix& matrix) {
    if (matrix.rows() != matrix.cols()) throw Error(ErrorKind::shape, "eigendecompose: matrix must be square");
    if (!matrix.allFinite()) throw Error(ErrorKind::validation, "eigendecompose: non-finite matrix entries");
    const Index L = matrix.rows();
    if (L == 0) return {};
    if (asymmetry(matrix) > 1e-6) {
        throw Error(ErrorKind::not_self_adjoint,
                    "eigendecompose: operator is not self-adjoint (complex symbol or invalid window system?)");
    }
    const Matrix H = 0.5 * (matrix + matrix.adjoint());
    // Solve for whichever of H, -H has the canonical sign so that eigendecompose(-A) is
    // exactly the negation of eigendecompose(A).
    const double sign = canonical_sign(H);
    Eigen::SelfAdjointEigenSolver<Matrix> solver(sign * H);
    if (solver.info() != Eigen::Success) throw Error(ErrorKind::no_convergence, "eigendecompose: no convergence");

    Eigen::VectorXd values = solver.eigenvalues();  // ascending
    Matrix vectors = solver.eigenvectors();

    // Re-orthonormalize numerically degenerate clusters.
    for (Index begin = 0; begin < L;) {
        Index end = begin + 1;
        while (end < L && values[end] - values[end - 1] < 1e-8) ++end;
        if (end - begin > 1) {
            std::vector<Signal> cluster;
            for (Index j = begin; j < end; ++j) cluster.emplace_back(vectors.col(j));
            orthonormalize(cluster);
            for (Index j = begin; j < end; ++j) vectors.col(j) = cluster[static_cast<std::size_t>(j - begin)];
        }
        begin = end;
    }
    for (Index j = 0; j < L; ++j) fix_phase(vectors.col(j));

    std::vector<Index> order(static_cast<std::size_t>(L));
    std::iota(order.begin(), order.end(), Index{0});
    std::vector<Eigen::VectorXcd> cols;
    cols.reserve(order.size());
    for (Index j = 0; j < L; ++j) cols.emplace_back(vectors.col(j));
    std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
        const double ma = std::abs(values[a]);
        const double mb = std::abs(values[b]);
        if (ma != mb) return ma > mb;
        if (values[a] != values[b]) return values[a] > values[b];  // ties on |lambda|: sign-relative order
        return rounded_less(cols[static_cast<std::size_t>(a)], cols[static_cast<std::size_t>(b)]);
    });

    Spectrum out;
    out.values.resize(L);
    out.vectors.resize(L, L);
    for (Index j = 0; j < L; ++j) {
        out.values[j] = sign * values[order[static_cast<std::size_t>(j)]];
        out.vectors.col(j) = cols[static_cast<std::size_t>(order[static_cast<std::size_t>(j)])];
    }
    return out;
}

std::uint64_t symbol_digest(const PhaseMap& symbol) {
    const std::uint64_t dims[2] = {static_cast<std::uint64_t>(symbol.rows()), static_cast<std::uint64_t>(symbol.cols())};
    return fnv1a(symbol.data(), static_cast<std::size_t>(symbol.size()) * sizeof(double), fnv1a(dims, sizeof dims));
}

void save_operator(const Matrix& matrix, const std::filesystem::path& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw Error(ErrorKind::io, "save_operator: cannot open " + path.string());
    os.write("LOCOP1\0\0", 8);
    put_u32(os, static_cast<std::uint32_t>(matrix.rows()));
    put_u32(os, 0);
    for (Index r = 0; r < matrix.rows(); ++r) {
        for (Index c = 0; c < matrix.cols(); ++c) {
            put_f64(os, matrix(r, c).real());
            put_f64(os, matrix(r, c).imag());
        }
    }
    if (!os) throw Error(ErrorKind::io, "save_operator: write failed for " + path.string());
}

Matrix load_operator(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw Error(ErrorKind::io, "load_operator: cannot open " + path.string());
    std::array<unsigned char, 16> header{};
    is.read(reinterpret_cast<char*>(header.data()), header.size());
    if (!is || std::memcmp(header.data(), "LOCOP1", 6) != 0) {
        throw Error(ErrorKind::parse, "load_operator: bad magic in " + path.string());
    }
    const auto L = static_cast<Index>(get_le(header.data() + 8, 4));
    Matrix A(L, L);
    std::array<unsigned char, 16> entry{};
    for (Index r = 0; r < L; ++r) {
        for (Index c = 0; c < L; ++c) {
            is.read(reinterpret_cast<char*>(entry.data()), entry.size());
            if (!is) throw Error(ErrorKind::parse, "load_operator: truncated payload in " + path.string());
            A(r, c) = {std::bit_cast<double>(get_le(entry.data(), 8)), std::bit_cast<double>(get_le(entry.data() + 8, 8))};
        }
    }
    return A;
}

}  // namespace tfloc
