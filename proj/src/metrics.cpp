#include "tfloc/metrics.hpp"

#include <cmath>

namespace tfloc {

double rel_l1_error(const PhaseMap& estimate, const PhaseMap& truth) {
    if (estimate.rows() != truth.rows() || estimate.cols() != truth.cols()) {
        throw Error(ErrorKind::size_mismatch, "rel_l1_error: maps differ in size");
    }
    double num = 0.0, den = 0.0;
    for (Index i = 0; i < truth.rows(); ++i) {
        for (Index j = 0; j < truth.cols(); ++j) {
            const double e = estimate(i, j);
            if (std::isnan(e)) continue;
            num += std::abs(e - truth(i, j));
            den += std::abs(truth(i, j));
        }
    }
    if (!(den > 0.0)) throw Error(ErrorKind::validation, "rel_l1_error: truth has zero L1 norm");
    return num / den;
}

double variation(const PhaseMap& f) {
    const Index R = f.rows(), C = f.cols();
    double v = 0.0;
    for (Index n = 0; n < R; ++n) {
        for (Index m = 0; m < C; ++m) {
            const double dn = f((n + 1) % R, m) - f(n, m);
            const double dm = f(n, (m + 1) % C) - f(n, m);
            v += std::hypot(dn, dm);
        }
    }
    return v;
}

double torus_norm(Index n, Index m, Index length) {
    const auto a = static_cast<double>(std::min(wrap(n, length), length - wrap(n, length)));
    const auto b = static_cast<double>(std::min(wrap(m, length), length - wrap(m, length)));
    return std::hypot(a, b);
}

double blur_bound(const PhaseMap& f, const PhaseMap& kernel) {
    if (kernel.rows() != kernel.cols() || f.rows() != kernel.rows() || f.cols() != kernel.cols()) {
        throw Error(ErrorKind::size_mismatch, "blur_bound: maps must be square and equal in size");
    }
    const Index L = kernel.rows();
    double moment = 0.0;
    for (Index n = 0; n < L; ++n) {
        for (Index m = 0; m < L; ++m) moment += torus_norm(n, m, L) * std::abs(kernel(n, m));
    }
    return variation(f) * moment;
}

}  // namespace tfloc
