#include "tfloc/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <utility>

namespace tfloc::fft {
namespace {

struct PlanDeleter {
    void operator()(fftw_plan_s* p) const { fftw_destroy_plan(p); }
};
using PlanHandle = std::unique_ptr<fftw_plan_s, PlanDeleter>;

std::mutex& cache_mutex() {
    static std::mutex m;
    return m;
}

// FFTW planning is not thread-safe; execution through fftw_execute_dft is.
fftw_plan plan_for(Index length, int sign) {
    static std::map<std::pair<Index, int>, PlanHandle> plans;
    std::lock_guard lock(cache_mutex());
    auto key = std::make_pair(length, sign);
    auto it = plans.find(key);
    if (it != plans.end()) return it->second.get();

    std::vector<cdouble> a(static_cast<std::size_t>(length)), b(static_cast<std::size_t>(length));
    // ESTIMATE + UNALIGNED keeps the plan (and therefore the rounding) independent of
    // buffer alignment, so repeated runs are bit-identical.
    fftw_plan p = fftw_plan_dft_1d(static_cast<int>(length), reinterpret_cast<fftw_complex*>(a.data()),
                                   reinterpret_cast<fftw_complex*>(b.data()), sign,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (p == nullptr) throw Error(ErrorKind::invalid_size, "fft: planning failed");
    auto [pos, inserted] = plans.emplace(key, PlanHandle(p));
    return pos->second.get();
}

void run(const cdouble* in, cdouble* out, Index length, int sign) {
    if (length <= 0) return;
    fftw_plan p = plan_for(length, sign);
    if (in == out) {
        std::vector<cdouble> tmp(in, in + length);
        fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(tmp.data()), reinterpret_cast<fftw_complex*>(out));
    } else {
        fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(const_cast<cdouble*>(in)),
                         reinterpret_cast<fftw_complex*>(out));
    }
}

ComplexPhaseMap transform2d(const ComplexPhaseMap& x, int sign) {
    const Index rows = x.rows();
    const Index cols = x.cols();
    ComplexPhaseMap y(rows, cols);
    for (Index r = 0; r < rows; ++r) run(x.row(r).data(), y.row(r).data(), cols, sign);
    Eigen::VectorXcd col(rows), tcol(rows);
    for (Index c = 0; c < cols; ++c) {
        col = y.col(c);
        run(col.data(), tcol.data(), rows, sign);
        y.col(c) = tcol;
    }
    return y;
}

}  // namespace

void forward(const cdouble* in, cdouble* out, Index length) { run(in, out, length, FFTW_FORWARD); }
void backward(const cdouble* in, cdouble* out, Index length) { run(in, out, length, FFTW_BACKWARD); }

Eigen::VectorXcd forward(const Eigen::VectorXcd& x) {
    Eigen::VectorXcd y(x.size());
    forward(x.data(), y.data(), x.size());
    return y;
}

Eigen::VectorXcd backward(const Eigen::VectorXcd& x) {
    Eigen::VectorXcd y(x.size());
    backward(x.data(), y.data(), x.size());
    return y;
}

ComplexPhaseMap forward2d(const ComplexPhaseMap& x) { return transform2d(x, FFTW_FORWARD); }
ComplexPhaseMap backward2d(const ComplexPhaseMap& x) { return transform2d(x, FFTW_BACKWARD); }

const std::vector<cdouble>& unit_roots(Index length) {
    static std::map<Index, std::vector<cdouble>> cache;
    std::lock_guard lock(cache_mutex());
    auto it = cache.find(length);
    if (it != cache.end()) return it->second;
    std::vector<cdouble> w(static_cast<std::size_t>(length));
    for (Index k = 0; k < length; ++k) {
        const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(length);
        w[static_cast<std::size_t>(k)] = {std::cos(angle), std::sin(angle)};
    }
    return cache.emplace(length, std::move(w)).first->second;
}

}  // namespace tfloc::fft
