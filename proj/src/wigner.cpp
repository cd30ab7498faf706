#include "tfloc/wigner.hpp"

#include "tfloc/dgt.hpp"
#include "tfloc/fft.hpp"

#include <algorithm>
#include <cmath>

namespace tfloc {
namespace {

// Calls sink(n, spectrum) with the DFT over k of the lag product at time n.
template <class Sink>
void wigner_rows(const Signal& psi, Sink&& sink) {
    const Index L = psi.size();
    Eigen::VectorXcd lag(L), spec(L);
    for (Index n = 0; n < L; ++n) {
        for (Index k = 0; k < L; ++k) lag[k] = psi[wrap(n + k, L)] * std::conj(psi[wrap(n - k, L)]);
        fft::forward(lag.data(), spec.data(), L);
        sink(n, spec);
    }
}

}  // namespace

PhaseMap wigner(const Signal& psi) {
    PhaseMap W = PhaseMap::Zero(psi.size(), psi.size());
    accumulate_wigner(psi, 1.0, W);
    return W;
}

void accumulate_wigner(const Signal& psi, double weight, PhaseMap& acc) {
    const Index L = psi.size();
    if (acc.rows() != L || acc.cols() != L) throw Error(ErrorKind::size_mismatch, "wigner: accumulator size");
    // exp(-4 pi i m k / L) is the forward DFT evaluated at bin 2m mod L.
    wigner_rows(psi, [&](Index n, const Eigen::VectorXcd& spec) {
        for (Index m = 0; m < L; ++m) acc(n, m) += weight * spec[(2 * m) % L].real();
    });
}

double wigner_imag_residue(const Signal& psi) {
    double worst = 0.0;
    wigner_rows(psi, [&](Index, const Eigen::VectorXcd& spec) {
        for (Index k = 0; k < spec.size(); ++k) worst = std::max(worst, std::abs(spec[k].imag()));
    });
    return worst;
}

PhaseMap cohen_q(const Signal& psi, const WindowSystem& T) {
    PhaseMap Q = PhaseMap::Zero(psi.size(), psi.size());
    accumulate_cohen_q(psi, T, 1.0, Q);
    return Q;
}

void accumulate_cohen_q(const Signal& psi, const WindowSystem& T, double weight, PhaseMap& acc) {
    for (const auto& term : T.terms()) accumulate_spectrogram(psi, term.window, weight * term.weight, acc);
}

}  // namespace tfloc
