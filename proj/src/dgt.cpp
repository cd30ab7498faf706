#include "tfloc/dgt.hpp"

#include "tfloc/fft.hpp"

#include <string>

namespace tfloc {

ComplexPhaseMap dgt(const Signal& psi, const Signal& g) {
    require_same_length(psi, g, "dgt");
    const Index L = psi.size();
    ComplexPhaseMap V(L, L);
    Eigen::VectorXcd prod(L);
    for (Index n = 0; n < L; ++n) {
        for (Index t = 0; t < L; ++t) prod[t] = psi[t] * std::conj(g[wrap(t - n, L)]);
        fft::forward(prod.data(), V.row(n).data(), L);
    }
    return V;
}

Signal dgt_adjoint(const ComplexPhaseMap& coeffs, const Signal& g) {
    const Index L = g.size();
    if (coeffs.rows() != L || coeffs.cols() != L) {
        throw Error(ErrorKind::size_mismatch, "dgt_adjoint: coefficient map must be " + std::to_string(L) + "x" +
                                                  std::to_string(L));
    }
    Signal out = Signal::Zero(L);
    Eigen::VectorXcd row(L);
    for (Index n = 0; n < L; ++n) {
        fft::backward(coeffs.row(n).data(), row.data(), L);
        for (Index t = 0; t < L; ++t) out[t] += g[wrap(t - n, L)] * row[t];
    }
    out /= static_cast<double>(L);
    return out;
}

PhaseMap spectrogram(const Signal& psi, const Signal& g) {
    PhaseMap S = PhaseMap::Zero(psi.size(), psi.size());
    accumulate_spectrogram(psi, g, 1.0, S);
    return S;
}

void accumulate_spectrogram(const Signal& psi, const Signal& g, double weight, PhaseMap& acc) {
    require_same_length(psi, g, "spectrogram");
    const Index L = psi.size();
    if (acc.rows() != L || acc.cols() != L) throw Error(ErrorKind::size_mismatch, "spectrogram: accumulator size");
    Eigen::VectorXcd prod(L), col(L);
    for (Index n = 0; n < L; ++n) {
        for (Index t = 0; t < L; ++t) prod[t] = psi[t] * std::conj(g[wrap(t - n, L)]);
        fft::forward(prod.data(), col.data(), L);
        for (Index m = 0; m < L; ++m) acc(n, m) += weight * std::norm(col[m]);
    }
}

}  // namespace tfloc
