#pragma once

#include <cmath>

#include "huffman.hpp"

namespace mocz {

struct AutocorrEstimate {
    cvec a_h;               // lags -(L-1) .. L-1
    double residual_energy; // energy outside the kept window
};

inline constexpr double spectral_zero_threshold = 1e-6;

// min_k |sum_n a_x[n] e^{i2pi nk/M}| for the zero-padded codeword autocorrelation
inline double huffman_spectrum_floor(const HuffmanCodebook& cb, std::size_t M)
{
    const cvec ax = huffman_autocorrelation(cb);
    const cvec S = dft(ax, M);
    const double s = std::sqrt(static_cast<double>(M));
    double m = INFINITY;
    for (auto v : S) m = std::min(m, s * std::abs(v));
    return m;
}

// Deconvolve a_y = a_x * a_h in the M = 2N-1 point DFT domain and keep 2L-1 lags.
inline AutocorrEstimate estimate_channel_autocorr(std::span<const cdouble> y, const HuffmanCodebook& cb, int L)
{
    const std::size_t N = y.size();
    if (L < 1 || N != static_cast<std::size_t>(cb.K + L))
        fail(ErrorCode::length_mismatch, "received length must equal K + L");
    const std::size_t M = 2 * N - 1;
    const cvec ay = autocorrelation(y);
    const cvec Ay = dft(ay, M);
    const cvec Ax = dft(huffman_autocorrelation(cb), M);
    const double s = std::sqrt(static_cast<double>(M));
    cvec Q(M);
    for (std::size_t k = 0; k < M; ++k) {
        const cdouble denom = s * Ax[k];
        if (!(std::abs(denom) >= spectral_zero_threshold)) fail(ErrorCode::spectral_zero, "codeword spectrum vanishes");
        Q[k] = Ay[k] / denom;
    }
    const cvec q = inverse_dft(Q);
    const std::size_t keep = 2 * static_cast<std::size_t>(L) - 1;
    AutocorrEstimate est{cvec(q.begin(), q.begin() + static_cast<std::ptrdiff_t>(keep)), 0.0};
    for (std::size_t n = keep; n < M; ++n) est.residual_energy += std::norm(q[n]);
    return est;
}

inline double colored_noise_bound(int L, int N, double N0)
{
    return 2.0 * N * N0 * L + N * N0 * N0;
}

inline double noise_amplification(const HuffmanCodebook& cb)
{
    const double f = 1.0 - 2.0 * cb.eta;
    return 1.0 / (f * f);
}

// holds for eta < 1/3, where the amplification factor is at most 9
inline double estimation_mse_bound(const HuffmanCodebook& cb, int N, double N0, int L)
{
    if (!(cb.eta < 1.0 / 3.0)) fail(ErrorCode::eta_too_large, "MSE bound requires eta < 1/3");
    return 18.0 * N * N0 * (N0 + L);
}

} // namespace mocz
