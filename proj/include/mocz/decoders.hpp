#pragma once

#include <cmath>
#include <cstdint>
#include <memory>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include "channel.hpp"
#include "huffman.hpp"

namespace mocz {

enum class DecodeFlag { empty_sector };

struct FlagEntry {
    DecodeFlag flag;
    int bit;
    bool operator==(const FlagEntry&) const = default;
};

struct DecodeResult {
    BitWord word;
    std::vector<double> per_bit_margin;
    std::vector<FlagEntry> flags;
};

enum class DecoderKind { rfmd, ml, dizet, dizet_dft };

inline const char* to_string(DecoderKind d)
{
    switch (d) {
    case DecoderKind::rfmd: return "rfmd";
    case DecoderKind::ml: return "ml";
    case DecoderKind::dizet: return "dizet";
    case DecoderKind::dizet_dft: return "dizet_dft";
    }
    return "?";
}

inline DecoderKind decoder_from_string(const std::string& s)
{
    if (s == "rfmd") return DecoderKind::rfmd;
    if (s == "ml") return DecoderKind::ml;
    if (s == "dizet") return DecoderKind::dizet;
    if (s == "dizet_dft") return DecoderKind::dizet_dft;
    fail(ErrorCode::config_error, "unknown decoder '" + s + "'");
}

// sector of a root: nearest pair phase, boundary ties to the lower index
inline int sector_of(cdouble z, int K)
{
    double phase = std::arg(z);
    if (phase < 0.0) phase += 2.0 * std::numbers::pi;
    const double x = phase * K / (2.0 * std::numbers::pi);
    int k = static_cast<int>(std::ceil(x - 0.5 - 1e-12));
    return ((k % K) + K) % K;
}

inline DecodeResult decode_rfmd(std::span<const cdouble> y, const HuffmanCodebook& cb, const RootOptions& opt = {})
{
    const double ymax = max_abs(y);
    if (!(ymax > 0.0)) fail(ErrorCode::degenerate_leading, "received block is identically zero");
    std::size_t len = y.size();
    while (len > 1 && !(std::abs(y[len - 1]) > opt.leading_tol * ymax)) --len;
    cvec roots;
    if (len > 1) roots = find_roots(y.first(len), opt);

    const std::size_t K = static_cast<std::size_t>(cb.K);
    std::vector<double> d_out(K, INFINITY), d_in(K, INFINITY);
    for (auto z : roots) {
        const auto k = static_cast<std::size_t>(sector_of(z, cb.K));
        d_out[k] = std::min(d_out[k], std::abs(z - cb.pairs[k].outer));
        d_in[k] = std::min(d_in[k], std::abs(z - cb.pairs[k].inner));
    }
    DecodeResult r;
    r.word.bits.resize(K);
    r.per_bit_margin.resize(K);
    for (std::size_t k = 0; k < K; ++k) {
        if (std::isinf(d_out[k])) {
            r.flags.push_back({DecodeFlag::empty_sector, static_cast<int>(k)});
            for (auto z : roots) {
                d_out[k] = std::min(d_out[k], std::abs(z - cb.pairs[k].outer));
                d_in[k] = std::min(d_in[k], std::abs(z - cb.pairs[k].inner));
            }
        }
        const bool one = d_out[k] < d_in[k];
        r.word.bits[k] = one ? 1 : 0;
        r.per_bit_margin[k] = std::isinf(d_out[k]) ? 0.0 : std::abs(d_in[k] - d_out[k]);
    }
    return r;
}

struct MlWeighting {
    int K = 0;
    int L = 0;
    Eigen::MatrixXcd B;
    Eigen::MatrixXcd chol_inv; // L^{-1} with B = L L^*
    bool diagonal = false;
    std::vector<double> inv_diag;
    std::shared_ptr<const std::vector<cvec>> codewords; // all 2^K signals when K <= 16
};

inline constexpr int ml_max_K = 24;

// B = N0 D_p^{-1} + A_L, D_p the effective tap covariance of the convention
inline MlWeighting ml_weighting(const HuffmanCodebook& cb, const ChannelModel& m,
                                Normalization conv = Normalization::simulation)
{
    m.validate();
    const int K = cb.K, L = m.L;
    const cvec a = huffman_autocorrelation(cb);
    const double scale = conv == Normalization::simulation ? (K + L) / m.expected_energy() : 1.0;

    MlWeighting w;
    w.K = K;
    w.L = L;
    w.B = Eigen::MatrixXcd::Zero(L, L);
    for (int i = 0; i < L; ++i)
        for (int j = 0; j < L; ++j) {
            const int idx = K - i + j;
            if (idx >= 0 && idx <= 2 * K) w.B(i, j) = a[static_cast<std::size_t>(idx)];
        }
    for (int l = 0; l < L; ++l) w.B(l, l) += m.N0 / (scale * m.pdp(l));

    if ((w.B - w.B.adjoint()).norm() > 1e-12 * w.B.norm())
        fail(ErrorCode::not_positive_definite, "weighting matrix not Hermitian");
    Eigen::LLT<Eigen::MatrixXcd> llt(w.B);
    if (llt.info() != Eigen::Success) fail(ErrorCode::not_positive_definite, "Cholesky failed");
    const Eigen::MatrixXcd Lf = llt.matrixL();
    for (int l = 0; l < L; ++l)
        if (!(std::abs(Lf(l, l)) > 1e-14)) fail(ErrorCode::not_positive_definite, "singular weighting matrix");
    w.chol_inv = Lf.triangularView<Eigen::Lower>().solve(Eigen::MatrixXcd::Identity(L, L));

    w.diagonal = true;
    for (int i = 0; i < L && w.diagonal; ++i)
        for (int j = 0; j < L; ++j)
            if (i != j && w.B(i, j) != 0.0) {
                w.diagonal = false;
                break;
            }
    w.inv_diag.resize(static_cast<std::size_t>(L));
    for (int l = 0; l < L; ++l) w.inv_diag[static_cast<std::size_t>(l)] = 1.0 / w.B(l, l).real();

    if (K <= 16) {
        auto table = std::make_shared<std::vector<cvec>>();
        const std::uint64_t count = std::uint64_t{1} << K;
        table->reserve(count);
        for (std::uint64_t v = 0; v < count; ++v) table->push_back(encode(BitWord::from_integer(v, K), cb).coeffs);
        w.codewords = std::move(table);
    }
    return w;
}

inline DecodeResult decode_ml(std::span<const cdouble> y, const HuffmanCodebook& cb, const MlWeighting& w)
{
    if (cb.K > ml_max_K) fail(ErrorCode::search_budget_exceeded, "ML enumeration limited to K <= 24");
    if (w.K != cb.K) fail(ErrorCode::length_mismatch, "weighting built for a different K");
    const std::size_t K1 = static_cast<std::size_t>(cb.K) + 1;
    const std::size_t L = static_cast<std::size_t>(w.L);
    if (y.size() != K1 + L - 1) fail(ErrorCode::length_mismatch, "received length != K + L");

    const std::uint64_t count = std::uint64_t{1} << cb.K;
    const std::size_t K = static_cast<std::size_t>(cb.K);
    // best metric per (bit, value)
    std::vector<double> best(2 * K, -INFINITY);
    double top = -INFINITY;
    std::uint64_t arg = 0;

    cvec v(L);
    Eigen::VectorXcd ve(static_cast<Eigen::Index>(L));
    cvec local;
    for (std::uint64_t word = 0; word < count; ++word) {
        const cvec* x;
        if (w.codewords) {
            x = &(*w.codewords)[word];
        } else {
            local = encode(BitWord::from_integer(word, cb.K), cb).coeffs;
            x = &local;
        }
        for (std::size_t l = 0; l < L; ++l) {
            cdouble acc{0.0, 0.0};
            for (std::size_t k = 0; k < K1; ++k) acc += std::conj((*x)[k]) * y[l + k];
            v[l] = acc;
        }
        double metric = 0.0;
        if (w.diagonal) {
            for (std::size_t l = 0; l < L; ++l) metric += std::norm(v[l]) * w.inv_diag[l];
        } else {
            for (std::size_t l = 0; l < L; ++l) ve(static_cast<Eigen::Index>(l)) = v[l];
            metric = (w.chol_inv.triangularView<Eigen::Lower>() * ve).squaredNorm();
        }
        if (metric > top) {
            top = metric;
            arg = word;
        }
        for (std::size_t k = 0; k < K; ++k) {
            double& b = best[2 * k + ((word >> k) & 1u)];
            if (metric > b) b = metric;
        }
    }
    DecodeResult r;
    r.word = BitWord::from_integer(arg, cb.K);
    r.per_bit_margin.resize(K);
    for (std::size_t k = 0; k < K; ++k) {
        const auto bit = (arg >> k) & 1u;
        r.per_bit_margin[k] = best[2 * k + bit] - best[2 * k + (1u - bit)];
    }
    return r;
}

// w(a) = sqrt((1 - |a|^2) / (1 - |a|^{2N})), 1/sqrt(N) on the unit circle
inline double dizet_weight(double abs_alpha, std::size_t N)
{
    const double a2 = abs_alpha * abs_alpha;
    const double n = static_cast<double>(N);
    if (std::abs(a2 - 1.0) < 1e-12) return 1.0 / std::sqrt(n);
    if (a2 < 1.0) return std::sqrt((1.0 - a2) / (1.0 - std::pow(a2, n)));
    return std::sqrt((a2 - 1.0) / (std::pow(a2, n) - 1.0));
}

namespace detail {

inline DecodeResult dizet_decide(const std::vector<double>& y_out, const std::vector<double>& y_in,
                                 const HuffmanCodebook& cb, std::size_t N)
{
    const double w_out = dizet_weight(cb.R, N);
    const double w_in = dizet_weight(1.0 / cb.R, N);
    DecodeResult r;
    const std::size_t K = static_cast<std::size_t>(cb.K);
    r.word.bits.resize(K);
    r.per_bit_margin.resize(K);
    for (std::size_t k = 0; k < K; ++k) {
        const double so = w_out * y_out[k];
        const double si = w_in * y_in[k];
        r.word.bits[k] = so < si ? 1 : 0;
        r.per_bit_margin[k] = std::abs(si - so);
    }
    return r;
}

} // namespace detail

inline DecodeResult decode_dizet(std::span<const cdouble> y, const HuffmanCodebook& cb)
{
    if (y.empty()) fail(ErrorCode::length_mismatch, "empty received block");
    const std::size_t K = static_cast<std::size_t>(cb.K);
    std::vector<double> yo(K), yi(K);
    for (std::size_t k = 0; k < K; ++k) {
        yo[k] = std::abs(horner_eval(y, cb.pairs[k].outer));
        yi[k] = std::abs(horner_eval(y, cb.pairs[k].inner));
    }
    return detail::dizet_decide(yo, yi, cb, y.size());
}

// same decisions as decode_dizet, evaluations read off two zero-padded DFTs
inline DecodeResult decode_dizet_dft(std::span<const cdouble> y, const HuffmanCodebook& cb)
{
    if (y.empty()) fail(ErrorCode::length_mismatch, "empty received block");
    const std::size_t K = static_cast<std::size_t>(cb.K);
    const std::size_t N = y.size();
    const std::size_t t = (N + K - 1) / K;
    const std::size_t Np = K * t;
    cvec up(N), dn(N);
    double ro = 1.0, ri = 1.0;
    for (std::size_t n = 0; n < N; ++n) {
        up[n] = y[n] * ro;
        dn[n] = y[n] * ri;
        ro *= cb.R;
        ri /= cb.R;
    }
    const cvec U = dft(up, Np), D = dft(dn, Np);
    const double s = std::sqrt(static_cast<double>(Np));
    std::vector<double> yo(K), yi(K);
    for (std::size_t k = 0; k < K; ++k) {
        yo[k] = s * std::abs(U[t * k]);
        yi[k] = s * std::abs(D[t * k]);
    }
    return detail::dizet_decide(yo, yi, cb, N);
}

} // namespace mocz
