#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include <json.hpp>

#include "poly.hpp"

namespace mocz {

struct ZeroPair {
    cdouble outer; // bit 1
    cdouble inner; // bit 0
};

struct HuffmanCodebook {
    int K = 0;
    double R = 0.0;
    double eta = 0.0;
    std::vector<ZeroPair> pairs;

    std::size_t signal_length() const { return static_cast<std::size_t>(K) + 1; }
};

struct BitWord {
    std::vector<std::uint8_t> bits;

    std::size_t size() const { return bits.size(); }
    bool operator==(const BitWord&) const = default;

    // bit k (0-based) taken from bit k of value
    static BitWord from_integer(std::uint64_t value, int K)
    {
        BitWord w;
        w.bits.resize(static_cast<std::size_t>(K));
        for (int k = 0; k < K; ++k) w.bits[static_cast<std::size_t>(k)] = static_cast<std::uint8_t>((value >> k) & 1u);
        return w;
    }

    std::uint64_t to_integer() const
    {
        std::uint64_t v = 0;
        for (std::size_t k = 0; k < bits.size(); ++k) v |= static_cast<std::uint64_t>(bits[k] & 1u) << k;
        return v;
    }

    std::string to_string() const
    {
        std::string s;
        for (auto b : bits) s.push_back(b ? '1' : '0');
        return s;
    }

    static BitWord from_string(const std::string& s)
    {
        BitWord w;
        for (char ch : s) {
            if (ch != '0' && ch != '1') fail(ErrorCode::invalid_argument, "bit string must contain only 0/1");
            w.bits.push_back(static_cast<std::uint8_t>(ch == '1'));
        }
        return w;
    }
};

struct Signal {
    cvec coeffs; // x_0 .. x_K
};

inline double optimal_radius(int K, double lambda = 1.0)
{
    if (K < 1 || !(lambda > 0.0)) fail(ErrorCode::invalid_argument, "optimal_radius needs K >= 1, lambda > 0");
    return std::sqrt(1.0 + (2.0 / lambda) * std::sin(std::numbers::pi / K));
}

inline double eta_from_radius(double R, int K)
{
    if (!(R > 1.0) || K < 1) fail(ErrorCode::invalid_argument, "eta_from_radius needs R > 1, K >= 1");
    const double q = std::pow(R, -K);
    return q / (1.0 + q * q);
}

inline HuffmanCodebook build_codebook(int K, double R)
{
    if (K < 1 || K > 63) fail(ErrorCode::invalid_argument, "K must be in 1..63");
    if (!(R > 1.0) || !std::isfinite(R)) fail(ErrorCode::invalid_argument, "R must be finite and > 1");
    HuffmanCodebook cb;
    cb.K = K;
    cb.R = R;
    cb.eta = eta_from_radius(R, K);
    cb.pairs.reserve(static_cast<std::size_t>(K));
    for (int k = 0; k < K; ++k) {
        const double phi = 2.0 * std::numbers::pi * k / K;
        cb.pairs.push_back({std::polar(R, phi), std::polar(1.0 / R, phi)});
    }
    return cb;
}

inline void check_word(const BitWord& m, const HuffmanCodebook& cb)
{
    if (m.size() != static_cast<std::size_t>(cb.K))
        fail(ErrorCode::length_mismatch, "word length " + std::to_string(m.size()) + " != K " + std::to_string(cb.K));
}

inline cvec signal_zeros(const BitWord& m, const HuffmanCodebook& cb)
{
    check_word(m, cb);
    cvec z(static_cast<std::size_t>(cb.K));
    for (std::size_t k = 0; k < z.size(); ++k) z[k] = m.bits[k] ? cb.pairs[k].outer : cb.pairs[k].inner;
    return z;
}

// unit energy, x_K real and positive
inline Signal encode(const BitWord& m, const HuffmanCodebook& cb)
{
    cvec c = vieta_expand({signal_zeros(m, cb), cdouble{1.0, 0.0}});
    const double s = 1.0 / std::sqrt(energy(c));
    for (auto& v : c) v *= s;
    return {std::move(c)};
}

inline ZeroSet codeword_zero_set(const BitWord& m, const HuffmanCodebook& cb)
{
    return {signal_zeros(m, cb), encode(m, cb).coeffs.back()};
}

// Huffman autocorrelation of any codeword: (-eta, 0, ..., 1, ..., 0, -eta)
inline cvec huffman_autocorrelation(const HuffmanCodebook& cb)
{
    cvec a(2 * static_cast<std::size_t>(cb.K) + 1, cdouble{0.0, 0.0});
    a.front() = -cb.eta;
    a.back() = -cb.eta;
    a[static_cast<std::size_t>(cb.K)] = 1.0;
    return a;
}

inline double papr_expected(int K, double R)
{
    if (K < 2 || K % 2 != 0) fail(ErrorCode::invalid_argument, "papr_expected needs even K >= 2");
    if (!(R > 1.0)) fail(ErrorCode::invalid_argument, "R must be > 1");
    return (K + 1) * std::pow((1.0 + 1.0 / (R * R)) / 2.0, K / 2.0) / (std::pow(R, 2.0 * K) + 1.0);
}

// (K+1) E[max(|x_0|^2, |x_K|^2)] by exhaustive enumeration of all 2^K words
inline double papr_enumerated(int K, double R)
{
    if (K < 1 || K > 24) fail(ErrorCode::invalid_argument, "papr_enumerated needs 1 <= K <= 24");
    const auto cb = build_codebook(K, R);
    const std::uint64_t count = std::uint64_t{1} << K;
    double acc = 0.0;
    for (std::uint64_t v = 0; v < count; ++v) {
        const auto x = encode(BitWord::from_integer(v, K), cb).coeffs;
        acc += std::max(std::norm(x.front()), std::norm(x.back()));
    }
    return (K + 1) * acc / static_cast<double>(count);
}

inline nlohmann::json to_json(cdouble z) { return {{"re", z.real()}, {"im", z.imag()}}; }

inline cdouble complex_from_json(const nlohmann::json& j)
{
    return {j.at("re").get<double>(), j.at("im").get<double>()};
}

inline nlohmann::json to_json(const HuffmanCodebook& cb)
{
    nlohmann::json pairs = nlohmann::json::array();
    for (const auto& p : cb.pairs) pairs.push_back({{"outer", to_json(p.outer)}, {"inner", to_json(p.inner)}});
    return {{"K", cb.K}, {"R", cb.R}, {"eta", cb.eta}, {"pairs", pairs}};
}

// rebuilt from (K, R); stored pairs, if present, must agree
inline HuffmanCodebook codebook_from_json(const nlohmann::json& j)
{
    if (!j.is_object() || !j.contains("K") || !j.contains("R"))
        fail(ErrorCode::config_error, "codebook JSON needs K and R");
    auto cb = build_codebook(j.at("K").get<int>(), j.at("R").get<double>());
    if (j.contains("pairs")) {
        const auto& p = j.at("pairs");
        if (p.size() != cb.pairs.size()) fail(ErrorCode::config_error, "codebook pairs size mismatch");
        for (std::size_t k = 0; k < p.size(); ++k) {
            if (std::abs(complex_from_json(p[k].at("outer")) - cb.pairs[k].outer) > 1e-12
                || std::abs(complex_from_json(p[k].at("inner")) - cb.pairs[k].inner) > 1e-12)
                fail(ErrorCode::config_error, "codebook pairs inconsistent with K, R");
        }
    }
    return cb;
}

} // namespace mocz
