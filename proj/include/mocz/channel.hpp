#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include <json.hpp>

#include "poly.hpp"

namespace mocz {

enum class Normalization {
    simulation,   // x scaled by sqrt(N), h by 1/sqrt(E||h||^2); rSNR = 1/N0
    unnormalized, // y = x * h + w with E|h_l|^2 = p^l
};

struct ChannelModel {
    int L = 1;
    double p = 1.0;
    double N0 = 0.0;

    double pdp(int l) const { return std::pow(p, l); }

    double expected_energy() const
    {
        double e = 0.0;
        for (int l = 0; l < L; ++l) e += pdp(l);
        return e;
    }

    void validate() const
    {
        if (L < 1) fail(ErrorCode::invalid_argument, "channel length L must be >= 1");
        if (!(p > 0.0 && p <= 1.0)) fail(ErrorCode::invalid_argument, "power decay p must be in (0, 1]");
        if (!(N0 >= 0.0) || !std::isfinite(N0)) fail(ErrorCode::invalid_argument, "N0 must be finite and >= 0");
    }
};

inline nlohmann::json to_json(const ChannelModel& m) { return {{"L", m.L}, {"p", m.p}, {"N0", m.N0}}; }

inline ChannelModel channel_model_from_json(const nlohmann::json& j)
{
    ChannelModel m{j.at("L").get<int>(), j.at("p").get<double>(), j.value("N0", 0.0)};
    m.validate();
    return m;
}

struct ChannelRealization {
    cvec taps;
};

struct ReceivedBlock {
    cvec y;
};

// Independent stream addressed by (seed, stream); draws never depend on
// which thread consumes them.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream)
    {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32),
                          0x4d4f435au};
        engine_.seed(seq);
    }

    // uniform in [0, 1)
    double uniform() { return std::generate_canonical<double, 53>(engine_); }

    bool bit() { return (engine_() >> 63) != 0; }

    std::uint64_t next_u64() { return engine_(); }

    // standard normal via Box-Muller
    double gaussian()
    {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double t = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(t);
        has_spare_ = true;
        return r * std::cos(t);
    }

    // CN(0, var)
    cdouble complex_gaussian(double var = 1.0)
    {
        const double s = std::sqrt(var / 2.0);
        const double re = gaussian();
        const double im = gaussian();
        return {s * re, s * im};
    }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

inline ChannelRealization sample_channel(const ChannelModel& m, RngStream& rng)
{
    m.validate();
    ChannelRealization h;
    h.taps.resize(static_cast<std::size_t>(m.L));
    for (int l = 0; l < m.L; ++l) h.taps[static_cast<std::size_t>(l)] = rng.complex_gaussian(m.pdp(l));
    return h;
}

// noise-free part of the received block under the chosen convention
inline cvec channel_output(std::span<const cdouble> x, const ChannelRealization& h, const ChannelModel& m,
                           Normalization conv = Normalization::simulation)
{
    if (h.taps.size() != static_cast<std::size_t>(m.L)) fail(ErrorCode::length_mismatch, "tap count != L");
    cvec y = linear_convolve(x, h.taps);
    if (conv == Normalization::simulation) {
        const double scale = std::sqrt(static_cast<double>(y.size()) / m.expected_energy());
        for (auto& v : y) v *= scale;
    }
    return y;
}

inline ReceivedBlock transmit(std::span<const cdouble> x, const ChannelRealization& h, const ChannelModel& m,
                              RngStream& rng, Normalization conv = Normalization::simulation)
{
    m.validate();
    ReceivedBlock out{channel_output(x, h, m, conv)};
    if (m.N0 > 0.0)
        for (auto& v : out.y) v += rng.complex_gaussian(m.N0);
    return out;
}

// received SNR for block length N under the chosen convention
inline double rsnr(const ChannelModel& m, int N, Normalization conv = Normalization::simulation)
{
    if (conv == Normalization::simulation) return 1.0 / m.N0;
    return m.expected_energy() / (static_cast<double>(N) * m.N0);
}

inline double ebn0_from_snr(double snr, int K, int N) { return snr * N / K; }

inline double snr_from_ebn0(double ebn0, int K, int N) { return ebn0 * K / N; }

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

inline double linear_to_db(double v) { return 10.0 * std::log10(v); }

} // namespace mocz
