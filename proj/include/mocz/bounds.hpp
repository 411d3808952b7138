#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include <json.hpp>

#include "huffman.hpp"

namespace mocz {

enum class RadiusPolicy {
    clamp,  // R = max(1, max|alpha|), flagged when clamped
    strict, // RadiusBelowOne when max|alpha| < 1
};

struct PerturbationCertificate {
    double delta = 0.0;
    double epsilon = 0.0;
    double dmin = 0.0;
    double R = 0.0;
    double xN_abs = 0.0;
    int order = 0;
    bool radius_clamped = false;
};

inline nlohmann::json to_json(const PerturbationCertificate& c)
{
    return {{"delta", c.delta}, {"epsilon", c.epsilon}, {"dmin", c.dmin}, {"R", c.R},
            {"xN_abs", c.xN_abs}, {"order", c.order}, {"radius_clamped", c.radius_clamped}};
}

inline constexpr int default_theta_grid = 10000;

inline double theta_at(int j, int grid) { return 2.0 * std::numbers::pi * j / (grid - 1); }

// eps = |x_N| delta (dmin - delta)^{N-1} / (sqrt(1+N) (R + delta)^N)
inline double theorem2_epsilon(double xN_abs, double dmin, double R, int N, double delta)
{
    return xN_abs * delta * std::pow(dmin - delta, N - 1) / (std::sqrt(1.0 + N) * std::pow(R + delta, N));
}

inline PerturbationCertificate theorem2_bound(const ZeroSet& zs, double delta, RadiusPolicy policy = RadiusPolicy::clamp)
{
    const int N = static_cast<int>(zs.zeros.size());
    if (N < 2) fail(ErrorCode::invalid_argument, "need at least two zeros");
    PerturbationCertificate c;
    c.order = N;
    c.dmin = min_distance(zs.zeros);
    if (!(delta > 0.0) || !(delta < c.dmin / 2.0)) fail(ErrorCode::delta_too_large, "delta must lie in (0, dmin/2)");
    double rmax = 0.0;
    for (auto a : zs.zeros) rmax = std::max(rmax, std::abs(a));
    if (rmax < 1.0) {
        if (policy == RadiusPolicy::strict) fail(ErrorCode::radius_below_one, "all zeros inside the unit disk");
        c.radius_clamped = true;
    }
    c.R = std::max(1.0, rmax);
    c.delta = delta;
    c.xN_abs = std::abs(zs.leading);
    c.epsilon = theorem2_epsilon(c.xN_abs, c.dmin, c.R, N, delta);
    return c;
}

// sqrt(min_m min_theta |X(z)|^2 / sum_n |z|^{2n}) on the circles |z - alpha_m| = delta
inline double exact_worstcase_bound(const ZeroSet& zs, double delta, int grid = default_theta_grid)
{
    const std::size_t N = zs.zeros.size();
    if (N < 1) fail(ErrorCode::invalid_argument, "need at least one zero");
    if (grid < 3) fail(ErrorCode::invalid_argument, "grid too small");
    const double dmin = N > 1 ? min_distance(zs.zeros) : INFINITY;
    if (!(delta > 0.0) || !(delta < dmin / 2.0)) fail(ErrorCode::delta_too_large, "delta must lie in (0, dmin/2)");
    const double lead = std::abs(zs.leading);
    double best = INFINITY;
    for (const auto am : zs.zeros)
        for (int j = 0; j < grid; ++j) {
            const cdouble z = am + std::polar(delta, theta_at(j, grid));
            double mag2 = lead * lead;
            for (auto a : zs.zeros) mag2 *= std::norm(z - a);
            const double r2 = std::norm(z);
            double den = 0.0, pw = 1.0;
            for (std::size_t n = 0; n <= N; ++n) {
                den += pw;
                pw *= r2;
            }
            best = std::min(best, mag2 / den);
        }
    return std::sqrt(best);
}

// closed form for Huffman BMOCZ with N = 4M zeros
inline double huffman_bmocz_noise_bound(int N, double R, double delta)
{
    if (N % 4 != 0 || N < 12) fail(ErrorCode::domain_error, "need N = 4M with M >= 3");
    if (!(R > 1.0)) fail(ErrorCode::invalid_argument, "R must be > 1");
    const int M = N / 4;
    const double sn = std::sin(std::numbers::pi / N);
    const double half_dmin = sn / R;
    if (!(delta >= 0.0) || !(delta < half_dmin)) fail(ErrorCode::delta_too_large, "delta must lie in [0, dmin/2)");
    if (delta == 0.0) return 0.0;
    const double s2 = std::sin(2.0 * std::numbers::pi / N);
    const double s4 = std::sin(4.0 * std::numbers::pi / N);
    const double q = (s2 - s4 - 2.0 * sn) / (2.0 * (1.0 - s2));
    double prod = 1.0;
    for (int m = 3; m <= M; ++m) prod *= std::pow(static_cast<double>(m), 4);
    const double Rd = R + delta;
    return 1.0 / (std::pow(R, 8.0 * M) + 1.0) * (Rd * Rd - 1.0) / (std::pow(Rd, 8.0 * M) - 1.0)
        * std::pow(R, 2.0 - 4.0 * M) * std::pow(delta, 4) * std::pow(2.0 * sn / R - delta, 4) * prod
        * std::pow(q, 4 * M - 12);
}

// eps <= 1 / (sqrt(1+N) sqrt(R^{-2N}+1) (1/sin(pi/N) + 1)^N)
inline double huffman_noisebound_closed(int N, double R)
{
    return 1.0
        / (std::sqrt(1.0 + N) * std::sqrt(std::pow(R, -2.0 * N) + 1.0)
           * std::pow(1.0 / std::sin(std::numbers::pi / N) + 1.0, N));
}

inline double packing_limit(double R, double dmin)
{
    if (!(R > 1.0) || !(dmin > 0.0)) fail(ErrorCode::invalid_argument, "need R > 1, dmin > 0");
    return std::numbers::pi * (R * R - 1.0 / (R * R)) / (dmin * dmin * std::sqrt(12.0));
}

struct PolygonExtrema {
    double min = 0.0;
    double max = 0.0;
    double argmin_theta = 0.0;
    double argmax_theta = 0.0;
};

// extrema over |z| = delta of prod_n |z - r w^n| (times |z| for the centroid variant)
inline PolygonExtrema polygon_product_extrema(int N, double r, double delta, bool centroid = false)
{
    if (N < 1 || !(r > 0.0) || !(delta > 0.0) || !(delta < r))
        fail(ErrorCode::invalid_argument, "need N >= 1, 0 < delta < r");
    const double rN = std::pow(r, N), dN = std::pow(delta, N);
    PolygonExtrema e{std::abs(rN - dN), rN + dN, 0.0, std::numbers::pi / N};
    if (centroid) {
        e.min *= delta;
        e.max *= delta;
    }
    return e;
}

struct VertexConjectureResult {
    double observed_min = 0.0;
    double conjectured_min = 0.0;
    double argmin_theta = 0.0;
    bool holds = false;
};

// min over theta of prod_n |r + delta e^{i theta} - r w^n| against r^N - (r - delta)^N at theta = pi
inline VertexConjectureResult verify_vertex_conjecture(int N, double r, double delta, int grid = default_theta_grid)
{
    if (N < 2 || !(r > 0.0) || !(delta > 0.0) || delta > r * std::sin(std::numbers::pi / N) * (1.0 + 1e-12))
        fail(ErrorCode::invalid_argument, "need N >= 2, 0 < delta <= r sin(pi/N)");
    if (grid < 3) fail(ErrorCode::invalid_argument, "grid too small");
    std::vector<cdouble> verts(static_cast<std::size_t>(N));
    for (int n = 0; n < N; ++n) verts[static_cast<std::size_t>(n)] = std::polar(r, 2.0 * std::numbers::pi * n / N);
    VertexConjectureResult res;
    res.observed_min = INFINITY;
    for (int j = 0; j < grid; ++j) {
        const double th = theta_at(j, grid);
        const cdouble z = r + std::polar(delta, th);
        double p = 1.0;
        for (auto v : verts) p *= std::abs(z - v);
        if (p < res.observed_min) {
            res.observed_min = p;
            res.argmin_theta = th;
        }
    }
    res.conjectured_min = std::pow(r, N) - std::pow(r - delta, N);
    const double step = 2.0 * std::numbers::pi / (grid - 1);
    res.holds = res.observed_min >= res.conjectured_min - 1e-9 * std::max(1.0, res.conjectured_min)
        && std::abs(res.argmin_theta - std::numbers::pi) <= step * (1.0 + 1e-9);
    return res;
}

struct LemmaResult {
    double lhs = 0.0;         // delta (r^N - delta^N)
    double rhs = 0.0;         // (r^N - (r-delta)^N)(r - delta)
    double ratio = 0.0;       // lhs / rhs
    double limit_ratio = 0.0; // lhs / rhs as delta -> 0, equals 1/N
    bool strict = false;
};

inline LemmaResult centroid_vs_vertex_lemma(int N, double r, double delta)
{
    if (N < 2 || !(r > 0.0) || !(delta > 0.0) || delta > r / 2.0)
        fail(ErrorCode::invalid_argument, "need N >= 2, 0 < delta <= r/2");
    LemmaResult res;
    res.lhs = delta * (std::pow(r, N) - std::pow(delta, N));
    res.rhs = (std::pow(r, N) - std::pow(r - delta, N)) * (r - delta);
    res.ratio = res.lhs / res.rhs;
    res.limit_ratio = 1.0 / N;
    res.strict = res.lhs < res.rhs;
    return res;
}

// lower bound on the vertex-circle product minimum for N = 4M vertices
inline double vertex_lowerbound_huffman(int M, double r, double delta)
{
    if (M < 3) fail(ErrorCode::domain_error, "need M >= 3");
    if (!(r > 0.0)) fail(ErrorCode::invalid_argument, "need r > 0");
    const double sq = std::sin(std::numbers::pi / (4.0 * M));
    if (!(delta >= 0.0) || !(delta < r * sq)) fail(ErrorCode::delta_too_large, "need 0 <= delta < r sin(pi/4M)");
    const double s = std::sin(std::numbers::pi / (2.0 * M));
    const double dt = delta / r;
    double out = delta * (2.0 * r - delta);
    for (int m = 1; m <= M; ++m)
        out *= std::pow(r, 4) * (1.0 + s - 2.0 * dt * (dt + 1.0 + s)) * (2.0 * m - 1.0) * (2.0 * m - 1.0) * sq * sq;
    return out;
}

} // namespace mocz
