#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <span>
#include <vector>

#include "error.hpp"

namespace mocz {

using cdouble = std::complex<double>;
using cvec = std::vector<cdouble>;

// Polynomial zeros plus the leading coefficient that fixes scale and phase.
struct ZeroSet {
    cvec zeros;
    cdouble leading{1.0, 0.0};
};

struct RootOptions {
    int max_iterations = 200;
    double step_tol = 1e-12;
    double tol_root = 1e-9;
    double leading_tol = 1e-12;
};

inline double max_abs(std::span<const cdouble> c)
{
    double m = 0.0;
    for (auto v : c) m = std::max(m, std::abs(v));
    return m;
}

inline double energy(std::span<const cdouble> c)
{
    double e = 0.0;
    for (auto v : c) e += std::norm(v);
    return e;
}

// coefficients ascending: c[0] + c[1] z + ... + c[n] z^n
inline cdouble horner_eval(std::span<const cdouble> c, cdouble z)
{
    cdouble acc{0.0, 0.0};
    for (std::size_t k = c.size(); k-- > 0;) acc = acc * z + c[k];
    return acc;
}

inline cvec vieta_expand(const ZeroSet& zs)
{
    cvec c{1.0};
    c.reserve(zs.zeros.size() + 1);
    for (auto a : zs.zeros) {
        c.push_back(0.0);
        for (std::size_t k = c.size() - 1; k > 0; --k) c[k] = c[k - 1] - a * c[k];
        c[0] = -a * c[0];
    }
    for (auto& v : c) v *= zs.leading;
    return c;
}

namespace detail {

// value and derivative of sum c[k] z^k
inline void horner2(std::span<const cdouble> c, cdouble z, cdouble& p, cdouble& dp)
{
    p = 0.0;
    dp = 0.0;
    for (std::size_t k = c.size(); k-- > 0;) {
        dp = dp * z + p;
        p = p * z + c[k];
    }
}

inline double horner_magnitude(std::span<const cdouble> c, double r)
{
    double acc = 0.0;
    for (std::size_t k = c.size(); k-- > 0;) acc = acc * r + std::abs(c[k]);
    return acc;
}

// Newton ratio p(z)/p'(z); for |z| > 1 evaluated through the reversed polynomial
inline cdouble newton_ratio(std::span<const cdouble> c, std::span<const cdouble> rev, cdouble z, bool& exact)
{
    const double n = static_cast<double>(c.size() - 1);
    exact = false;
    if (std::abs(z) <= 1.0) {
        cdouble p, dp;
        horner2(c, z, p, dp);
        if (p == 0.0) {
            exact = true;
            return 0.0;
        }
        return p / dp;
    }
    const cdouble w = 1.0 / z;
    cdouble q, dq;
    horner2(rev, w, q, dq);
    if (q == 0.0) {
        exact = true;
        return 0.0;
    }
    // p'/p = n/z - w^2 q'(w)/q(w)
    return 1.0 / (n * w - w * w * dq / q);
}

} // namespace detail

// Aberth-Ehrlich simultaneous iteration. Throws on degenerate leading
// coefficient or when the iteration cap is hit without meeting the
// forward-error contract.
inline cvec find_roots(std::span<const cdouble> c, const RootOptions& opt = {})
{
    if (c.size() < 2) fail(ErrorCode::invalid_argument, "find_roots needs degree >= 1");
    for (auto v : c)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            fail(ErrorCode::invalid_argument, "non-finite coefficient");
    const double cmax = max_abs(c);
    const std::size_t n = c.size() - 1;
    if (!(std::abs(c[n]) > opt.leading_tol * cmax))
        fail(ErrorCode::degenerate_leading, "leading coefficient below threshold");

    cvec rev(c.rbegin(), c.rend());

    double cauchy = 0.0;
    for (std::size_t k = 0; k < n; ++k) cauchy = std::max(cauchy, std::abs(c[k] / c[n]));
    const double rho = 1.0 + cauchy;

    cvec z(n);
    for (std::size_t k = 0; k < n; ++k)
        z[k] = std::polar(rho, 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n) + 0.4);
    if (n == 1) {
        z[0] = -c[0] / c[1];
        return z;
    }

    constexpr double eps = std::numeric_limits<double>::epsilon();
    std::vector<char> done(n, 0);
    std::size_t remaining = n;
    for (int it = 0; it < opt.max_iterations && remaining > 0; ++it) {
        for (std::size_t i = 0; i < n; ++i) {
            if (done[i]) continue;
            bool exact = false;
            const cdouble ratio = detail::newton_ratio(c, rev, z[i], exact);
            if (exact) {
                done[i] = 1;
                --remaining;
                continue;
            }
            cdouble s{0.0, 0.0};
            for (std::size_t j = 0; j < n; ++j)
                if (j != i) s += 1.0 / (z[i] - z[j]);
            const cdouble corr = ratio / (1.0 - ratio * s);
            z[i] -= corr;
            const double az = std::abs(z[i]);
            bool conv = std::abs(corr) <= opt.step_tol * std::max(1.0, az);
            if (!conv) {
                // residual at rounding level: further steps only chase noise
                const double scale = az <= 1.0 ? detail::horner_magnitude(c, az)
                                               : detail::horner_magnitude(rev, 1.0 / az);
                const cdouble val = az <= 1.0 ? horner_eval(c, z[i]) : horner_eval(rev, 1.0 / z[i]);
                conv = std::abs(val) <= eps * scale;
            }
            if (conv) {
                done[i] = 1;
                --remaining;
            }
        }
    }
    if (remaining > 0) {
        for (std::size_t i = 0; i < n; ++i) {
            const double az = std::abs(z[i]);
            const double scale = az <= 1.0 ? detail::horner_magnitude(c, az)
                                           : detail::horner_magnitude(rev, 1.0 / az);
            const cdouble val = az <= 1.0 ? horner_eval(c, z[i]) : horner_eval(rev, 1.0 / z[i]);
            if (!(std::abs(val) <= opt.tol_root * scale))
                fail(ErrorCode::non_convergence, "Aberth iteration cap reached");
        }
    }
    return z;
}

inline cvec linear_convolve(std::span<const cdouble> a, std::span<const cdouble> b)
{
    if (a.empty() || b.empty()) return {};
    cvec out(a.size() + b.size() - 1, cdouble{0.0, 0.0});
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

// a = x * conj(reverse(x)); lag zero sits at index x.size()-1
inline cvec autocorrelation(std::span<const cdouble> x)
{
    cvec r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = std::conj(x[x.size() - 1 - i]);
    return linear_convolve(x, r);
}

namespace detail {

inline bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// unnormalized transform with kernel e^{sign i 2pi nk/N}
inline cvec raw_dft(std::span<const cdouble> x, std::size_t size, double sign)
{
    cvec a(size, cdouble{0.0, 0.0});
    std::copy_n(x.begin(), std::min(x.size(), size), a.begin());
    if (size <= 1) return a;
    if (is_pow2(size)) {
        for (std::size_t i = 1, j = 0; i < size; ++i) {
            std::size_t bit = size >> 1;
            for (; j & bit; bit >>= 1) j ^= bit;
            j ^= bit;
            if (i < j) std::swap(a[i], a[j]);
        }
        for (std::size_t len = 2; len <= size; len <<= 1) {
            const std::size_t half = len / 2;
            cvec tw(half);
            for (std::size_t k = 0; k < half; ++k)
                tw[k] = std::polar(1.0, sign * 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(len));
            for (std::size_t s = 0; s < size; s += len)
                for (std::size_t k = 0; k < half; ++k) {
                    const cdouble u = a[s + k];
                    const cdouble v = a[s + k + half] * tw[k];
                    a[s + k] = u + v;
                    a[s + k + half] = u - v;
                }
        }
        return a;
    }
    cvec tw(size);
    for (std::size_t k = 0; k < size; ++k)
        tw[k] = std::polar(1.0, sign * 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(size));
    cvec out(size, cdouble{0.0, 0.0});
    for (std::size_t k = 0; k < size; ++k) {
        cdouble acc{0.0, 0.0};
        for (std::size_t m = 0; m < size; ++m) acc += a[m] * tw[(k * m) % size];
        out[k] = acc;
    }
    return out;
}

} // namespace detail

// Unitary DFT, X_k = N^{-1/2} sum_n x_n e^{+i 2pi nk/N}; x is zero-padded to size.
inline cvec dft(std::span<const cdouble> x, std::size_t size = 0)
{
    if (size == 0) size = x.size();
    if (size < x.size()) fail(ErrorCode::invalid_argument, "dft size shorter than input");
    cvec out = detail::raw_dft(x, size, 1.0);
    const double s = 1.0 / std::sqrt(static_cast<double>(size));
    for (auto& v : out) v *= s;
    return out;
}

inline cvec inverse_dft(std::span<const cdouble> x)
{
    cvec out = detail::raw_dft(x, x.size(), -1.0);
    const double s = 1.0 / std::sqrt(static_cast<double>(x.size()));
    for (auto& v : out) v *= s;
    return out;
}

inline double cauchy_root_bound(std::span<const cdouble> c)
{
    if (c.size() < 2) fail(ErrorCode::invalid_argument, "need degree >= 1");
    const std::size_t n = c.size() - 1;
    if (!(std::abs(c[n]) > 1e-12 * max_abs(c))) fail(ErrorCode::degenerate_leading, "leading coefficient below threshold");
    double m = 0.0;
    for (std::size_t k = 0; k < n; ++k) m = std::max(m, std::abs(c[k] / c[n]));
    return 1.0 + m;
}

// smallest pairwise distance between zeros
inline double min_distance(std::span<const cdouble> z)
{
    double d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < z.size(); ++i)
        for (std::size_t j = i + 1; j < z.size(); ++j) d = std::min(d, std::abs(z[i] - z[j]));
    return d;
}

} // namespace mocz
