#include <gtest/gtest.h>

#include <mocz/poly.hpp>

#include "test_util.hpp"

using namespace mocz;
using testutil::cd;

TEST(Horner, ScalarExample)
{
    const cvec c{1.0, 2.0, 3.0};
    EXPECT_EQ(horner_eval(c, 2.0), cd(17.0, 0.0));
}

TEST(Vieta, ConjugatePairWithLeading)
{
    const cvec c = vieta_expand({{cd(0, 1), cd(0, -1)}, 3.0});
    ASSERT_EQ(c.size(), 3u);
    EXPECT_NEAR(std::abs(c[0] - 3.0), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(c[1]), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(c[2] - 3.0), 0.0, 1e-15);
}

TEST(Vieta, VanishesAtZeros)
{
    std::mt19937_64 g(7);
    for (int trial = 0; trial < 50; ++trial) {
        const auto z = testutil::random_vec(g, 1 + trial % 12);
        const cvec c = vieta_expand({z, cd(0.3, -1.1)});
        for (auto a : z) EXPECT_LT(std::abs(horner_eval(c, a)), 1e-9 * (1.0 + std::pow(std::abs(a), z.size())));
    }
}

// roots spread with pairwise distance >= 0.1 inside |z| <= 2
static cvec spread_roots(std::mt19937_64& g, std::size_t n)
{
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    cvec z;
    while (z.size() < n) {
        const cd c(u(g), u(g));
        if (std::abs(c) > 2.0) continue;
        if (std::all_of(z.begin(), z.end(), [&](cd a) { return std::abs(a - c) >= 0.1; })) z.push_back(c);
    }
    return z;
}

TEST(FindRoots, RoundTripProperty)
{
    std::mt19937_64 g(11);
    for (std::size_t n = 1; n <= 24; ++n)
        for (int rep = 0; rep < 8; ++rep) {
            const auto z = spread_roots(g, n);
            const cvec c = vieta_expand({z, cd(0.7, 0.2)});
            const cvec r = find_roots(c);
            ASSERT_EQ(r.size(), n);
            EXPECT_LT(testutil::match_error(z, r), 1e-8) << "degree " << n;
        }
}

TEST(FindRoots, UnitCircleForwardError)
{
    // zeros on circles of radius 1.3 and 1/1.3, all within the spec forward-error bound
    cvec z;
    for (int k = 0; k < 16; ++k) z.push_back(std::polar(k % 2 ? 1.3 : 1.0 / 1.3, 2.0 * std::numbers::pi * k / 16));
    const cvec c = vieta_expand({z, 1.0});
    const double cmax = max_abs(c);
    for (auto r : find_roots(c)) EXPECT_LE(std::abs(horner_eval(c, r)), 1e-9 * cmax);
}

TEST(FindRoots, LeadingScaleInvariance)
{
    std::mt19937_64 g(3);
    const auto z = spread_roots(g, 9);
    const cvec a = vieta_expand({z, 1.0});
    cvec b = a;
    for (auto& v : b) v *= cd(-250.0, 13.0);
    EXPECT_LT(testutil::match_error(find_roots(a), find_roots(b)), 1e-9);
}

TEST(FindRoots, DegenerateLeadingRaises)
{
    const cvec c{1.0, 2.0, 1e-20};
    try {
        find_roots(c);
        FAIL() << "expected DegenerateLeading";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::degenerate_leading);
    }
}

TEST(FindRoots, ClusteredRootsNeverSilentlyWrong)
{
    cvec z;
    for (int k = 0; k < 20; ++k) z.push_back(0.5 + 1e-3 * std::polar(1.0, 2.0 * std::numbers::pi * k / 20));
    const cvec c = vieta_expand({z, 1.0});
    try {
        const cvec r = find_roots(c);
        const double scale = detail::horner_magnitude(c, 0.501);
        for (auto x : r) EXPECT_LE(std::abs(horner_eval(c, x)), 1e-9 * scale);
        // every root sits in the pseudozero set of the cluster
        for (auto x : r) EXPECT_LT(std::abs(x - 0.5), 0.2);
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::non_convergence);
    }
}

TEST(FindRoots, CauchyBoundContainsRoots)
{
    std::mt19937_64 g(5);
    for (int t = 0; t < 30; ++t) {
        const cvec c = testutil::random_vec(g, 2 + t % 15);
        const double b = cauchy_root_bound(c);
        for (auto r : find_roots(c)) EXPECT_LE(std::abs(r), b * (1 + 1e-12));
    }
}

TEST(Convolve, MatchesProductOfEvaluations)
{
    std::mt19937_64 g(9);
    for (int t = 0; t < 20; ++t) {
        const cvec a = testutil::random_vec(g, 1 + t % 7), b = testutil::random_vec(g, 1 + t % 5);
        const cvec c = linear_convolve(a, b);
        ASSERT_EQ(c.size(), a.size() + b.size() - 1);
        for (cd z : {cd(0.3, 0.9), cd(-1.2, 0.1), cd(0.0, -0.7)})
            EXPECT_LT(std::abs(horner_eval(c, z) - horner_eval(a, z) * horner_eval(b, z)), 1e-10);
    }
}

TEST(Dft, MatchesNaiveSum)
{
    std::mt19937_64 g(21);
    for (std::size_t n : {1u, 2u, 5u, 8u, 12u, 16u, 31u, 64u}) {
        const cvec x = testutil::random_vec(g, n);
        for (std::size_t M : {n, n + 3, 2 * n}) EXPECT_LT(testutil::max_abs_diff(dft(x, M), testutil::naive_dft(x, M)), 1e-12) << n << " " << M;
    }
}

TEST(Dft, InverseAndParseval)
{
    std::mt19937_64 g(22);
    for (std::size_t n : {3u, 8u, 17u, 32u}) {
        const cvec x = testutil::random_vec(g, n);
        const cvec X = dft(x);
        EXPECT_NEAR(energy(X), energy(x), 1e-11);
        EXPECT_LT(testutil::max_abs_diff(inverse_dft(X), x), 1e-12);
    }
}

TEST(Dft, ConvolutionTheorem)
{
    std::mt19937_64 g(23);
    for (int t = 0; t < 10; ++t) {
        const cvec a = testutil::random_vec(g, 3 + t), b = testutil::random_vec(g, 2 + t % 4);
        const std::size_t M = a.size() + b.size() - 1 + static_cast<std::size_t>(t % 3);
        const cvec lhs = dft(linear_convolve(a, b), M);
        const cvec A = dft(a, M), B = dft(b, M);
        for (std::size_t k = 0; k < M; ++k) EXPECT_LT(std::abs(lhs[k] - std::sqrt(double(M)) * A[k] * B[k]), 1e-10);
    }
}

TEST(Autocorrelation, UnitCircleMagnitudeSquared)
{
    std::mt19937_64 g(24);
    for (int t = 0; t < 10; ++t) {
        const cvec x = testutil::random_vec(g, 2 + t);
        const cvec a = autocorrelation(x);
        ASSERT_EQ(a.size(), 2 * x.size() - 1);
        const int K = static_cast<int>(x.size()) - 1;
        for (double th : {0.0, 0.4, 1.7, 3.1, 5.5}) {
            const cd z = std::polar(1.0, th);
            const cd val = horner_eval(a, z) * std::pow(z, -K);
            EXPECT_NEAR(val.real(), std::norm(horner_eval(x, z)), 1e-10);
            EXPECT_NEAR(val.imag(), 0.0, 1e-10);
        }
    }
}
