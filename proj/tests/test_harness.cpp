#include <gtest/gtest.h>

#include <mocz/harness.hpp>

using namespace mocz;

namespace {

ExperimentConfig small_config()
{
    ExperimentConfig c;
    c.K = 8;
    c.L = 4;
    c.p = 0.9;
    c.snr_grid_db = {0.0, 10.0};
    c.decoders = {"dizet", "rfmd", "ml", "dizet_dft"};
    c.trials_per_point = 300;
    c.batch_trials = 64;
    c.max_bit_errors = 0;
    c.seed = 12345;
    return c;
}

void expect_same_counts(const std::vector<BerCurve>& a, const std::vector<BerCurve>& b)
{
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].name, b[i].name);
        ASSERT_EQ(a[i].points.size(), b[i].points.size());
        for (std::size_t j = 0; j < a[i].points.size(); ++j) {
            EXPECT_EQ(a[i].points[j].bits_sent, b[i].points[j].bits_sent);
            EXPECT_EQ(a[i].points[j].bit_errors, b[i].points[j].bit_errors);
        }
    }
}

} // namespace

TEST(Wilson, MatchesFormula)
{
    EXPECT_EQ(wilson_halfwidth(0, 0), 0.0);
    const double z = 1.959963984540054, n = 1000.0, p = 0.1;
    const double expect = z * std::sqrt(p * (1 - p) / n + z * z / (4 * n * n)) / (1 + z * z / n);
    EXPECT_NEAR(wilson_halfwidth(100, 1000), expect, 1e-15);
    EXPECT_GT(wilson_halfwidth(0, 1000), 0.0);
}

TEST(Bpsk, AnalyticValues)
{
    EXPECT_NEAR(bpsk_flatfading_analytic(1.0), 0.5 * (1.0 - std::sqrt(0.5)), 1e-15);
    EXPECT_NEAR(bpsk_flatfading_analytic(100.0), 0.5 * (1.0 - std::sqrt(100.0 / 101.0)), 1e-15);
}

TEST(Config, JsonRoundTripAndValidation)
{
    auto c = small_config();
    c.baselines = {"bpsk_coherent_analytic", "pilot_qpsk"};
    c.pilot.pilots = 4;
    const auto back = config_from_json(nlohmann::json::parse(to_json(c).dump()));
    EXPECT_EQ(to_json(back), to_json(c));

    auto j = to_json(c);
    j["bogus"] = 1;
    EXPECT_THROW(config_from_json(j), Error);
    j = to_json(c);
    j["radius"] = "optimal:x";
    EXPECT_THROW(config_from_json(j), Error);
    j = to_json(c);
    j["radius"] = 1.25;
    EXPECT_DOUBLE_EQ(resolve_radius(config_from_json(j).radius, 8), 1.25);
    j = to_json(c);
    j["K"] = 25;
    try {
        config_from_json(j);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::search_budget_exceeded);
    }
    j = to_json(c);
    j["decoders"] = {"nope"};
    EXPECT_THROW(config_from_json(j), Error);
}

TEST(Experiment, IndependentOfWorkerCount)
{
    const auto c = small_config();
    const auto a = run_experiment(c, 1), b = run_experiment(c, 3);
    expect_same_counts(a, b);
}

TEST(Experiment, PairedStreamsIgnoreDecoderSelection)
{
    auto c = small_config();
    const auto all = run_experiment(c);
    c.decoders = {"rfmd"};
    const auto one = run_experiment(c);
    ASSERT_EQ(one.size(), 1u);
    for (std::size_t j = 0; j < one[0].points.size(); ++j)
        EXPECT_EQ(one[0].points[j].bit_errors, all[1].points[j].bit_errors);
}

TEST(Experiment, DizetAndDftIdentical)
{
    const auto r = run_experiment(small_config());
    for (std::size_t j = 0; j < r[0].points.size(); ++j) EXPECT_EQ(r[0].points[j].bit_errors, r[3].points[j].bit_errors);
}

TEST(Experiment, NoiselessLimitHasNoErrors)
{
    auto c = small_config();
    c.snr_grid_db = {300.0};
    c.baselines = {"pilot_qpsk"};
    for (const auto& curve : run_experiment(c)) EXPECT_EQ(curve.points[0].bit_errors, 0u) << curve.name;
}

TEST(Experiment, EarlyStopAtBatchBoundary)
{
    auto c = small_config();
    c.snr_grid_db = {-5.0};
    c.decoders = {"dizet"};
    c.max_bit_errors = 100;
    c.trials_per_point = 10000;
    const auto r = run_experiment(c, 2);
    const auto& p = r[0].points[0];
    EXPECT_GE(p.bit_errors, 100u);
    EXPECT_LT(p.bits_sent, 10000u * 8);
    EXPECT_EQ(p.bits_sent % (c.batch_trials * 8), 0u);
    expect_same_counts(r, run_experiment(c, 1));
}

TEST(Experiment, AnalyticBaselineOrderAndValues)
{
    auto c = small_config();
    c.decoders = {"dizet"};
    c.baselines = {"bpsk_coherent_mc", "bpsk_coherent_analytic"};
    c.trials_per_point = 2000;
    const auto r = run_experiment(c);
    ASSERT_EQ(r.size(), 3u);
    EXPECT_EQ(r[1].name, "bpsk_coherent_mc");
    EXPECT_EQ(r[2].name, "bpsk_coherent_analytic");
    for (std::size_t j = 0; j < 2; ++j) {
        EXPECT_DOUBLE_EQ(r[2].points[j].ber, bpsk_flatfading_analytic(db_to_linear(c.snr_grid_db[j])));
        EXPECT_NEAR(r[1].points[j].ber, r[2].points[j].ber, 0.25 * r[2].points[j].ber);
    }
}

TEST(PilotQpsk, UnderdeterminedEstimate)
{
    PilotLayout lay{2, 4, 4};
    try {
        pilot_qpsk_receive(cvec(9, cdouble(1.0)), lay);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::underdetermined_estimate);
    }
}

TEST(PilotQpsk, NoiselessRecoveryWithEnoughPilots)
{
    const PilotLayout lay{4, 4, 6};
    for (int t = 0; t < 50; ++t) {
        RngStream r(91, static_cast<std::uint64_t>(t));
        std::vector<std::uint8_t> bits(12);
        for (auto& b : bits) b = r.bit();
        cvec s;
        for (int n = 0; n < 4; ++n) s.push_back(pilot_symbol(n));
        for (int d = 0; d < 6; ++d) s.push_back(qpsk_symbol(bits[2 * d], bits[2 * d + 1]));
        const auto h = sample_channel(ChannelModel{4, 1.0, 0.0}, r);
        const auto y = linear_convolve(s, h.taps);
        EXPECT_EQ(pilot_qpsk_receive(y, lay), bits);
    }
}

TEST(Output, CsvJsonRoundTrip)
{
    auto c = small_config();
    c.trials_per_point = 50;
    c.baselines = {"bpsk_coherent_analytic"};
    const auto curves = run_experiment(c);
    const std::string csv = curves_to_csv(curves);
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "snr_db,decoder,bits_sent,bit_errors,ber,ber_ci_halfwidth,wall_time_s");
    const auto parsed = curves_from_csv(csv);
    const auto js = nlohmann::json::parse(curves_to_json(parsed, c).dump());
    EXPECT_EQ(curves_to_csv(curves_from_json(js)), csv);
    EXPECT_EQ(js.at("seed").get<std::uint64_t>(), c.seed);
    EXPECT_TRUE(js.contains("build"));
    for (const auto& cv : curves)
        for (const auto& p : cv.points)
            if (p.bits_sent > 0) {
                EXPECT_DOUBLE_EQ(p.ber, double(p.bit_errors) / double(p.bits_sent));
            }
}

TEST(Workers, EnvironmentOverride)
{
    ::setenv("MOCZ_WORKERS", "3", 1);
    EXPECT_EQ(effective_workers(1), 3);
    ::unsetenv("MOCZ_WORKERS");
    EXPECT_EQ(effective_workers(2), 2);
    EXPECT_EQ(effective_workers(0), 1);
}
