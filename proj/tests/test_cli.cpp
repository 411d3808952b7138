#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include <mocz/cli.hpp>

using namespace mocz;
namespace fs = std::filesystem;

namespace {

struct Run {
    int rc;
    std::string out, err;
};

Run run(std::vector<std::string> args)
{
    args.insert(args.begin(), "mocz");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int rc = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
    return {rc, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
protected:
    void SetUp() override
    {
        dir = fs::temp_directory_path() / ("mocz_cli_" + std::to_string(::getpid()));
        fs::create_directories(dir);
    }
    void TearDown() override { fs::remove_all(dir); }
    std::string path(const std::string& name) const { return (dir / name).string(); }
    void write(const std::string& name, const std::string& text) const { std::ofstream(path(name)) << text; }
    fs::path dir;
};

} // namespace

TEST_F(CliTest, EncodeDecodeRoundTrip)
{
    const auto enc = run({"encode", "--bits", "10110100", "--k", "8", "--radius", "optimal:1", "--out", path("x.csv"),
                          "--codebook-out", path("cb.json")});
    ASSERT_EQ(enc.rc, 0) << enc.err;
    for (const char* d : {"dizet", "dizet_dft", "rfmd", "ml"}) {
        const auto dec = run({"decode", "--input", path("x.csv"), "--codebook", path("cb.json"), "--decoder", d});
        EXPECT_EQ(dec.rc, 0) << dec.err;
        EXPECT_EQ(dec.out, "10110100\n") << d;
    }
}

TEST_F(CliTest, HexAndBinaryAgree)
{
    const auto a = run({"encode", "--bits", "10110100", "--k", "8"});
    const auto b = run({"encode", "--bits", "0xB4", "--k", "8"});
    ASSERT_EQ(a.rc, 0);
    EXPECT_EQ(a.out, b.out);
    int lines = 0;
    for (char ch : a.out) lines += ch == '\n';
    EXPECT_EQ(lines, 9);
}

TEST_F(CliTest, BoundsReport)
{
    ASSERT_EQ(run({"encode", "--bits", "0", "--k", "1", "--radius", "2", "--codebook-out", path("cb1.json"), "--out", path("x1.csv")}).rc, 0);
    ASSERT_EQ(run({"encode", "--bits", "00000000", "--k", "8", "--codebook-out", path("cb.json"), "--out", path("x.csv")}).rc, 0);
    const auto r = run({"bounds", "--codebook", path("cb.json"), "--delta", "max", "--grid", "500"});
    ASSERT_EQ(r.rc, 0) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_TRUE(j.contains("epsilon"));
    EXPECT_TRUE(j.contains("delta"));
    EXPECT_TRUE(j.contains("dmin"));
    EXPECT_GT(j["epsilon"].get<double>(), 0.0);
    for (const auto& c : j["certificates"]) EXPECT_GE(c["exact_worstcase"].get<double>(), c["epsilon"].get<double>());
    for (const auto& row : j["vertex_conjecture"]) EXPECT_TRUE(row["holds"].get<bool>());

    write("zs.json", R"({"zeros":[{"re":2,"im":0},{"re":-2,"im":0}],"leading":{"re":1,"im":0}})");
    const auto z = run({"bounds", "--zeros", path("zs.json"), "--delta", "0.5", "--grid", "200"});
    ASSERT_EQ(z.rc, 0) << z.err;
    EXPECT_DOUBLE_EQ(nlohmann::json::parse(z.out)["delta"].get<double>(), 0.5);
}

TEST_F(CliTest, SimulateCsvAndJson)
{
    write("cfg.json", R"({"K":8,"L":2,"snr_grid_db":[5,15],"decoders":["dizet","rfmd"],"trials_per_point":200,"seed":3,"batch_trials":50})");
    const auto a = run({"simulate", "--config", path("cfg.json")});
    ASSERT_EQ(a.rc, 0) << a.err;
    EXPECT_EQ(a.out.substr(0, a.out.find('\n')), csv_header);
    EXPECT_EQ(curves_from_csv(a.out).size(), 2u);
    const auto b = run({"simulate", "--config", path("cfg.json"), "--format", "json", "--seed", "4"});
    ASSERT_EQ(b.rc, 0);
    EXPECT_EQ(nlohmann::json::parse(b.out)["seed"].get<int>(), 4);
}

TEST_F(CliTest, Sweep)
{
    write("sw.json", R"({"base":{"K":4,"snr_grid_db":[10],"decoders":["dizet"],"trials_per_point":50},"grid":{"L":[1,2],"p":[0.5,1.0]}})");
    const auto r = run({"sweep", "--config", path("sw.json")});
    ASSERT_EQ(r.rc, 0) << r.err;
    int lines = 0;
    for (char ch : r.out) lines += ch == '\n';
    EXPECT_EQ(lines, 5);
}

TEST_F(CliTest, ExitCodes)
{
    EXPECT_EQ(run({"--help"}).rc, 0);
    EXPECT_EQ(run({}).rc, 2);
    EXPECT_EQ(run({"simulate", "--config", path("missing.json")}).rc, 2);
    write("bad.json", R"({"K":8,"L":2,"snr_grid_db":[5],"decoders":["warp"]})");
    EXPECT_EQ(run({"simulate", "--config", path("bad.json")}).rc, 2);
    write("broken.json", "{not json");
    EXPECT_EQ(run({"simulate", "--config", path("broken.json")}).rc, 2);
    EXPECT_EQ(run({"encode", "--bits", "101", "--k", "8"}).rc, 2);
    write("zero.csv", "0,0\n0,0\n0,0\n");
    EXPECT_EQ(run({"decode", "--input", path("zero.csv"), "--k", "2", "--decoder", "rfmd"}).rc, 3);
}
