#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "cli.hpp"
#include "serialize.hpp"
#include "test_support.hpp"

using namespace polyquant;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "polyquant");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string run_process(const std::string& args) {
    const std::string cmd = std::string(POLYQUANT_CLI_PATH) + " " + args;
    std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(cmd.c_str(), "r"), pclose);
    std::string out;
    std::array<char, 4096> buf{};
    std::size_t got = 0;
    while ((got = fread(buf.data(), 1, buf.size(), pipe.get())) > 0) out.append(buf.data(), got);
    return out;
}

}  // namespace

TEST(Cli, QuantizeJson) {
    const auto r = run_cli({"quantize", "--sides", "6", "--k", "2", "--format", "json"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j.at("m"), 6);
    EXPECT_EQ(j.at("k"), 2);
    EXPECT_EQ(j.at("n"), 12);
    EXPECT_NEAR(j.at("r").get<double>(), 0.262965816357340471, 1e-15);
    EXPECT_NEAR(j.at("V").get<double>(), 0.0187284014050473474, 1e-15);
    EXPECT_EQ(j.at("coefficient").get<double>(), 3.0);
    ASSERT_EQ(j.at("points").size(), 12u);
    const auto expected = optimal_mk_set(6, 2);
    for (std::size_t i = 0; i < 12; ++i) {
        EXPECT_EQ(j["points"][i][0].get<double>(), expected.points[i].x);
        EXPECT_EQ(j["points"][i][1].get<double>(), expected.points[i].y);
    }
    // Field order follows the documented schema.
    EXPECT_EQ(r.out.rfind("{\"m\":6,\"k\":2,\"n\":12,\"r\":", 0), 0u);
}

TEST(Cli, QuantizeCsv) {
    const auto r = run_cli({"quantize", "--sides", "4", "--k", "3", "--format", "csv"});
    ASSERT_EQ(r.code, 0);
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "index,kind,x,y");
    int rows = 0;
    while (std::getline(in, line)) ++rows;
    EXPECT_EQ(rows, 12);
}

TEST(Cli, CoefficientOutput) {
    EXPECT_EQ(run_cli({"coefficient", "--sides", "6"}).out, "3.0\n");
    const auto lim = run_cli({"coefficient", "--sides", "6", "--limit"});
    EXPECT_NE(lim.out.find("circle_limit 3.28986813369645"), std::string::npos);
    const auto j = nlohmann::json::parse(run_cli({"coefficient", "--sides", "4", "--format", "json"}).out);
    EXPECT_NEAR(j["coefficient"].get<double>(), 8.0 / 3.0, 1e-15);
}

TEST(Cli, ErrorReport) {
    const auto r = run_cli({"error", "--sides", "6", "--k", "1"});
    ASSERT_EQ(r.code, 0);
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_NEAR(j["total"].get<double>(), 6.5 / 96, 1e-16);
    EXPECT_EQ(j["method"], "closed_form");
    EXPECT_EQ(j["side_part"].get<double>(), 0.0);
}

TEST(Cli, SweepCsv) {
    const auto r = run_cli({"sweep", "--sides-range", "3:4", "--k-range", "1:3"});
    ASSERT_EQ(r.code, 0) << r.err;
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "m,k,n,r,Vn,scaled,coefficient,deviation");
    std::vector<std::string> rows;
    while (std::getline(in, line)) rows.push_back(line);
    ASSERT_EQ(rows.size(), 6u);
    EXPECT_EQ(rows[0].rfind("3,1,3,", 0), 0u);
    EXPECT_EQ(rows[5].rfind("4,3,12,", 0), 0u);
}

TEST(Cli, ValidateExitCodes) {
    const auto ok = run_cli({"validate", "--sides", "4", "--k", "3", "--tol", "1e-9"});
    EXPECT_EQ(ok.code, 0) << ok.out;
    EXPECT_TRUE(nlohmann::json::parse(ok.out)["pass"].get<bool>());
    // An impossible tolerance makes the quadrature comparison fail.
    const auto strict = run_cli({"validate", "--sides", "6", "--k", "2", "--tol", "1e-300"});
    EXPECT_EQ(strict.code, 1);
    EXPECT_FALSE(nlohmann::json::parse(strict.out)["pass"].get<bool>());
    EXPECT_EQ(run_cli({"validate", "--sides", "6", "--k", "1"}).code, 0);
}

TEST(Cli, UsageErrors) {
    EXPECT_EQ(run_cli({}).code, 2);
    EXPECT_EQ(run_cli({"frobnicate"}).code, 2);
    EXPECT_EQ(run_cli({"quantize", "--sides", "six", "--k", "2"}).code, 2);
    EXPECT_EQ(run_cli({"quantize", "--sides", "6", "--k", "2", "--bogus"}).code, 2);
    EXPECT_EQ(run_cli({"quantize", "--sides", "2", "--k", "2"}).code, 2);
    EXPECT_EQ(run_cli({"quantize", "--sides", "6"}).code, 2);
    EXPECT_EQ(run_cli({"quantize", "--sides", "6", "--k", "2", "--format", "xml"}).code, 2);
    EXPECT_EQ(run_cli({"sweep", "--sides-range", "6-8", "--k", "2"}).code, 2);
    EXPECT_EQ(run_cli({"lloyd", "--sides", "6", "--n", "13", "--init", "closed_form"}).code, 2);
    const auto r = run_cli({"validate", "--sides", "6", "--k", "2", "--tol", "abc"});
    EXPECT_EQ(r.code, 2);
    EXPECT_FALSE(r.err.empty());
}

TEST(Cli, LloydJson) {
    const auto r = run_cli({"lloyd", "--sides", "6", "--n", "12", "--init", "closed_form", "--tol", "1e-12"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_TRUE(j["converged"].get<bool>());
    EXPECT_NEAR(j["distortion"].get<double>(), j["closed_form_V"].get<double>(), 1e-12);
    EXPECT_EQ(j["points"].size(), 12u);
}

TEST(Cli, RenderSvg) {
    const auto path = std::filesystem::temp_directory_path() / "polyquant_render_test.svg";
    const auto r = run_cli({"render", "--sides", "6", "--k", "2", "--svg", path.string(), "--svg-size", "400"});
    ASSERT_EQ(r.code, 0) << r.err;
    std::ifstream in(path);
    const std::string svg((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    EXPECT_EQ(svg.rfind("<svg", 0), 0u);
    EXPECT_NE(svg.find("width=\"400\""), std::string::npos);
    std::size_t points = 0;
    std::size_t ticks = 0;
    for (std::size_t pos = 0; (pos = svg.find("fill=\"#d62728\"", pos)) != std::string::npos; ++pos) ++points;
    for (std::size_t pos = 0; (pos = svg.find("<line", pos)) != std::string::npos; ++pos) ++ticks;
    EXPECT_EQ(points, 12u);
    EXPECT_EQ(ticks, 12u);  // two breakpoints per side
    std::filesystem::remove(path);

    const auto stdout_svg = run_cli({"render", "--sides", "5", "--n", "7", "--seed", "3"});
    EXPECT_EQ(stdout_svg.code, 0);
    EXPECT_NE(stdout_svg.out.find("</svg>"), std::string::npos);
}

TEST(Cli, OutFlagWritesFile) {
    const auto path = std::filesystem::temp_directory_path() / "polyquant_out_test.json";
    const auto r = run_cli({"quantize", "--sides", "5", "--k", "2", "--out", path.string()});
    ASSERT_EQ(r.code, 0);
    EXPECT_TRUE(r.out.empty());
    std::ifstream in(path);
    const auto j = nlohmann::json::parse(in);
    EXPECT_EQ(j["n"], 10);
    std::filesystem::remove(path);
}

TEST(Cli, RepeatedProcessRunsAreByteIdentical) {
    for (const std::string args : {"quantize --sides 7 --k 4", "lloyd --sides 5 --n 9 --seed 11 --max-iter 200",
                                   "sweep --sides-range 3:5 --k-range 1:4", "render --sides 4 --n 6 --seed 2"}) {
        const auto first = run_process(args);
        EXPECT_FALSE(first.empty()) << args;
        EXPECT_EQ(first, run_process(args)) << args;
    }
}

// Serialization keeps every field, including all bits of each coordinate.
TEST(Cli, QuantizerJsonRoundTrip) {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 50; ++trial) {
        QuantizerSet q;
        const int n = std::uniform_int_distribution<int>(1, 30)(rng);
        for (int i = 0; i < n; ++i) {
            q.points.push_back({polyquant::testing::uniform(rng, -2, 2), polyquant::testing::uniform(rng, -1e-7, 1e7)});
        }
        q.meta.m = std::uniform_int_distribution<int>(0, 50)(rng);
        q.meta.n = n;
        if (trial % 2 == 0) q.meta.k = trial;
        if (trial % 3 == 0) q.meta.r = polyquant::testing::uniform(rng, 0, 1);
        q.meta.method = static_cast<Method>(trial % 4);

        const auto back = io::quantizer_from_json(nlohmann::ordered_json::parse(io::to_json(q).dump()));
        EXPECT_EQ(back.meta.m, q.meta.m);
        EXPECT_EQ(back.meta.n, q.meta.n);
        EXPECT_EQ(back.meta.k, q.meta.k);
        EXPECT_EQ(back.meta.r, q.meta.r);
        EXPECT_EQ(back.meta.method, q.meta.method);
        EXPECT_EQ(back.points, q.points);
    }
}
