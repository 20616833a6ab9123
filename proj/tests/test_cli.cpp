#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "msindex/cli.hpp"

namespace msindex {
namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
    Json report() const { return Json::parse(out); }
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "msindex");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::dispatch(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& text) {
    const auto dir = std::filesystem::temp_directory_path() / "msindex_cli_test";
    std::filesystem::create_directories(dir);
    const auto path = dir / name;
    std::ofstream(path, std::ios::binary) << text;
    return path.string();
}

std::string without_wall_time(std::string text) {
    Json j = Json::parse(text);
    j.erase("wall_time_ms");
    return j.dump(2);
}

TEST(Cli, ComputeK4) {
    const auto path = write_temp("k4.hg", "3 4 4\n1 2 3\n1 2 4\n1 3 4\n2 3 4\n");
    const auto r = run({"compute", "--input", path, "--seed", "7"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = r.report();
    EXPECT_EQ(j["command"], "compute");
    EXPECT_EQ(j["status"], "ok");
    EXPECT_EQ(j["version"], cli::kVersion);
    EXPECT_NEAR(j["results"][0]["mu"].get<double>(), 0.0625, 1e-12);
    EXPECT_TRUE(j["results"][0]["converged"].get<bool>());
    EXPECT_EQ(j["config"]["seed"], 7);
}

TEST(Cli, Symfun) {
    const auto path = write_temp("x.txt", "0.5 0.3 0.2\n");
    const auto r = run({"symfun", "--input", path, "--k", "3"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto stats = r.report()["results"][0]["stats"];
    EXPECT_NEAR(stats["esp"][2].get<double>(), 0.31, 1e-15);
    EXPECT_EQ(stats["n_prime"], 3);
}

TEST(Cli, BoundsSweep) {
    const auto r = run({"bounds", "--bound", "thm1_upper", "--k", "3", "--n", "16", "--samples", "2000",
                        "--seed", "42"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto res = r.report()["results"][0];
    EXPECT_EQ(res["violations"], 0);
    EXPECT_EQ(res["cap_policy"], "threshold");
    EXPECT_EQ(res["samples_total"], 2000);
}

TEST(Cli, BoundsSingleVector) {
    const auto path = write_temp("y.txt", "# equal weights\n0.25 0.25 0.25 0.25\n");
    const auto r = run({"bounds", "--input", path, "--bound", "maclaurin", "--k", "2"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(r.report()["results"][0]["equality_case"].get<bool>());
}

TEST(Cli, ProofClaims) {
    const auto r = run({"proof-claims", "--k", "4", "--n", "8..12", "--samples", "500"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.report()["results"].size(), 3u);
}

TEST(Cli, ConjectureColex) {
    const auto r = run({"conjecture", "--r", "3", "--m", "10", "--mode", "colex"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto v = r.report()["results"][0];
    EXPECT_TRUE(v["tight"].get<bool>());
    EXPECT_EQ(v["theorem_branch"], "r_le_5");
    EXPECT_EQ(v["graph"]["m"], 10);
}

TEST(Cli, ColexOutput) {
    const auto r = run({"colex", "--r", "3", "--m", "5"});
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "3 5 5\n1 2 3\n1 2 4\n1 3 4\n2 3 4\n1 2 5\n");
}

TEST(Cli, UsageErrors) {
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"frobnicate"}).code, 2);
    EXPECT_EQ(run({"compute", "--bogus"}).code, 2);
    EXPECT_EQ(run({"compute"}).code, 2);
    EXPECT_EQ(run({"compute", "--input", "/nonexistent/file.hg"}).code, 2);
    EXPECT_EQ(run({"bounds", "--bound", "nope", "--k", "3", "--n", "5"}).code, 2);
    EXPECT_EQ(run({"bounds", "--bound", "thm1_upper", "--k", "5", "--n", "4"}).code, 2);
    EXPECT_EQ(run({"bounds", "--bound", "thm3_partial", "--k", "6", "--n", "12"}).code, 2);
    EXPECT_EQ(run({"conjecture", "--r", "3", "--m", "6", "--mode", "exhaustive", "--n-max", "8",
                   "--budget", "10"})
                  .code,
              2);
    const auto bad = write_temp("bad.hg", "3 4 1\n1 2 9\n");
    const auto r = run({"compute", "--input", bad});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("line 2"), std::string::npos) << r.err;
    EXPECT_EQ(run({"--version"}).code, 0);
}

TEST(Cli, ExperimentalRunsDoNotFail) {
    const auto r = run({"bounds", "--bound", "thm3_partial", "--k", "6", "--n", "12", "--samples", "200",
                        "--experimental"});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(r.report()["results"][0]["experimental"].get<bool>());
}

TEST(Cli, DeterministicReports) {
    const std::vector<std::string> base{"bounds", "--bound", "thm2_lower", "--k", "4", "--n", "10..30",
                                        "--samples", "5000", "--seed", "42"};
    auto with_threads = [&](const char* t) {
        auto a = base;
        a.push_back("--threads");
        a.push_back(t);
        return a;
    };
    const auto one = run(with_threads("1"));
    const auto eight = run(with_threads("8"));
    ASSERT_EQ(one.code, 0);
    EXPECT_EQ(without_wall_time(one.out), without_wall_time(eight.out));
    EXPECT_EQ(without_wall_time(one.out), without_wall_time(run(with_threads("1")).out));
}

TEST(Cli, SweepConfigFile) {
    const auto cfg = write_temp("sweeps.json", R"({"sweeps": [
        {"bound": "thm1_upper", "k": 4, "n": 9, "samples": 1000, "cap_policy": "boundary", "seed": 42},
        {"bound": "prop1_chain", "n": [2, 8], "samples": 1000, "seed": 1}
    ]})");
    const auto r = run({"bounds", "--input", cfg});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto res = r.report()["results"];
    ASSERT_EQ(res.size(), 2u);
    EXPECT_EQ(res[0]["cap_policy"], "boundary");
    EXPECT_EQ(res[1]["n_min"], 2);
    EXPECT_EQ(res[1]["n_max"], 8);

    const auto broken = write_temp("broken.json", R"({"sweeps": [{"bound": "thm1_upper"}]})");
    EXPECT_EQ(run({"bounds", "--input", broken}).code, 2);
}

TEST(Cli, OutFile) {
    const auto dest = write_temp("report.json", "");
    const auto r = run({"conjecture", "--r", "3", "--m", "4", "--out", dest});
    ASSERT_EQ(r.code, 0);
    EXPECT_TRUE(r.out.empty());
    std::ifstream in(dest);
    std::stringstream text;
    text << in.rdbuf();
    EXPECT_EQ(Json::parse(text.str())["status"], "ok");
}

}  // namespace
}  // namespace msindex
