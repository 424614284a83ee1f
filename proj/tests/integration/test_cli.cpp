#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <sstream>

#include "dirichlet/io.hpp"
#include "process.hpp"

using namespace dirichlet;
namespace fs = std::filesystem;

namespace {

class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
        dir_ = fs::temp_directory_path() / "dirichlet_cli_tests" / info->name();
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }

    oracle::RunResult ctl(const std::vector<std::string>& args) {
        return oracle::run(DIRICHLET_CTL_PATH, args, dir_ / "io");
    }

    fs::path path(const std::string& name) const { return dir_ / name; }

    fs::path dir_;
};

}  // namespace

TEST_F(Cli, ExpandSingleExponential) {
    const auto r = ctl({"series", "expand", "--terms", "1:1", "--tau", "1", "--order", "3", "--no-header"});
    ASSERT_EQ(r.exitCode, 0) << r.err;
    const auto e = io::parseExpansion(r.out);
    const double c = std::exp(-1.0);
    EXPECT_DOUBLE_EQ(e.coeffs[0], c);
    EXPECT_DOUBLE_EQ(e.coeffs[1], -c);
    EXPECT_DOUBLE_EQ(e.coeffs[2], c / 2);
    EXPECT_DOUBLE_EQ(e.coeffs[3], -c / 6);
}

TEST_F(Cli, RemainderSweepIsEnclosed) {
    const auto r = ctl({"series", "remainder", "--terms", "0.5:1, 0.25:2, 0.25:7", "--tau", "1",
                        "--t", "1.5", "--nmax", "20", "--no-header"});
    ASSERT_EQ(r.exitCode, 0) << r.err;
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "n,t,measured_remainder,certified_bound");
    int rows = 0;
    while (std::getline(in, line)) {
        std::istringstream fields(line);
        std::string n, t, measured, certified;
        std::getline(fields, n, ',');
        std::getline(fields, t, ',');
        std::getline(fields, measured, ',');
        std::getline(fields, certified, ',');
        EXPECT_LE(std::stod(measured), std::stod(certified)) << line;
        ++rows;
    }
    EXPECT_EQ(rows, 20);
}

TEST_F(Cli, NegativeTimeWithTailIsValidationError) {
    const auto r = ctl({"series", "eval", "--terms", "1:1", "--tail-sum", "1e-6", "--tail-floor", "5",
                        "--t", "-1"});
    EXPECT_EQ(r.exitCode, 2);
    EXPECT_NE(r.err.find("t < 0 with certified tail"), std::string::npos) << r.err;
    EXPECT_EQ(std::count(r.err.begin(), r.err.end(), '\n'), 1);
}

TEST_F(Cli, AnalyzeHalfInterval) {
    const auto r = ctl({"control", "analyze", "--a", "0", "--b", "1/2", "--jmax", "12", "--no-header"});
    ASSERT_EQ(r.exitCode, 0) << r.err;
    const auto report = io::parseReport(r.out);
    EXPECT_EQ(report.verdict, Verdict::NotControllable);
    EXPECT_EQ(report.blockedPrefix, (std::vector<int>{4, 8, 12}));
    ASSERT_EQ(report.modulusCharacterization.size(), 1u);
    EXPECT_EQ(report.modulusCharacterization[0].modulus, 4);
    EXPECT_EQ(report.modulusCharacterization[0].residues, std::vector<long long>{0});
}

TEST_F(Cli, AnalyzeIrrationalEndpoint) {
    const auto r = ctl({"control", "analyze", "--a", "1/4+1/100*sqrt2", "--b", "3/4"});
    ASSERT_EQ(r.exitCode, 0) << r.err;
    EXPECT_EQ(io::parseReport(r.out).verdict, Verdict::Controllable);
    EXPECT_TRUE(r.out.starts_with("# dirichlet-ctl control analyze\n"));
}

TEST_F(Cli, SynthesizeThenSimulate) {
    const auto control = path("control.json");
    const auto traj = path("traj.csv");
    auto r = ctl({"control", "synthesize", "--target", "phi1->0", "--a", "0", "--b", "1", "--T", "1",
                  "--N", "1", "--out", control.string()});
    ASSERT_EQ(r.exitCode, 0) << r.err;
    r = ctl({"control", "simulate", "--control", control.string(), "--out", traj.string()});
    ASSERT_EQ(r.exitCode, 0) << r.err;
    const auto t = io::parseTrajectoryCsv(io::readFile(traj));
    ASSERT_TRUE(t.terminalError.has_value());
    EXPECT_LT(*t.terminalError, 1e-8);
    EXPECT_EQ(t.terminal().size(), 2u);
}

TEST_F(Cli, BlockedModeIsDomainError) {
    const auto r = ctl({"control", "synthesize", "--target", "0->phi4", "--a", "0", "--b", "1/2", "--T",
                        "1", "--N", "4"});
    EXPECT_EQ(r.exitCode, 3);
    EXPECT_NE(r.err.find("mode 4"), std::string::npos);
    EXPECT_NE(r.err.find("(0, 1/2)"), std::string::npos);
}

TEST_F(Cli, ExitCodes) {
    EXPECT_EQ(ctl({"series", "eval", "--series", path("missing.json").string(), "--t", "1"}).exitCode, 1);
    EXPECT_EQ(ctl({"series", "eval", "--terms", "1:1", "--t", "1", "--out",
                   (dir_ / "no" / "such" / "dir.json").string()}).exitCode, 1);
    EXPECT_EQ(ctl({"series", "expand", "--terms", "1:1", "--tau", "0", "--order", "3"}).exitCode, 2);
    EXPECT_EQ(ctl({"series", "bogus"}).exitCode, 2);
    EXPECT_EQ(ctl({"control", "analyze", "--a", "0.7", "--b", "0.3"}).exitCode, 2);
    EXPECT_EQ(ctl({"control", "analyze", "--a", "0", "--b", "sqrt4"}).exitCode, 2);
    EXPECT_EQ(ctl({"control", "synthesize", "--target", "phi1->0", "--a", "0", "--b", "1", "--N", "12"})
                  .exitCode,
              2);
    EXPECT_EQ(ctl({"control", "synthesize", "--z0", "0", "--z1", "1,-1,1,-1,1,-1,1,0,1,-1,1,-1,1,-1,1,0",
                   "--a", "1/10", "--b", "7/20", "--N", "16", "--max-modes", "16"}).exitCode,
              3);
    EXPECT_EQ(ctl({"--help"}).exitCode, 0);
}

TEST_F(Cli, Determinism) {
    const std::vector<std::vector<std::string>> commands{
        {"series", "expand", "--terms", "1:1, -0.5:3.25", "--tau", "0.7", "--order", "12"},
        {"control", "analyze", "--a", "3/10", "--b", "7/10"},
        {"control", "synthesize", "--target", "phi1+1/2*phi3->0", "--a", "0", "--b", "1", "--N", "5"},
        {"control", "observability", "--a", "0", "--b", "1/2", "--y", "phi4"},
    };
    for (const auto& args : commands) {
        auto first = args;
        first.insert(first.end(), {"--out", path("a.txt").string()});
        auto second = args;
        second.insert(second.end(), {"--out", path("b.txt").string()});
        ASSERT_EQ(ctl(first).exitCode, 0);
        ASSERT_EQ(ctl(second).exitCode, 0);
        EXPECT_EQ(io::readFile(path("a.txt")), io::readFile(path("b.txt")));
    }
}

TEST_F(Cli, DocumentsRoundTrip) {
    auto r = ctl({"series", "reduce", "--terms", "1:2, 3:4", "--k", "1", "--no-header"});
    ASSERT_EQ(r.exitCode, 0) << r.err;
    EXPECT_EQ(io::toJson(io::parseSeries(r.out)), r.out);

    r = ctl({"control", "analyze", "--a", "3/10", "--b", "7/10", "--no-header"});
    EXPECT_EQ(io::toJson(io::parseReport(r.out)), r.out);

    r = ctl({"control", "synthesize", "--target", "phi1->0", "--a", "0", "--b", "1", "--N", "3",
             "--no-header"});
    ASSERT_EQ(r.exitCode, 0) << r.err;
    EXPECT_EQ(io::toJson(io::parseSynthesis(r.out)), r.out);
}

TEST_F(Cli, ObservabilityVerdict) {
    auto r = ctl({"control", "observability", "--a", "0", "--b", "1/2", "--y", "phi4", "--samples", "5"});
    ASSERT_EQ(r.exitCode, 0) << r.err;
    EXPECT_NE(r.out.find("# identicallyZero,true"), std::string::npos);
    const auto signal = io::parseSignalCsv(r.out);
    for (double v : signal.values) {
        EXPECT_EQ(v, 0.0);
    }
    r = ctl({"control", "observability", "--a", "0", "--b", "1", "--y", "phi1"});
    EXPECT_NE(r.out.find("# identicallyZero,false"), std::string::npos);
}

TEST_F(Cli, PeelFromCsv) {
    SampledSignal s;
    for (int i = 0; i < 50; ++i) {
        s.times.push_back(5.0 * i / 49);
        s.values.push_back(2 * std::exp(-s.times.back()));
    }
    s.horizon = 5.0;
    io::writeFile(path("signal.csv"), io::toCsv(s));
    const auto r = ctl({"series", "peel", "--signal", path("signal.csv").string(), "--lambdas", "1",
                        "--count", "1", "--no-header"});
    ASSERT_EQ(r.exitCode, 0) << r.err;
    EXPECT_NEAR(io::parsePeel(r.out).recovered[0].alpha, 2.0, 1e-6);
}

TEST_F(Cli, ConfigDocumentOverridesFlags) {
    io::writeFile(path("run.json"),
                  R"({"command": "series expand", "terms": "1:1", "tau": 2, "order": 2, "no-header": true})");
    const auto r = ctl({"--config", path("run.json").string()});
    ASSERT_EQ(r.exitCode, 0) << r.err;
    EXPECT_EQ(io::parseExpansion(r.out).center, 2.0);

    const auto flagged = ctl({"series", "expand", "--tau", "5", "--config", path("run.json").string()});
    ASSERT_EQ(flagged.exitCode, 0) << flagged.err;
    EXPECT_EQ(io::parseExpansion(flagged.out).center, 2.0);

    io::writeFile(path("bad.json"), "[1, 2]");
    EXPECT_EQ(ctl({"--config", path("bad.json").string()}).exitCode, 2);
    EXPECT_EQ(ctl({"--config", path("absent.json").string()}).exitCode, 1);
}

TEST_F(Cli, SeriesFileInput) {
    io::writeFile(path("s.json"), R"({"terms": [["1/2", 1], [0.5, 2]], "tail": null})");
    const auto r = ctl({"series", "eval", "--series", path("s.json").string(), "--t", "0", "--no-header"});
    ASSERT_EQ(r.exitCode, 0) << r.err;
    EXPECT_NE(r.out.find("\"value\": 1.0"), std::string::npos) << r.out;
}
