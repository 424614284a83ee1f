#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <numbers>

#include "dirichlet/errors.hpp"
#include "dirichlet/io.hpp"

using namespace dirichlet;

TEST(FormatNumber, ShortestRoundTrip) {
    EXPECT_EQ(io::formatNumber(0.1), "0.1");
    EXPECT_EQ(io::formatNumber(1.0), "1");
    EXPECT_EQ(io::formatNumber(-2.5e-300), "-2.5e-300");
    for (double v : {std::numbers::pi, 1e-17, 123456789.123, -0.0}) {
        EXPECT_EQ(std::stod(io::formatNumber(v)), v);
    }
}

TEST(SeriesJson, RoundTrip) {
    const DirichletSeries s({{0.5, 1}, {-0.25, 3.5}}, TailModel(1e-6, 10.0, {1e-6, 1e-8}));
    const auto text = io::toJson(s);
    EXPECT_EQ(io::parseSeries(text), s);
    EXPECT_EQ(io::toJson(io::parseSeries(text)), text);
    const DirichletSeries plain({{1, 1}});
    EXPECT_EQ(io::parseSeries(io::toJson(plain)), plain);
}

TEST(SeriesJson, RationalStrings) {
    const auto s = io::parseSeries(R"({"terms": [["1/3", "0.5"], [2, 4]]})");
    EXPECT_EQ(s.terms()[0].alpha, 1.0 / 3.0);
    EXPECT_EQ(s.terms()[0].lambda, 0.5);
    EXPECT_FALSE(s.tail().has_value());
}

TEST(SeriesJson, Errors) {
    EXPECT_THROW(io::parseSeries("not json"), ValidationError);
    EXPECT_THROW(io::parseSeries(R"({"terms": [[1]]})"), ValidationError);
    EXPECT_THROW(io::parseSeries(R"({"terms": [[1, 1], [2, 1]]})"), ValidationError);
    EXPECT_THROW(io::parseSeries(R"({"terms": [["x", 1]]})"), ValidationError);
    EXPECT_THROW(io::parseSeries(R"({"nope": 1})"), ValidationError);
}

TEST(ExpansionJson, RoundTrip) {
    const auto e = expand(DirichletSeries({{1, 1}, {0.5, 2.5}}), 1.0, 6);
    EXPECT_EQ(io::parseExpansion(io::toJson(e)), e);
}

TEST(ReportJson, RoundTrip) {
    const auto report = blockedSet(Actuator::parse("3/10", "7/10"), 40);
    const auto text = io::toJson(report);
    EXPECT_EQ(io::parseReport(text), report);
    EXPECT_NE(text.find("\"verdict\": \"not-controllable\""), std::string::npos);
}

TEST(ControlJson, RoundTrip) {
    ControlFunction u;
    u.kind = ControlKind::Lumped;
    u.horizon = 1.5;
    u.modes = {1, 3};
    u.exponents = {spectrum::eigenvalue(1), spectrum::eigenvalue(3)};
    u.coeffs = {19.7392088549867856, -1e-7};
    EXPECT_EQ(io::parseControl(io::toJson(u)), u);
    EXPECT_THROW(io::parseControl(R"({"kind": "lumped", "T": 1, "modes": [1], "exponents": [], "coeffs": [1]})"),
                 ValidationError);
}

TEST(PeelJson, RoundTrip) {
    PeelResult r;
    r.recovered = {{2.0, 1.0}, {-0.5, 4.0}};
    r.residualNorm = 1e-13;
    r.illConditioned = true;
    r.sweeps = 7;
    EXPECT_EQ(io::parsePeel(io::toJson(r)), r);
}

TEST(SynthesisJson, RoundTrip) {
    io::SynthesisDocument doc;
    doc.control = zeroControl(ControlKind::Lumped, 1.0);
    doc.actuatorA = "0";
    doc.actuatorB = "1/4+1/100*sqrt2";
    doc.z0 = SpectralState::mode(1, 3);
    doc.z1 = SpectralState{std::vector<double>(3, 0.0)};
    doc.predictedError = 1e-9;
    doc.blockedModes = {2};
    EXPECT_EQ(io::parseSynthesis(io::toJson(doc)), doc);
}

TEST(SignalCsv, RoundTrip) {
    const SampledSignal s({0.0, 0.5, 1.0}, {1.0, std::exp(-0.5), std::exp(-1.0)}, 1.0);
    const auto text = io::toCsv(s);
    EXPECT_EQ(text.substr(0, 8), "t,value\n");
    EXPECT_EQ(io::parseSignalCsv(text), s);
    EXPECT_EQ(io::parseSignalCsv(io::provenanceHeader("x") + text), s);
    EXPECT_THROW(io::parseSignalCsv("t,value\n0,abc\n"), ValidationError);
    EXPECT_THROW(io::parseSignalCsv("a,b\n0,1\n"), ValidationError);
}

TEST(TrajectoryCsv, RoundTrip) {
    const auto traj = propagate(SpectralState::mode(1, 3), zeroControl(ControlKind::Lumped, 1.0),
                                Actuator::parse("0", "1"), 1.0, 16, SpectralState::mode(1, 3));
    const auto text = io::toCsv(traj);
    const auto back = io::parseTrajectoryCsv(text);
    EXPECT_EQ(back.times, traj.times);
    EXPECT_EQ(back.states, traj.states);
    EXPECT_EQ(back.terminalError, traj.terminalError);
    EXPECT_EQ(io::toCsv(back), text);
    EXPECT_NE(text.find("terminalError,"), std::string::npos);
}

TEST(Files, IoErrors) {
    EXPECT_THROW(io::readFile("/nonexistent/dir/file.json"), IoError);
    EXPECT_THROW(io::writeFile("/nonexistent/dir/file.json", "x"), IoError);
    const auto path = std::filesystem::temp_directory_path() / "dirichlet_io_test.txt";
    io::writeFile(path, "hello\n");
    EXPECT_EQ(io::readFile(path), "hello\n");
    std::filesystem::remove(path);
}

TEST(NumberList, Parsing) {
    EXPECT_EQ(io::parseNumberList("1, 0.5 1/4"), (std::vector<double>{1.0, 0.5, 0.25}));
    EXPECT_EQ(io::parseNumberList(""), std::vector<double>{});
    EXPECT_THROW(io::parseNumberList("1,x"), ValidationError);
}

TEST(ControlSamples, Csv) {
    const auto text = io::controlSamplesCsv(zeroControl(ControlKind::Lumped, 1.0), 3);
    EXPECT_EQ(text, "s,u\n0,0\n0.5,0\n1,0\n");
}
