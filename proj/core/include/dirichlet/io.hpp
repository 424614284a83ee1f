#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dirichlet/heat_sim.hpp"
#include "dirichlet/moment.hpp"
#include "dirichlet/series.hpp"
#include "dirichlet/spectral.hpp"
#include "dirichlet/taylor.hpp"
#include "dirichlet/uniqueness.hpp"

// Structured-text (JSON) and CSV encodings. Every emitter is canonical: the
// same value always produces the same bytes, and parse(emit(x)) == x.
namespace dirichlet::io {

/// Shortest round-trip decimal form, independent of the C locale.
std::string formatNumber(double value);

std::string readFile(const std::filesystem::path& path);
void writeFile(const std::filesystem::path& path, std::string_view contents);

// {"terms": [[alpha, lambda], ...],
//  "tail": null | {"sumBound": x, "lambdaFloor": y, "weightedBounds": {"0": b0, ...}}}
// Numbers may also be given as decimal or "p/q" strings.
std::string toJson(const DirichletSeries& series);
DirichletSeries parseSeries(std::string_view json);

// {"center": tau, "coeffs": [...], "bounds": [...], "sumAbsAlpha": S0}
std::string toJson(const TaylorExpansion& expansion);
TaylorExpansion parseExpansion(std::string_view json);

std::string toJson(const SeriesValue& value);

// {"verdict": ..., "blockedPrefix": [...], "modulusCharacterization":
//  [{"modulus": m, "residues": [...]}], "jMax": n, "subspace": "..."}
std::string toJson(const ControllabilityReport& report);
ControllabilityReport parseReport(std::string_view json);

// {"kind": ..., "T": ..., "modes": [...], "exponents": [...], "coeffs": [...]}
std::string toJson(const ControlFunction& control);
ControlFunction parseControl(std::string_view json);

// {"recovered": [[alpha, lambda], ...], "residualNorm": r, "illConditioned": b, "sweeps": n}
std::string toJson(const PeelResult& result);
PeelResult parsePeel(std::string_view json);

/// Output of `control synthesize`: the control plus its provenance, which
/// `control simulate` reads back.
struct SynthesisDocument {
    ControlFunction control;
    std::string actuatorA;
    std::string actuatorB;
    SpectralState z0;
    SpectralState z1;
    double predictedError = 0.0;
    double residual = 0.0;
    double conditionNumber = 0.0;
    double energy = 0.0;
    std::vector<int> blockedModes;

    friend bool operator==(const SynthesisDocument&, const SynthesisDocument&) = default;
};

std::string toJson(const SynthesisDocument& doc);
SynthesisDocument parseSynthesis(std::string_view json);

/// Lines starting with '#' are comments.
std::string provenanceHeader(std::string_view command);

// t,value
std::string toCsv(const SampledSignal& signal);
/// Horizon defaults to the last sample time.
SampledSignal parseSignalCsv(std::string_view csv, std::optional<double> horizon = std::nullopt);

// t,z_1,...,z_N then an optional `terminalError,<value>` row.
std::string toCsv(const Trajectory& trajectory);
Trajectory parseTrajectoryCsv(std::string_view csv);

struct RemainderRow {
    std::size_t n = 0;
    double t = 0.0;
    double measured = 0.0;
    double certified = 0.0;
};

// n,t,measured_remainder,certified_bound
std::string toCsv(const std::vector<RemainderRow>& rows);

// s,u
std::string controlSamplesCsv(const ControlFunction& control, int samples);

/// Comma- or whitespace-separated list of numbers.
std::vector<double> parseNumberList(std::string_view text);

}  // namespace dirichlet::io
