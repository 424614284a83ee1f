#include "dirichlet/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "dirichlet/errors.hpp"
#include "dirichlet/exact.hpp"

namespace dirichlet::io {
namespace {

using Json = nlohmann::ordered_json;

// Leading '#' lines are provenance comments.
Json parseDocument(std::string_view text, const char* what) {
    while (text.starts_with('#')) {
        const auto eol = text.find('\n');
        text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    }
    try {
        return Json::parse(text.begin(), text.end());
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError(std::string("malformed ") + what + " document: " + e.what());
    }
}

const Json& field(const Json& doc, const char* key) {
    if (!doc.is_object() || !doc.contains(key)) {
        throw ValidationError(std::string("missing field '") + key + "'");
    }
    return doc.at(key);
}

double number(const Json& v, const char* what) {
    double out = 0.0;
    if (v.is_number()) {
        out = v.get<double>();
    } else if (v.is_string()) {
        out = parseRational(v.get<std::string>()).convert_to<double>();
    } else {
        throw ValidationError(std::string(what) + " must be a number or rational string");
    }
    if (!std::isfinite(out)) {
        throw ValidationError(std::string(what) + " must be finite");
    }
    return out;
}

std::vector<double> numbers(const Json& v, const char* what) {
    if (!v.is_array()) {
        throw ValidationError(std::string(what) + " must be an array");
    }
    std::vector<double> out;
    out.reserve(v.size());
    for (const auto& x : v) {
        out.push_back(number(x, what));
    }
    return out;
}

template <typename Int>
std::vector<Int> integers(const Json& v, const char* what) {
    if (!v.is_array()) {
        throw ValidationError(std::string(what) + " must be an array");
    }
    std::vector<Int> out;
    for (const auto& x : v) {
        if (!x.is_number_integer()) {
            throw ValidationError(std::string(what) + " must hold integers");
        }
        out.push_back(x.get<Int>());
    }
    return out;
}

Json termsToJson(std::span<const Term> terms) {
    Json arr = Json::array();
    for (const auto& term : terms) {
        arr.push_back(Json::array({term.alpha, term.lambda}));
    }
    return arr;
}

std::vector<Term> termsFromJson(const Json& v) {
    if (!v.is_array()) {
        throw ValidationError("'terms' must be an array of [alpha, lambda] pairs");
    }
    std::vector<Term> terms;
    for (const auto& pair : v) {
        if (!pair.is_array() || pair.size() != 2) {
            throw ValidationError("each term must be an [alpha, lambda] pair");
        }
        terms.push_back({number(pair[0], "alpha"), number(pair[1], "lambda")});
    }
    return terms;
}

std::string dump(const Json& doc) { return doc.dump(2) + "\n"; }

std::vector<std::string> splitLines(std::string_view text) {
    std::vector<std::string> lines;
    std::string current;
    std::istringstream in{std::string(text)};
    while (std::getline(in, current)) {
        if (!current.empty() && current.back() == '\r') {
            current.pop_back();
        }
        if (current.empty() || current.front() == '#') {
            continue;
        }
        lines.push_back(current);
    }
    return lines;
}

std::vector<std::string> splitFields(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) {
        fields.push_back(field);
    }
    return fields;
}

double parseDouble(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) {
        text.remove_prefix(1);
    }
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) {
        text.remove_suffix(1);
    }
    if (!text.empty() && text.front() == '+') {
        text.remove_prefix(1);
    }
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value)) {
        throw ValidationError("not a finite number: '" + std::string(text) + "'");
    }
    return value;
}

Json stateToJson(const SpectralState& z) { return Json(z.coeffs); }

}  // namespace

std::string formatNumber(double value) {
    char buffer[64];
    const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
    if (ec != std::errc()) {
        throw std::runtime_error("number formatting failed");
    }
    return std::string(buffer, ptr);
}

std::string readFile(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open '" + path.string() + "' for reading");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void writeFile(const std::filesystem::path& path, std::string_view contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open '" + path.string() + "' for writing");
    }
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) {
        throw IoError("write to '" + path.string() + "' failed");
    }
}

std::string toJson(const DirichletSeries& series) {
    Json doc;
    doc["terms"] = termsToJson(series.terms());
    if (const auto& tail = series.tail()) {
        Json weighted = Json::object();
        const auto bounds = tail->weightedBounds();
        for (std::size_t k = 0; k < bounds.size(); ++k) {
            weighted[std::to_string(k)] = bounds[k];
        }
        doc["tail"] = {{"sumBound", tail->sumBound()},
                       {"lambdaFloor", tail->lambdaFloor()},
                       {"weightedBounds", weighted}};
    } else {
        doc["tail"] = nullptr;
    }
    return dump(doc);
}

DirichletSeries parseSeries(std::string_view json) {
    const Json doc = parseDocument(json, "series");
    std::vector<Term> terms = termsFromJson(field(doc, "terms"));
    std::optional<TailModel> tail;
    if (doc.contains("tail") && !doc.at("tail").is_null()) {
        const Json& t = doc.at("tail");
        const double sumBound = number(field(t, "sumBound"), "tail.sumBound");
        const double floor = number(field(t, "lambdaFloor"), "tail.lambdaFloor");
        std::vector<double> weighted;
        if (t.contains("weightedBounds") && !t.at("weightedBounds").is_null()) {
            const Json& w = t.at("weightedBounds");
            if (!w.is_object()) {
                throw ValidationError("tail.weightedBounds must map powers k to bounds");
            }
            weighted.resize(w.size());
            for (const auto& [key, value] : w.items()) {
                std::size_t k = 0;
                const auto [ptr, ec] = std::from_chars(key.data(), key.data() + key.size(), k);
                if (ec != std::errc() || ptr != key.data() + key.size() || k >= w.size()) {
                    throw ValidationError("tail.weightedBounds keys must be 0..K without gaps");
                }
                weighted[k] = number(value, "tail.weightedBounds");
            }
        }
        tail.emplace(sumBound, floor, std::move(weighted));
    }
    return DirichletSeries(std::move(terms), std::move(tail));
}

std::string toJson(const TaylorExpansion& expansion) {
    Json doc;
    doc["center"] = expansion.center;
    doc["coeffs"] = expansion.coeffs;
    doc["bounds"] = expansion.coeffBounds;
    doc["sumAbsAlpha"] = expansion.sumAbsAlpha;
    return dump(doc);
}

TaylorExpansion parseExpansion(std::string_view json) {
    const Json doc = parseDocument(json, "expansion");
    TaylorExpansion out;
    out.center = number(field(doc, "center"), "center");
    out.coeffs = numbers(field(doc, "coeffs"), "coeffs");
    out.coeffBounds = numbers(field(doc, "bounds"), "bounds");
    out.sumAbsAlpha = number(field(doc, "sumAbsAlpha"), "sumAbsAlpha");
    if (out.coeffs.size() != out.coeffBounds.size() || out.coeffs.empty()) {
        throw ValidationError("expansion coeffs and bounds must be nonempty and equal length");
    }
    return out;
}

std::string toJson(const SeriesValue& value) {
    Json doc;
    doc["value"] = value.value;
    doc["errorBound"] = value.errorBound;
    return dump(doc);
}

std::string toJson(const ControllabilityReport& report) {
    Json doc;
    doc["verdict"] = toString(report.verdict);
    doc["blockedPrefix"] = report.blockedPrefix;
    Json classes = Json::array();
    for (const auto& cls : report.modulusCharacterization) {
        classes.push_back({{"modulus", cls.modulus}, {"residues", cls.residues}});
    }
    doc["modulusCharacterization"] = classes;
    doc["jMax"] = report.jMax;
    doc["subspace"] = report.subspaceDescription;
    return dump(doc);
}

ControllabilityReport parseReport(std::string_view json) {
    const Json doc = parseDocument(json, "controllability report");
    ControllabilityReport out;
    out.verdict = parseVerdict(field(doc, "verdict").get<std::string>());
    out.blockedPrefix = integers<int>(field(doc, "blockedPrefix"), "blockedPrefix");
    for (const auto& cls : field(doc, "modulusCharacterization")) {
        ModulusClass mc;
        mc.modulus = field(cls, "modulus").get<long long>();
        mc.residues = integers<long long>(field(cls, "residues"), "residues");
        if (mc.modulus < 1) {
            throw ValidationError("modulus must be positive");
        }
        out.modulusCharacterization.push_back(std::move(mc));
    }
    out.jMax = field(doc, "jMax").get<int>();
    if (doc.contains("subspace")) {
        out.subspaceDescription = doc.at("subspace").get<std::string>();
    }
    return out;
}

namespace {
Json controlToJsonValue(const ControlFunction& control) {
    Json doc;
    doc["kind"] = toString(control.kind);
    doc["T"] = control.horizon;
    doc["modes"] = control.modes;
    doc["exponents"] = control.exponents;
    doc["coeffs"] = control.coeffs;
    return doc;
}

ControlFunction controlFromJsonValue(const Json& doc) {
    ControlFunction out;
    out.kind = parseControlKind(field(doc, "kind").get<std::string>());
    out.horizon = number(field(doc, "T"), "T");
    out.exponents = numbers(field(doc, "exponents"), "exponents");
    out.coeffs = numbers(field(doc, "coeffs"), "coeffs");
    if (doc.contains("modes")) {
        out.modes = integers<int>(doc.at("modes"), "modes");
    } else {
        for (std::size_t k = 0; k < out.coeffs.size(); ++k) {
            out.modes.push_back(static_cast<int>(k + 1));
        }
    }
    if (out.exponents.size() != out.coeffs.size() || out.modes.size() != out.coeffs.size()) {
        throw ValidationError("control modes, exponents and coeffs must have equal length");
    }
    return out;
}
}  // namespace

std::string toJson(const ControlFunction& control) { return dump(controlToJsonValue(control)); }

ControlFunction parseControl(std::string_view json) {
    return controlFromJsonValue(parseDocument(json, "control"));
}

std::string toJson(const PeelResult& result) {
    Json doc;
    doc["recovered"] = termsToJson(result.recovered);
    doc["residualNorm"] = result.residualNorm;
    doc["illConditioned"] = result.illConditioned;
    doc["sweeps"] = result.sweeps;
    return dump(doc);
}

PeelResult parsePeel(std::string_view json) {
    const Json doc = parseDocument(json, "peel result");
    PeelResult out;
    out.recovered = termsFromJson(field(doc, "recovered"));
    out.residualNorm = number(field(doc, "residualNorm"), "residualNorm");
    out.illConditioned = field(doc, "illConditioned").get<bool>();
    out.sweeps = field(doc, "sweeps").get<int>();
    return out;
}

std::string toJson(const SynthesisDocument& doc) {
    Json out;
    out["control"] = controlToJsonValue(doc.control);
    out["actuator"] = {{"a", doc.actuatorA},
                       {"b", doc.actuatorB},
                       {"kind", toString(doc.control.kind)}};
    out["z0"] = stateToJson(doc.z0);
    out["z1"] = stateToJson(doc.z1);
    out["predictedError"] = doc.predictedError;
    out["residual"] = doc.residual;
    out["conditionNumber"] = doc.conditionNumber;
    out["energy"] = doc.energy;
    out["blockedModes"] = doc.blockedModes;
    return dump(out);
}

SynthesisDocument parseSynthesis(std::string_view json) {
    const Json doc = parseDocument(json, "synthesis");
    SynthesisDocument out;
    out.control = controlFromJsonValue(field(doc, "control"));
    const Json& act = field(doc, "actuator");
    out.actuatorA = field(act, "a").get<std::string>();
    out.actuatorB = field(act, "b").get<std::string>();
    out.z0 = SpectralState(numbers(field(doc, "z0"), "z0"));
    out.z1 = SpectralState(numbers(field(doc, "z1"), "z1"));
    out.predictedError = number(field(doc, "predictedError"), "predictedError");
    out.residual = number(field(doc, "residual"), "residual");
    out.conditionNumber = number(field(doc, "conditionNumber"), "conditionNumber");
    out.energy = number(field(doc, "energy"), "energy");
    out.blockedModes = integers<int>(field(doc, "blockedModes"), "blockedModes");
    return out;
}

std::string provenanceHeader(std::string_view command) {
    return "# dirichlet-ctl " + std::string(command) + "\n";
}

std::string toCsv(const SampledSignal& signal) {
    std::string out = "t,value\n";
    for (std::size_t i = 0; i < signal.times.size(); ++i) {
        out += formatNumber(signal.times[i]) + "," + formatNumber(signal.values[i]) + "\n";
    }
    return out;
}

SampledSignal parseSignalCsv(std::string_view csv, std::optional<double> horizon) {
    const auto lines = splitLines(csv);
    std::vector<double> times;
    std::vector<double> values;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const auto fields = splitFields(lines[i]);
        if (i == 0 && !fields.empty() && fields[0] == "t") {
            continue;
        }
        if (fields.size() != 2) {
            throw ValidationError("signal CSV rows must be 't,value'");
        }
        times.push_back(parseDouble(fields[0]));
        values.push_back(parseDouble(fields[1]));
    }
    if (times.empty()) {
        throw ValidationError("signal CSV has no samples");
    }
    const double T = horizon.value_or(times.back());
    return SampledSignal(std::move(times), std::move(values), T);
}

std::string toCsv(const Trajectory& trajectory) {
    const std::size_t modes = trajectory.states.empty() ? 0 : trajectory.states.front().size();
    std::string out = "t";
    for (std::size_t j = 1; j <= modes; ++j) {
        out += ",z_" + std::to_string(j);
    }
    out += "\n";
    for (std::size_t i = 0; i < trajectory.times.size(); ++i) {
        out += formatNumber(trajectory.times[i]);
        for (double z : trajectory.states[i].coeffs) {
            out += "," + formatNumber(z);
        }
        out += "\n";
    }
    if (trajectory.terminalError) {
        out += "terminalError," + formatNumber(*trajectory.terminalError) + "\n";
    }
    return out;
}

Trajectory parseTrajectoryCsv(std::string_view csv) {
    const auto lines = splitLines(csv);
    Trajectory out;
    std::size_t columns = 0;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const auto fields = splitFields(lines[i]);
        if (i == 0) {
            if (fields.empty() || fields[0] != "t") {
                throw ValidationError("trajectory CSV must start with a 't,z_1,...' header");
            }
            columns = fields.size();
            continue;
        }
        if (!fields.empty() && fields[0] == "terminalError") {
            if (fields.size() != 2) {
                throw ValidationError("malformed terminalError row");
            }
            out.terminalError = parseDouble(fields[1]);
            continue;
        }
        if (fields.size() != columns) {
            throw ValidationError("trajectory CSV row has the wrong number of columns");
        }
        out.times.push_back(parseDouble(fields[0]));
        std::vector<double> z;
        for (std::size_t c = 1; c < fields.size(); ++c) {
            z.push_back(parseDouble(fields[c]));
        }
        out.states.emplace_back(std::move(z));
    }
    return out;
}

std::string toCsv(const std::vector<RemainderRow>& rows) {
    std::string out = "n,t,measured_remainder,certified_bound\n";
    for (const auto& row : rows) {
        out += std::to_string(row.n) + "," + formatNumber(row.t) + "," +
               formatNumber(row.measured) + "," + formatNumber(row.certified) + "\n";
    }
    return out;
}

std::string controlSamplesCsv(const ControlFunction& control, int samples) {
    if (samples < 2) {
        throw ValidationError("need at least two control samples");
    }
    const bool lumped = control.kind == ControlKind::Lumped;
    std::string out = "s";
    if (lumped) {
        out += ",u";
    } else {
        for (int mode : control.modes) {
            out += ",u_" + std::to_string(mode);
        }
    }
    out += "\n";
    for (int i = 0; i < samples; ++i) {
        const double s = i == samples - 1 ? control.horizon : control.horizon * i / (samples - 1);
        out += formatNumber(s);
        if (lumped) {
            out += "," + formatNumber(control(s));
        } else {
            for (std::size_t k = 0; k < control.coeffs.size(); ++k) {
                out += "," + formatNumber(control.modeAmplitude(k, s));
            }
        }
        out += "\n";
    }
    return out;
}

std::vector<double> parseNumberList(std::string_view text) {
    std::vector<double> out;
    std::string token;
    auto flush = [&] {
        if (!token.empty()) {
            out.push_back(token.find('/') != std::string::npos
                              ? parseRational(token).convert_to<double>()
                              : parseDouble(token));
            token.clear();
        }
    };
    for (char c : text) {
        if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
            flush();
        } else {
            token += c;
        }
    }
    flush();
    return out;
}

}  // namespace dirichlet::io
