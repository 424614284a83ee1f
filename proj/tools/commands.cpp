#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <memory>
#include <optional>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <json.hpp>

#include "dirichlet/errors.hpp"
#include "dirichlet/exact.hpp"
#include "dirichlet/heat_sim.hpp"
#include "dirichlet/io.hpp"
#include "dirichlet/moment.hpp"
#include "dirichlet/series.hpp"
#include "dirichlet/spectral.hpp"
#include "dirichlet/taylor.hpp"
#include "dirichlet/uniqueness.hpp"

namespace ctl {

using namespace dirichlet;
using Json = nlohmann::ordered_json;

namespace {

std::string trim(std::string_view text) {
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = text.find_last_not_of(" \t\r\n");
    return std::string(text.substr(first, last - first + 1));
}

double parseScalar(std::string_view text) {
    const auto values = io::parseNumberList(text);
    if (values.size() != 1) {
        throw ValidationError("expected one number, got '" + std::string(text) + "'");
    }
    return values.front();
}

// Writes to --out or stdout, with the provenance line unless --no-header.
void emit(const GlobalOptions& global, std::string_view command, const std::string& body) {
    std::string text = global.noHeader ? std::string() : io::provenanceHeader(command);
    text += body;
    if (global.out.empty()) {
        std::cout << text;
        std::cout.flush();
    } else {
        io::writeFile(global.out, text);
    }
}

std::string jsonText(const Json& doc) { return doc.dump(2) + "\n"; }

// --series FILE or --terms "alpha:lambda, ..." with an optional tail.
struct SeriesSource {
    std::string file;
    std::string terms;
    std::optional<double> tailSum;
    double tailFloor = 0.0;

    void attach(CLI::App* cmd) {
        auto* f = cmd->add_option("--series", file, "Series document (JSON)");
        auto* t = cmd->add_option("--terms", terms, "Inline terms 'alpha:lambda, ...'");
        f->excludes(t);
        cmd->add_option("--tail-sum", tailSum, "Certified bound on the dropped sum |alpha|");
        cmd->add_option("--tail-floor", tailFloor, "Smallest dropped exponent");
    }

    DirichletSeries load() const {
        if (file.empty() && terms.empty()) {
            throw ValidationError("give the series with --series FILE or --terms");
        }
        if (!file.empty()) {
            auto series = io::parseSeries(io::readFile(file));
            if (tailSum) {
                throw ValidationError("--tail-sum only applies to --terms");
            }
            return series;
        }
        std::vector<Term> parsed;
        std::string_view rest = terms;
        while (!rest.empty()) {
            const auto comma = rest.find(',');
            const std::string pair = trim(rest.substr(0, comma));
            rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
            if (pair.empty()) {
                continue;
            }
            const auto colon = pair.find(':');
            if (colon == std::string::npos) {
                throw ValidationError("term '" + pair + "' is not 'alpha:lambda'");
            }
            parsed.push_back({parseScalar(pair.substr(0, colon)), parseScalar(pair.substr(colon + 1))});
        }
        if (parsed.empty()) {
            throw ValidationError("--terms lists no terms");
        }
        std::optional<TailModel> tail;
        if (tailSum) {
            tail.emplace(*tailSum, tailFloor);
        }
        return DirichletSeries(std::move(parsed), std::move(tail));
    }
};

double measuredRemainder(const DirichletSeries& series, const TaylorExpansion& e,
                         std::size_t n, double t) {
    using Wide = boost::multiprecision::cpp_bin_float_50;
    Wide value = 0;
    for (const auto& term : series.terms()) {
        value += Wide(term.alpha) * exp(-Wide(term.lambda) * Wide(t));
    }
    Wide partial = 0;
    const Wide h = Wide(t) - Wide(e.center);
    for (std::size_t j = n + 1; j-- > 0;) {
        partial = partial * h + Wide(e.coeffs[j]);
    }
    return static_cast<double>(abs(value - partial));
}

Actuator makeActuator(const std::string& a, const std::string& b, const std::string& kind) {
    return Actuator::parse(a, b, parseActuatorKind(kind));
}

void attachActuator(CLI::App* cmd, std::string& a, std::string& b, std::string& kind) {
    cmd->add_option("--a", a, "Left endpoint (exact grammar, e.g. 1/4+1/100*sqrt2)")->required();
    cmd->add_option("--b", b, "Right endpoint (exact grammar)")->required();
    cmd->add_option("--kind", kind, "lumped or distributed")->capture_default_str();
}

SpectralState padded(const SpectralState& z, std::size_t size) {
    auto coeffs = z.coeffs;
    coeffs.resize(std::max(size, coeffs.size()), 0.0);
    return SpectralState(std::move(coeffs));
}

}  // namespace

SpectralState parseState(std::string_view text) {
    std::string s;
    for (char c : text) {
        if (!std::isspace(static_cast<unsigned char>(c))) {
            s += c;
        }
    }
    if (s.find("phi") == std::string::npos) {
        const auto values = io::parseNumberList(text);
        if (values.size() == 1 && values.front() == 0.0) {
            return SpectralState(std::vector<double>{0.0});
        }
        if (values.empty()) {
            throw ValidationError("empty state");
        }
        return SpectralState(values);
    }
    std::vector<double> coeffs;
    std::size_t pos = 0;
    while (pos < s.size()) {
        double sign = 1.0;
        if (s[pos] == '+' || s[pos] == '-') {
            sign = s[pos] == '-' ? -1.0 : 1.0;
            ++pos;
        }
        const auto phi = s.find("phi", pos);
        if (phi == std::string::npos) {
            throw ValidationError("state term '" + s.substr(pos) + "' does not name a mode phiJ");
        }
        double coefficient = 1.0;
        if (phi > pos) {
            if (s[phi - 1] != '*' || phi - 1 == pos) {
                throw ValidationError("state terms must read 'c*phiJ' or 'phiJ'");
            }
            coefficient = parseScalar(s.substr(pos, phi - 1 - pos));
        }
        std::size_t end = phi + 3;
        while (end < s.size() && std::isdigit(static_cast<unsigned char>(s[end]))) {
            ++end;
        }
        if (end == phi + 3) {
            throw ValidationError("mode index missing after 'phi'");
        }
        const int j = std::stoi(s.substr(phi + 3, end - phi - 3));
        if (j < 1 || j > 100000) {
            throw ValidationError("mode index must be in [1, 100000]");
        }
        if (coeffs.size() < static_cast<std::size_t>(j)) {
            coeffs.resize(j, 0.0);
        }
        coeffs[j - 1] += sign * coefficient;
        pos = end;
        if (pos < s.size() && s[pos] != '+' && s[pos] != '-') {
            throw ValidationError("unexpected '" + s.substr(pos) + "' in state");
        }
    }
    return SpectralState(std::move(coeffs));
}

void addSeriesCommands(CLI::App& app, const GlobalOptions& global) {
    auto* series = app.add_subcommand("series", "Exponential Dirichlet series tools");
    series->require_subcommand(1);

    {
        struct Opts {
            SeriesSource source;
            double t = 0.0;
        };
        auto o = std::make_shared<Opts>();
        auto* cmd = series->add_subcommand("eval", "Certified value at t");
        o->source.attach(cmd);
        cmd->add_option("--t", o->t, "Evaluation point")->required();
        cmd->callback([o, &global] {
            emit(global, "series eval", io::toJson(evaluate(o->source.load(), o->t)));
        });
    }
    {
        struct Opts {
            SeriesSource source;
            double tau = 1.0;
            std::size_t order = 10;
        };
        auto o = std::make_shared<Opts>();
        auto* cmd = series->add_subcommand("expand", "Taylor coefficients and bounds about tau");
        o->source.attach(cmd);
        cmd->add_option("--tau", o->tau, "Expansion center")->required();
        cmd->add_option("--order", o->order, "Highest coefficient index")->required();
        cmd->callback([o, &global] {
            emit(global, "series expand", io::toJson(expand(o->source.load(), o->tau, o->order)));
        });
    }
    {
        struct Opts {
            SeriesSource source;
            double tau = 1.0;
            std::string t;
            std::size_t nmax = 20;
        };
        auto o = std::make_shared<Opts>();
        auto* cmd = series->add_subcommand("remainder", "Measured vs certified remainder sweep");
        o->source.attach(cmd);
        cmd->add_option("--tau", o->tau, "Expansion center")->required();
        cmd->add_option("--t", o->t, "Evaluation point(s), comma separated")->required();
        cmd->add_option("--nmax", o->nmax, "Largest order")->capture_default_str();
        cmd->callback([o, &global] {
            const auto s = o->source.load();
            const auto points = io::parseNumberList(o->t);
            if (points.empty()) {
                throw ValidationError("--t lists no points");
            }
            const auto e = expand(s, o->tau, o->nmax);
            std::vector<io::RemainderRow> rows;
            for (double t : points) {
                for (std::size_t n = 1; n <= o->nmax; ++n) {
                    rows.push_back({n, t, measuredRemainder(s, e, n, t), remainderBound(e, n, t).bound});
                }
            }
            emit(global, "series remainder", io::toCsv(rows));
        });
    }
    {
        auto source = std::make_shared<SeriesSource>();
        auto* cmd = series->add_subcommand("shift", "Move the smallest exponent to 1");
        source->attach(cmd);
        cmd->callback([source, &global] {
            const auto shifted = shiftNormalize(source->load());
            Json doc;
            doc["shift"] = shifted.shift;
            doc["series"] = Json::parse(io::toJson(shifted.series));
            emit(global, "series shift", jsonText(doc));
        });
    }
    {
        struct Opts {
            SeriesSource source;
            unsigned k = 1;
        };
        auto o = std::make_shared<Opts>();
        auto* cmd = series->add_subcommand("reduce", "Divide each alpha by lambda^k");
        o->source.attach(cmd);
        cmd->add_option("--k", o->k, "Power")->capture_default_str();
        cmd->callback([o, &global] {
            emit(global, "series reduce", io::toJson(antiderivativeReduce(o->source.load(), o->k)));
        });
    }
    {
        struct Opts {
            SeriesSource source;
            double horizon = 1.0;
            double tol = 1e-12;
        };
        auto o = std::make_shared<Opts>();
        auto* cmd = series->add_subcommand("zero", "Identically-zero test on [0, T]");
        o->source.attach(cmd);
        cmd->add_option("--T", o->horizon, "Horizon")->capture_default_str();
        cmd->add_option("--tol", o->tol, "Absolute tolerance")->capture_default_str();
        cmd->callback([o, &global] {
            const bool zero = isIdenticallyZero(o->source.load(), o->horizon, o->tol);
            Json doc;
            doc["identicallyZero"] = zero;
            doc["T"] = o->horizon;
            doc["tol"] = o->tol;
            emit(global, "series zero", jsonText(doc));
        });
    }
    {
        struct Opts {
            std::string signal;
            std::string lambdas;
            int count = 1;
            std::optional<double> horizon;
        };
        auto o = std::make_shared<Opts>();
        auto* cmd = series->add_subcommand("peel", "Recover leading coefficients for known exponents");
        cmd->add_option("--signal", o->signal, "Signal CSV (t,value)")->required();
        cmd->add_option("--lambdas", o->lambdas, "Known exponents, increasing")->required();
        cmd->add_option("--count", o->count, "Number of coefficients")->capture_default_str();
        cmd->add_option("--T", o->horizon, "Horizon (default: last sample time)");
        cmd->callback([o, &global] {
            const auto signal = io::parseSignalCsv(io::readFile(o->signal), o->horizon);
            const auto result = peelLeading(signal, io::parseNumberList(o->lambdas), o->count);
            emit(global, "series peel", io::toJson(result));
        });
    }
}

void addControlCommands(CLI::App& app, const GlobalOptions& global) {
    auto* control = app.add_subcommand("control", "Heat-equation controllability and steering");
    control->require_subcommand(1);

    {
        struct Opts {
            std::string a, b, kind = "lumped";
            int jmax = kDefaultJMax;
        };
        auto o = std::make_shared<Opts>();
        auto* cmd = control->add_subcommand("analyze", "Blocked modes and controllability verdict");
        attachActuator(cmd, o->a, o->b, o->kind);
        cmd->add_option("--jmax", o->jmax, "Enumeration bound")->capture_default_str();
        cmd->callback([o, &global] {
            const auto act = makeActuator(o->a, o->b, o->kind);
            ControllabilityReport report;
            if (act.kind() == ActuatorKind::Lumped) {
                report = blockedSet(act, o->jmax);
            } else {
                const auto verdict = distributedControllability(act, o->jmax);
                report.verdict = verdict.verdict;
                report.jMax = o->jmax;
                report.subspaceDescription = "V = L2(0,1)";
            }
            emit(global, "control analyze", io::toJson(report));
        });
    }
    {
        struct Opts {
            std::string a, b, kind = "lumped";
            std::string target, z0, z1;
            double horizon = 1.0;
            int modes = 1;
            double eps = 1e-6;
            double reg = 0.0;
            int maxModes = 8;
        };
        auto o = std::make_shared<Opts>();
        auto* cmd = control->add_subcommand("synthesize", "Moment-method control z0 -> z1");
        attachActuator(cmd, o->a, o->b, o->kind);
        auto* target = cmd->add_option("--target", o->target, "Steering request 'z0->z1', e.g. phi1->0");
        auto* z0 = cmd->add_option("--z0", o->z0, "Initial state");
        auto* z1 = cmd->add_option("--z1", o->z1, "Target state");
        target->excludes(z0)->excludes(z1);
        cmd->add_option("--T", o->horizon, "Horizon")->capture_default_str();
        cmd->add_option("--N", o->modes, "Number of steered modes")->required();
        cmd->add_option("--eps", o->eps, "Accuracy for blocked modes")->capture_default_str();
        cmd->add_option("--reg", o->reg, "Tikhonov regularization (lumped)")->capture_default_str();
        cmd->add_option("--max-modes", o->maxModes, "Cap on N (lumped)")->capture_default_str();
        cmd->callback([o, &global] {
            std::string from = o->z0, to = o->z1;
            if (!o->target.empty()) {
                const auto arrow = o->target.find("->");
                if (arrow == std::string::npos) {
                    throw ValidationError("--target must read 'z0->z1'");
                }
                from = o->target.substr(0, arrow);
                to = o->target.substr(arrow + 2);
            }
            if (from.empty() || to.empty()) {
                throw ValidationError("give --target or both --z0 and --z1");
            }
            const auto act = makeActuator(o->a, o->b, o->kind);
            io::SynthesisDocument doc;
            doc.actuatorA = act.a().toString();
            doc.actuatorB = act.b().toString();
            doc.z0 = parseState(from);
            doc.z1 = parseState(to);
            if (act.kind() == ActuatorKind::Lumped) {
                const auto syn = synthesizeLumped(doc.z0, doc.z1, act, o->horizon, o->modes, o->eps,
                                                  {o->reg, o->maxModes});
                doc.control = syn.control;
                doc.predictedError = syn.predictedError;
                doc.residual = syn.momentResidual;
                doc.conditionNumber = syn.conditionNumber;
                doc.energy = syn.energy;
                doc.blockedModes = syn.blockedModes;
            } else {
                const auto syn = synthesizeDistributed(doc.z0, doc.z1, act, o->horizon, o->modes, o->eps);
                doc.control = syn.control;
                doc.predictedError = syn.predictedError;
                doc.residual = syn.modalResidual;
                doc.conditionNumber = syn.conditionNumber;
                doc.energy = controlEnergy(syn.control, act);
            }
            emit(global, "control synthesize", io::toJson(doc));
        });
    }
    {
        struct Opts {
            std::string control;
            int steps = 64;
            int modes = 0;
        };
        auto o = std::make_shared<Opts>();
        auto* cmd = control->add_subcommand("simulate", "Propagate a synthesized control");
        cmd->add_option("--control", o->control, "Output of 'control synthesize'")->required();
        cmd->add_option("--steps", o->steps, "Time steps")->capture_default_str();
        cmd->add_option("--modes", o->modes, "Simulated modes (default: twice the steered modes)");
        cmd->callback([o, &global] {
            const auto doc = io::parseSynthesis(io::readFile(o->control));
            const auto kind = doc.control.kind == ControlKind::Lumped ? ActuatorKind::Lumped
                                                                      : ActuatorKind::Distributed;
            const Actuator act = Actuator::parse(doc.actuatorA, doc.actuatorB, kind);
            std::size_t steered = std::max(doc.z0.size(), doc.z1.size());
            for (int j : doc.control.modes) {
                steered = std::max(steered, static_cast<std::size_t>(j));
            }
            std::size_t modes = o->modes > 0 ? static_cast<std::size_t>(o->modes) : 2 * steered;
            if (modes < doc.z0.size() || modes < doc.z1.size()) {
                throw ValidationError("--modes is smaller than the states in the control document");
            }
            const auto traj = propagate(padded(doc.z0, modes), doc.control, act, doc.control.horizon,
                                        o->steps, padded(doc.z1, modes));
            emit(global, "control simulate", io::toCsv(traj));
        });
    }
    {
        struct Opts {
            std::string a, b, kind = "lumped";
            std::string y;
            double horizon = 1.0;
            int samples = 101;
            double tol = 1e-12;
        };
        auto o = std::make_shared<Opts>();
        auto* cmd = control->add_subcommand("observability", "Sample B* S*(t) y and test it for zero");
        attachActuator(cmd, o->a, o->b, o->kind);
        cmd->add_option("--y", o->y, "Observed state, e.g. phi4")->required();
        cmd->add_option("--T", o->horizon, "Horizon")->capture_default_str();
        cmd->add_option("--samples", o->samples, "Sample count")->capture_default_str();
        cmd->add_option("--tol", o->tol, "Zero-test tolerance")->capture_default_str();
        cmd->callback([o, &global] {
            const auto act = makeActuator(o->a, o->b, o->kind);
            const auto y = parseState(o->y);
            const auto signal = observabilitySignal(y, act, o->horizon, o->samples);
            const bool zero = isIdenticallyZero(observabilitySeries(y, act), o->horizon, o->tol);
            emit(global, "control observability",
                 io::toCsv(signal) + "# identicallyZero," + (zero ? "true" : "false") + "\n");
        });
    }
}

}  // namespace ctl
