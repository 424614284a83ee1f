#include "dirichlet/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "dirichlet/errors.hpp"

namespace dirichlet {
namespace {

constexpr double kPi = std::numbers::pi;

// sin(pi x) with the rational part of x reduced modulo 2 exactly.
double sinPi(const ExactReal& x) {
    const Rational& r = x.rationalPart();
    const Rational two(2);
    const auto quotient = static_cast<Rational>(r / two);
    Rational floored(boost::multiprecision::numerator(quotient) /
                     boost::multiprecision::denominator(quotient));
    if (floored > quotient) {
        floored -= 1;
    }
    Rational reduced = r - two * floored;  // in [0, 2)
    if (x.isRational()) {
        if (reduced == 0 || reduced == 1) {
            return 0.0;
        }
        if (reduced > 1) {
            return -std::sin(kPi * static_cast<double>(reduced - 1));
        }
        return std::sin(kPi * reduced.convert_to<double>());
    }
    const ExactReal shifted(reduced, x.irrationalPart(), x.tag());
    return std::sin(kPi * shifted.toFloat());
}

void appendFamily(const ExactReal& x, std::vector<ModulusClass>& out) {
    if (!x.isRational()) {
        return;
    }
    // j * p/q is an even integer  <=>  q | j and (j/q) p even.
    const auto p = boost::multiprecision::numerator(x.rationalPart());
    const auto q = boost::multiprecision::denominator(x.rationalPart());
    if (p == 0) {
        return;
    }
    const auto modulus = p % 2 == 0 ? q : 2 * q;
    out.push_back({modulus.convert_to<long long>(), {0}});
}

std::string describeSubspace(const std::vector<ModulusClass>& classes) {
    if (classes.empty()) {
        return "V = H: span{phi_j : j >= 1}";
    }
    std::ostringstream os;
    os << "V = span{phi_j : ";
    for (std::size_t i = 0; i < classes.size(); ++i) {
        if (i > 0) {
            os << " and ";
        }
        os << "j mod " << classes[i].modulus << " not in {";
        for (std::size_t r = 0; r < classes[i].residues.size(); ++r) {
            os << (r > 0 ? "," : "") << classes[i].residues[r];
        }
        os << "}";
    }
    os << "}";
    return os.str();
}

}  // namespace

namespace spectrum {

double eigenvalue(int j) {
    if (j < 1) {
        throw ValidationError("mode index must be >= 1");
    }
    const double w = j * kPi;
    return -w * w;
}

double decayExponent(int j) { return -eigenvalue(j); }

double eigenfunction(int j, double x) {
    if (j < 1) {
        throw ValidationError("mode index must be >= 1");
    }
    return std::numbers::sqrt2 * std::sin(j * kPi * x);
}

}  // namespace spectrum

Actuator::Actuator(ExactReal a, ExactReal b, ActuatorKind kind)
    : a_(std::move(a)), b_(std::move(b)), kind_(kind) {
    // One irrational tag per actuator: the difference must be representable.
    const ExactReal width = b_ - a_;
    if (sign(a_) < 0) {
        throw ValidationError("actuator endpoint a = " + a_.toString() + " is below 0");
    }
    if (compare(b_, ExactReal(1)) > 0) {
        throw ValidationError("actuator endpoint b = " + b_.toString() + " is above 1");
    }
    if (sign(width) <= 0) {
        throw ValidationError("degenerate actuator: need a < b, got " + describe());
    }
}

Actuator Actuator::parse(std::string_view a, std::string_view b, ActuatorKind kind) {
    return Actuator(ExactReal::parse(a), ExactReal::parse(b), kind);
}

std::string Actuator::describe() const {
    return "(" + a_.toString() + ", " + b_.toString() + ")";
}

std::string toString(ActuatorKind kind) {
    return kind == ActuatorKind::Lumped ? "lumped" : "distributed";
}

ActuatorKind parseActuatorKind(std::string_view text) {
    if (text == "lumped") {
        return ActuatorKind::Lumped;
    }
    if (text == "distributed") {
        return ActuatorKind::Distributed;
    }
    throw ValidationError("actuator kind must be 'lumped' or 'distributed'");
}

double overlap(const Actuator& actuator, int j) {
    if (j < 1) {
        throw ValidationError("mode index must be >= 1");
    }
    const Rational half(1, 2);
    const ExactReal mid = (actuator.a() + actuator.b()) * Rational(j) * half;
    const ExactReal width = (actuator.b() - actuator.a()) * Rational(j) * half;
    return 2.0 * std::numbers::sqrt2 * sinPi(mid) * sinPi(width) / (j * kPi);
}

bool overlapIsZero(const Actuator& actuator, int j) {
    if (j < 1) {
        throw ValidationError("mode index must be >= 1");
    }
    const Rational scale(j);
    return isEvenInteger((actuator.b() - actuator.a()) * scale) ||
           isEvenInteger((actuator.a() + actuator.b()) * scale);
}

double modeCoupling(const Actuator& actuator, int j, int k) {
    if (j < 1 || k < 1) {
        throw ValidationError("mode index must be >= 1");
    }
    if (j > k) {
        std::swap(j, k);
    }
    const auto& a = actuator.a();
    const auto& b = actuator.b();
    auto primitive = [&](int m, const ExactReal& x) {
        // \int cos(m pi x) dx = sin(m pi x) / (m pi)
        return sinPi(x * Rational(m)) / (m * kPi);
    };
    const int sum = j + k;
    double value = -(primitive(sum, b) - primitive(sum, a));
    if (j == k) {
        value += (b - a).toFloat();
    } else {
        const int diff = j - k;
        value += primitive(diff, b) - primitive(diff, a);
    }
    return value;
}

bool ControllabilityReport::isBlocked(long long j) const {
    for (const auto& cls : modulusCharacterization) {
        const long long residue = j % cls.modulus;
        if (std::find(cls.residues.begin(), cls.residues.end(), residue) !=
            cls.residues.end()) {
            return true;
        }
    }
    return false;
}

std::string toString(Verdict verdict) {
    return verdict == Verdict::Controllable ? "controllable" : "not-controllable";
}

Verdict parseVerdict(std::string_view text) {
    if (text == "controllable") {
        return Verdict::Controllable;
    }
    if (text == "not-controllable") {
        return Verdict::NotControllable;
    }
    throw ValidationError("unknown verdict '" + std::string(text) + "'");
}

ControllabilityReport blockedSet(const Actuator& actuator, int jMax) {
    if (jMax < 1) {
        throw ValidationError("jMax must be >= 1");
    }
    ControllabilityReport report;
    report.jMax = jMax;
    for (int j = 1; j <= jMax; ++j) {
        if (overlapIsZero(actuator, j)) {
            report.blockedPrefix.push_back(j);
        }
    }

    std::vector<ModulusClass> classes;
    appendFamily(actuator.b() - actuator.a(), classes);
    appendFamily(actuator.a() + actuator.b(), classes);
    std::sort(classes.begin(), classes.end(),
              [](const auto& x, const auto& y) { return x.modulus < y.modulus; });
    // Multiples of m' are already multiples of m whenever m | m'.
    std::vector<ModulusClass> reduced;
    for (const auto& cls : classes) {
        const bool covered = std::any_of(reduced.begin(), reduced.end(), [&](const auto& kept) {
            return cls.modulus % kept.modulus == 0;
        });
        if (!covered) {
            reduced.push_back(cls);
        }
    }
    report.modulusCharacterization = std::move(reduced);
    report.verdict = report.modulusCharacterization.empty() ? Verdict::Controllable
                                                            : Verdict::NotControllable;
    report.subspaceDescription = describeSubspace(report.modulusCharacterization);
    return report;
}

DistributedVerdict distributedControllability(const Actuator& omega, int jMax) {
    if (omega.kind() != ActuatorKind::Distributed) {
        throw ValidationError("distributedControllability needs a distributed actuator");
    }
    if (jMax < 1) {
        throw ValidationError("jMax must be >= 1");
    }
    DistributedVerdict out;
    out.witnesses.reserve(static_cast<std::size_t>(jMax));
    for (int j = 1; j <= jMax; ++j) {
        const double energy = modeCoupling(omega, j, j);
        if (!(energy > 0.0)) {
            throw DomainError("no positive witness for mode " + std::to_string(j) +
                              " on " + omega.describe());
        }
        out.witnesses.emplace_back(j, energy);
    }
    return out;
}

}  // namespace dirichlet
