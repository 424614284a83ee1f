#pragma once

#include <string>
#include <vector>

#include "dirichlet/exact.hpp"

namespace dirichlet {

/// Dirichlet Laplacian on (0, 1): mu_j = -(j pi)^2, phi_j(x) = sqrt(2) sin(j pi x).
namespace spectrum {

double eigenvalue(int j);
double decayExponent(int j);  ///< lambda_j = -mu_j = (j pi)^2
double eigenfunction(int j, double x);

}  // namespace spectrum

enum class ActuatorKind { Distributed, Lumped };

/// Actuator support omega = (a, b) with exact endpoints, 0 <= a < b <= 1.
class Actuator {
public:
    Actuator(ExactReal a, ExactReal b, ActuatorKind kind = ActuatorKind::Lumped);

    /// Parses both endpoints in the exact-number grammar.
    static Actuator parse(std::string_view a, std::string_view b,
                          ActuatorKind kind = ActuatorKind::Lumped);

    const ExactReal& a() const noexcept { return a_; }
    const ExactReal& b() const noexcept { return b_; }
    ActuatorKind kind() const noexcept { return kind_; }

    double lower() const { return a_.toFloat(); }
    double upper() const { return b_.toFloat(); }

    /// "(a, b)" in the exact grammar.
    std::string describe() const;

    friend bool operator==(const Actuator&, const Actuator&) = default;

private:
    ExactReal a_;
    ExactReal b_;
    ActuatorKind kind_;
};

std::string toString(ActuatorKind kind);
ActuatorKind parseActuatorKind(std::string_view text);

/// beta_j = \int_a^b phi_j(x) dx = sqrt(2) (cos(j pi a) - cos(j pi b)) / (j pi).
///
/// Evaluated as 2 sqrt(2) sin(j pi (a+b)/2) sin(j pi (b-a)/2) / (j pi) with the
/// sine arguments reduced modulo 2 in exact arithmetic, so exact zeros come
/// out as 0.0.
double overlap(const Actuator& actuator, int j);

/// Exact test for beta_j == 0: j (b - a) or j (a + b) is an even integer.
bool overlapIsZero(const Actuator& actuator, int j);

/// gamma_jk = \int_a^b phi_j phi_k dx, closed form.
double modeCoupling(const Actuator& actuator, int j, int k);

/// Arithmetic description of one family of blocked modes: j is blocked when
/// j mod modulus is one of `residues`.
struct ModulusClass {
    long long modulus = 1;
    std::vector<long long> residues;

    friend bool operator==(const ModulusClass&, const ModulusClass&) = default;
};

enum class Verdict { Controllable, NotControllable };

std::string toString(Verdict verdict);
Verdict parseVerdict(std::string_view text);

/// Blocked set I = { j : beta_j = 0 } for a lumped actuator.
struct ControllabilityReport {
    Verdict verdict = Verdict::Controllable;
    int jMax = 0;
    std::vector<int> blockedPrefix;               ///< I restricted to [1, jMax]
    std::vector<ModulusClass> modulusCharacterization;  ///< exact, all j
    std::string subspaceDescription;              ///< V = span{phi_j : j not in I}

    /// Membership from the exact characterization (valid for every j >= 1).
    bool isBlocked(long long j) const;

    friend bool operator==(const ControllabilityReport&,
                           const ControllabilityReport&) = default;
};

inline constexpr int kDefaultJMax = 256;

ControllabilityReport blockedSet(const Actuator& actuator, int jMax = kDefaultJMax);

struct DistributedVerdict {
    Verdict verdict = Verdict::Controllable;
    /// (j, \int_omega phi_j^2) witnesses, each strictly positive.
    std::vector<std::pair<int, double>> witnesses;
};

/// Distributed control 1_omega u(x, t) is approximately controllable for every
/// interval of positive length; returns witnesses for j = 1..jMax.
DistributedVerdict distributedControllability(const Actuator& omega,
                                              int jMax = kDefaultJMax);

}  // namespace dirichlet
