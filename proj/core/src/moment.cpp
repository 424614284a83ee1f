#include "dirichlet/moment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "dirichlet/errors.hpp"

namespace dirichlet {
namespace {

constexpr double kSmallExponentSum = 1e-12;
constexpr double kResidualThreshold = 1e-6;

// \int_0^T e^{sigma (T - s)} ds
double gramEntry(double sigma, double horizon) {
    if (std::abs(sigma) < kSmallExponentSum) {
        const double t = horizon;
        return t + sigma * t * t / 2.0 + sigma * sigma * t * t * t / 6.0;
    }
    return std::expm1(sigma * horizon) / sigma;
}

void requireHorizon(double horizon) {
    if (!std::isfinite(horizon) || horizon <= 0.0) {
        throw ValidationError("horizon T must be positive, got " + std::to_string(horizon));
    }
}

void requireFinite(const SpectralState& z, const char* name) {
    for (double v : z.coeffs) {
        if (!std::isfinite(v)) {
            throw ValidationError(std::string(name) + " has non-finite coordinates");
        }
    }
}

// Solve with two steps of iterative refinement.
Eigen::VectorXd refinedSolve(const Eigen::MatrixXd& a, const Eigen::VectorXd& b) {
    const auto qr = a.colPivHouseholderQr();
    Eigen::VectorXd x = qr.solve(b);
    for (int i = 0; i < 2; ++i) {
        const Eigen::VectorXd r = b - a * x;
        x += qr.solve(r);
    }
    return x;
}

double freeDisplacement(const SpectralState& z0, const SpectralState& z1, int j,
                        double horizon) {
    return z1(j) - std::exp(spectrum::eigenvalue(j) * horizon) * z0(j);
}

double tailEnergy(const SpectralState& z0, const SpectralState& z1, int modeCount,
                  double horizon) {
    const auto last = static_cast<int>(std::max(z0.size(), z1.size()));
    double sum = 0.0;
    for (int j = modeCount + 1; j <= last; ++j) {
        const double d = freeDisplacement(z0, z1, j, horizon);
        sum += d * d;
    }
    return sum;
}

std::vector<double> heatExponents(const std::vector<int>& modes) {
    std::vector<double> mu;
    mu.reserve(modes.size());
    for (int j : modes) {
        mu.push_back(spectrum::eigenvalue(j));
    }
    return mu;
}

}  // namespace

std::string toString(ControlKind kind) {
    return kind == ControlKind::Lumped ? "lumped" : "distributed";
}

ControlKind parseControlKind(std::string_view text) {
    if (text == "lumped") {
        return ControlKind::Lumped;
    }
    if (text == "distributed") {
        return ControlKind::Distributed;
    }
    throw ValidationError("control kind must be 'lumped' or 'distributed'");
}

double ControlFunction::operator()(double s) const {
    if (kind != ControlKind::Lumped) {
        throw ValidationError("a distributed control has no scalar amplitude");
    }
    double u = 0.0;
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        u += modeAmplitude(k, s);
    }
    return u;
}

double ControlFunction::modeAmplitude(std::size_t k, double s) const {
    return coeffs.at(k) * std::exp(exponents.at(k) * (horizon - s));
}

ControlFunction ControlFunction::shifted(double t0) const {
    ControlFunction out = *this;
    out.horizon = horizon - t0;
    return out;
}

ControlFunction zeroControl(ControlKind kind, double horizon) {
    ControlFunction u;
    u.kind = kind;
    u.horizon = horizon;
    return u;
}

Eigen::MatrixXd gramMatrix(const std::vector<double>& exponents, double horizon) {
    requireHorizon(horizon);
    std::vector<double> sorted = exponents;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (!std::isfinite(sorted[i])) {
            throw ValidationError("Gram exponents must be finite");
        }
        if (i > 0 && sorted[i] == sorted[i - 1]) {
            throw ValidationError("repeated exponent " + std::to_string(sorted[i]) +
                                  " makes the Gram matrix singular");
        }
    }
    const auto n = static_cast<Eigen::Index>(exponents.size());
    Eigen::MatrixXd gram(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index k = 0; k <= j; ++k) {
            gram(j, k) = gram(k, j) = gramEntry(exponents[j] + exponents[k], horizon);
        }
    }
    return gram;
}

double conditionNumber(const Eigen::MatrixXd& spd) {
    if (spd.size() == 0) {
        return 1.0;
    }
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(spd, Eigen::EigenvaluesOnly);
    const double lo = eig.eigenvalues().minCoeff();
    const double hi = eig.eigenvalues().maxCoeff();
    if (lo <= 0.0) {
        return std::numeric_limits<double>::infinity();
    }
    return hi / lo;
}

MomentSolution solveMomentProblem(const MomentProblem& problem, double regularization) {
    requireHorizon(problem.horizon);
    const std::size_t n = problem.exponents.size();
    if (n == 0) {
        throw ValidationError("moment problem needs at least one mode");
    }
    if (problem.moments.size() != n) {
        throw ValidationError("moment and exponent counts differ");
    }
    if (!problem.modes.empty() && problem.modes.size() != n) {
        throw ValidationError("mode labels and exponent counts differ");
    }
    if (!std::isfinite(regularization) || regularization < 0.0) {
        throw ValidationError("regularization must be finite and nonnegative");
    }
    Eigen::VectorXd m(static_cast<Eigen::Index>(n));
    for (std::size_t j = 0; j < n; ++j) {
        if (!std::isfinite(problem.moments[j])) {
            const int label = problem.modes.empty() ? static_cast<int>(j + 1) : problem.modes[j];
            throw BlockedModeError(label, "moment for mode " + std::to_string(label) +
                                              " is not finite (zero actuator overlap?)");
        }
        m(static_cast<Eigen::Index>(j)) = problem.moments[j];
    }

    const Eigen::MatrixXd gram = gramMatrix(problem.exponents, problem.horizon);
    Eigen::MatrixXd system = gram;
    system.diagonal().array() += regularization;
    const Eigen::VectorXd c = refinedSolve(system, m);

    MomentSolution out;
    out.residual = (gram * c - m).lpNorm<Eigen::Infinity>();
    out.energy = c.dot(gram * c);
    out.conditionNumber = conditionNumber(gram);
    const double scale = m.lpNorm<Eigen::Infinity>();
    if (regularization == 0.0 && out.residual > kResidualThreshold * scale) {
        std::ostringstream os;
        os << "moment solve residual " << out.residual << " exceeds "
           << kResidualThreshold << " * ||m|| (Gram condition number "
           << out.conditionNumber << "); regularize or drop modes";
        throw ConditioningError(os.str());
    }

    out.control.kind = ControlKind::Lumped;
    out.control.horizon = problem.horizon;
    out.control.exponents = problem.exponents;
    out.control.coeffs.assign(c.data(), c.data() + c.size());
    if (problem.modes.empty()) {
        for (std::size_t j = 0; j < n; ++j) {
            out.control.modes.push_back(static_cast<int>(j + 1));
        }
    } else {
        out.control.modes = problem.modes;
    }
    return out;
}

LumpedSynthesis synthesizeLumped(const SpectralState& z0, const SpectralState& z1,
                                 const Actuator& actuator, double horizon, int modeCount,
                                 double eps, const LumpedOptions& options) {
    requireHorizon(horizon);
    requireFinite(z0, "z0");
    requireFinite(z1, "z1");
    if (actuator.kind() != ActuatorKind::Lumped) {
        throw ValidationError("synthesizeLumped needs a lumped actuator");
    }
    if (modeCount < 1 || modeCount > options.maxModes) {
        throw ValidationError("mode count N = " + std::to_string(modeCount) +
                              " outside [1, " + std::to_string(options.maxModes) + "]");
    }
    if (!(eps > 0.0)) {
        throw ValidationError("eps must be positive");
    }

    LumpedSynthesis out;
    MomentProblem problem;
    problem.horizon = horizon;
    std::vector<double> betas;
    double blockedEnergy = 0.0;
    for (int j = 1; j <= modeCount; ++j) {
        const double d = freeDisplacement(z0, z1, j, horizon);
        if (overlapIsZero(actuator, j)) {
            if (std::abs(d) > eps) {
                std::ostringstream os;
                os << "mode " << j << " is blocked by actuator omega = " << actuator.describe()
                   << " (beta_" << j << " = 0) but must move by " << std::abs(d)
                   << " > eps; project the target onto V";
                throw BlockedModeError(j, os.str());
            }
            blockedEnergy += d * d;
            out.blockedModes.push_back(j);
            continue;
        }
        const double beta = overlap(actuator, j);
        betas.push_back(beta);
        problem.modes.push_back(j);
        problem.exponents.push_back(spectrum::eigenvalue(j));
        problem.moments.push_back(d / beta);
    }
    out.retainedModes = problem.modes;

    double mismatch = 0.0;
    if (problem.modes.empty()) {
        out.control = zeroControl(ControlKind::Lumped, horizon);
        out.conditionNumber = 1.0;
    } else {
        const MomentSolution solved = solveMomentProblem(problem, options.regularization);
        out.control = solved.control;
        out.momentResidual = solved.residual;
        out.energy = solved.energy;
        out.conditionNumber = solved.conditionNumber;
        const Eigen::MatrixXd gram = gramMatrix(problem.exponents, horizon);
        const Eigen::VectorXd c =
            Eigen::Map<const Eigen::VectorXd>(solved.control.coeffs.data(),
                                              static_cast<Eigen::Index>(solved.control.coeffs.size()));
        const Eigen::VectorXd achieved = gram * c;
        for (std::size_t j = 0; j < betas.size(); ++j) {
            const double e = betas[j] * (achieved(static_cast<Eigen::Index>(j)) - problem.moments[j]);
            mismatch += e * e;
        }
    }
    out.predictedError =
        std::sqrt(mismatch + blockedEnergy + tailEnergy(z0, z1, modeCount, horizon));
    return out;
}

DistributedSynthesis synthesizeDistributed(const SpectralState& z0, const SpectralState& z1,
                                           const Actuator& omega, double horizon,
                                           int modeCount, double eps) {
    requireHorizon(horizon);
    requireFinite(z0, "z0");
    requireFinite(z1, "z1");
    if (omega.kind() != ActuatorKind::Distributed) {
        throw ValidationError("synthesizeDistributed needs a distributed actuator");
    }
    if (modeCount < 1) {
        throw ValidationError("mode count N must be >= 1");
    }
    if (!(eps > 0.0)) {
        throw ValidationError("eps must be positive");
    }

    std::vector<int> modes(static_cast<std::size_t>(modeCount));
    for (int j = 1; j <= modeCount; ++j) {
        modes[j - 1] = j;
    }
    const std::vector<double> mu = heatExponents(modes);
    const Eigen::MatrixXd gram = gramMatrix(mu, horizon);
    Eigen::MatrixXd system(modeCount, modeCount);
    Eigen::VectorXd target(modeCount);
    for (int j = 0; j < modeCount; ++j) {
        target(j) = freeDisplacement(z0, z1, j + 1, horizon);
        for (int k = 0; k <= j; ++k) {
            system(j, k) = system(k, j) = modeCoupling(omega, j + 1, k + 1) * gram(j, k);
        }
    }
    const Eigen::VectorXd d = refinedSolve(system, target);
    const Eigen::VectorXd miss = system * d - target;

    DistributedSynthesis out;
    out.control.kind = ControlKind::Distributed;
    out.control.horizon = horizon;
    out.control.modes = modes;
    out.control.exponents = mu;
    out.control.coeffs.assign(d.data(), d.data() + d.size());
    out.modalResidual = miss.lpNorm<Eigen::Infinity>();
    out.conditionNumber = conditionNumber(system);
    out.predictedError =
        std::sqrt(miss.squaredNorm() + tailEnergy(z0, z1, modeCount, horizon));
    if (out.modalResidual > kResidualThreshold * std::max(1.0, target.lpNorm<Eigen::Infinity>())) {
        throw ConditioningError("distributed modal solve residual " +
                                std::to_string(out.modalResidual) + " too large");
    }
    return out;
}

double controlEnergy(const ControlFunction& control, const Actuator& actuator) {
    if (control.coeffs.empty()) {
        return 0.0;
    }
    const Eigen::MatrixXd gram = gramMatrix(control.exponents, control.horizon);
    const auto n = static_cast<Eigen::Index>(control.coeffs.size());
    const Eigen::VectorXd c = Eigen::Map<const Eigen::VectorXd>(control.coeffs.data(), n);
    if (control.kind == ControlKind::Lumped) {
        return c.dot(gram * c);
    }
    Eigen::MatrixXd weighted = gram;
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index k = 0; k < n; ++k) {
            weighted(j, k) *= modeCoupling(actuator, control.modes[j], control.modes[k]);
        }
    }
    return c.dot(weighted * c);
}

}  // namespace dirichlet
