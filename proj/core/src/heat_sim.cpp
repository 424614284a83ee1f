#include "dirichlet/heat_sim.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <string>

#include "dirichlet/errors.hpp"
#include "dirichlet/quadrature.hpp"

namespace dirichlet {
namespace {

// \int_0^t e^{sigma s} ds
double growthIntegral(double sigma, double t) {
    if (std::abs(sigma * t) < 1e-12) {
        return t + sigma * t * t / 2.0;
    }
    return std::expm1(sigma * t) / sigma;
}

void validateCommon(const SpectralState& z0, double horizon, int steps,
                    const std::optional<SpectralState>& target) {
    if (z0.size() == 0) {
        throw ValidationError("initial state needs at least one mode");
    }
    for (double v : z0.coeffs) {
        if (!std::isfinite(v)) {
            throw ValidationError("initial state has non-finite coordinates");
        }
    }
    if (!std::isfinite(horizon) || horizon <= 0.0) {
        throw ValidationError("simulation horizon must be positive");
    }
    if (steps < kMinSteps) {
        throw ValidationError("need at least " + std::to_string(kMinSteps) + " time steps");
    }
    if (target && target->size() > z0.size()) {
        throw ValidationError("target has " + std::to_string(target->size()) +
                              " modes but only " + std::to_string(z0.size()) +
                              " are simulated");
    }
}

std::vector<double> uniformGrid(double horizon, int steps) {
    std::vector<double> times(static_cast<std::size_t>(steps) + 1);
    for (int i = 0; i <= steps; ++i) {
        times[i] = horizon * i / steps;
    }
    times.back() = horizon;
    return times;
}

void finish(Trajectory& traj, const std::optional<SpectralState>& target) {
    if (!target) {
        return;
    }
    const auto& z = traj.terminal();
    double sum = 0.0;
    for (std::size_t j = 1; j <= z.size(); ++j) {
        const double d = z(static_cast<int>(j)) - (*target)(static_cast<int>(j));
        sum += d * d;
    }
    traj.terminalError = std::sqrt(sum);
}

}  // namespace

Trajectory propagate(const SpectralState& z0, const ControlFunction& control,
                     const Actuator& actuator, double horizon, int steps,
                     const std::optional<SpectralState>& target) {
    validateCommon(z0, horizon, steps, target);
    const std::size_t basis = control.coeffs.size();
    if (control.exponents.size() != basis || control.modes.size() != basis) {
        throw ValidationError("control has inconsistent mode, exponent and coefficient counts");
    }
    const bool lumped = control.kind == ControlKind::Lumped;
    if (lumped != (actuator.kind() == ActuatorKind::Lumped)) {
        throw ValidationError("control kind " + toString(control.kind) +
                              " does not match actuator kind " + toString(actuator.kind()));
    }
    for (std::size_t k = 0; k < basis; ++k) {
        if (!std::isfinite(control.coeffs[k]) || !std::isfinite(control.exponents[k])) {
            throw ValidationError("control has non-finite values");
        }
        if (control.modes[k] < 1 || static_cast<std::size_t>(control.modes[k]) > z0.size()) {
            throw ValidationError("control acts on mode " + std::to_string(control.modes[k]) +
                                  " but only " + std::to_string(z0.size()) +
                                  " modes are simulated");
        }
    }

    const int modes = static_cast<int>(z0.size());
    // weight[j][k]: how basis function k forces mode j.
    std::vector<std::vector<double>> weight(modes, std::vector<double>(basis));
    for (int j = 1; j <= modes; ++j) {
        const double beta = lumped ? overlap(actuator, j) : 0.0;
        for (std::size_t k = 0; k < basis; ++k) {
            weight[j - 1][k] = lumped ? beta : modeCoupling(actuator, j, control.modes[k]);
        }
    }

    Trajectory traj;
    traj.times = uniformGrid(horizon, steps);
    traj.states.reserve(traj.times.size());
    for (double t : traj.times) {
        SpectralState z{std::vector<double>(modes)};
        for (int j = 1; j <= modes; ++j) {
            const double mu = spectrum::eigenvalue(j);
            double value = std::exp(mu * t) * z0(j);
            for (std::size_t k = 0; k < basis; ++k) {
                // \int_0^t e^{mu (t-s)} e^{mu_k (Tc - s)} ds
                const double mk = control.exponents[k];
                const double conv = std::exp(mk * (control.horizon - t)) *
                                    growthIntegral(mu + mk, t);
                value += weight[j - 1][k] * control.coeffs[k] * conv;
            }
            z.coeffs[j - 1] = value;
        }
        traj.states.push_back(std::move(z));
    }
    finish(traj, target);
    return traj;
}

Trajectory propagate(const SpectralState& z0, const std::function<double(double)>& control,
                     const Actuator& actuator, double horizon, int steps,
                     const std::optional<SpectralState>& target, double tolerance) {
    validateCommon(z0, horizon, steps, target);
    if (actuator.kind() != ActuatorKind::Lumped) {
        throw ValidationError("tabulated controls are scalar; use a lumped actuator");
    }
    const int modes = static_cast<int>(z0.size());
    std::vector<double> beta(modes);
    for (int j = 1; j <= modes; ++j) {
        beta[j - 1] = overlap(actuator, j);
    }

    Trajectory traj;
    traj.times = uniformGrid(horizon, steps);
    traj.states.reserve(traj.times.size());
    traj.states.push_back(z0);
    for (std::size_t i = 1; i < traj.times.size(); ++i) {
        const double t0 = traj.times[i - 1];
        const double t1 = traj.times[i];
        const auto& prev = traj.states.back();
        SpectralState z{std::vector<double>(modes)};
        for (int j = 1; j <= modes; ++j) {
            const double mu = spectrum::eigenvalue(j);
            double value = std::exp(mu * (t1 - t0)) * prev(j);
            if (beta[j - 1] != 0.0) {
                const auto integrand = [&](double s) {
                    const double u = control(s);
                    if (!std::isfinite(u)) {
                        throw ValidationError("control is not finite at s = " + std::to_string(s));
                    }
                    return std::exp(mu * (t1 - s)) * u;
                };
                value += beta[j - 1] * integrateGaussLegendre(integrand, t0, t1, tolerance);
            }
            z.coeffs[j - 1] = value;
        }
        traj.states.push_back(std::move(z));
    }
    finish(traj, target);
    return traj;
}

DirichletSeries observabilitySeries(const SpectralState& y, const Actuator& actuator) {
    if (y.size() == 0) {
        throw ValidationError("observed state needs at least one mode");
    }
    const int modes = static_cast<int>(y.size());
    std::vector<Term> terms;
    if (actuator.kind() == ActuatorKind::Lumped) {
        for (int j = 1; j <= modes; ++j) {
            terms.push_back({y(j) * overlap(actuator, j), spectrum::decayExponent(j)});
        }
        return DirichletSeries(std::move(terms));
    }
    // Exponents (j^2 + k^2) pi^2 repeat across pairs; accumulate by exponent.
    std::map<long long, double> byIndex;
    for (int j = 1; j <= modes; ++j) {
        for (int k = 1; k <= modes; ++k) {
            const double weight = y(j) * y(k);
            byIndex[static_cast<long long>(j) * j + static_cast<long long>(k) * k] +=
                weight == 0.0 ? 0.0 : weight * modeCoupling(actuator, j, k);
        }
    }
    constexpr double pi2 = std::numbers::pi * std::numbers::pi;
    for (const auto& [index, alpha] : byIndex) {
        terms.push_back({alpha, static_cast<double>(index) * pi2});
    }
    return DirichletSeries(std::move(terms));
}

SampledSignal observabilitySignal(const SpectralState& y, const Actuator& actuator,
                                  double horizon, int samples) {
    if (samples < 2) {
        throw ValidationError("need at least two samples");
    }
    if (!std::isfinite(horizon) || horizon <= 0.0) {
        throw ValidationError("observation horizon must be positive");
    }
    const DirichletSeries series = observabilitySeries(y, actuator);
    std::vector<double> times(static_cast<std::size_t>(samples));
    std::vector<double> values(times.size());
    for (int i = 0; i < samples; ++i) {
        times[i] = i == samples - 1 ? horizon : horizon * i / (samples - 1);
        values[i] = evaluate(series, times[i]).value;
    }
    return SampledSignal(std::move(times), std::move(values), horizon);
}

SpectralState projectOntoV(const SpectralState& y, const ControllabilityReport& report) {
    SpectralState out = y;
    for (std::size_t j = 1; j <= out.size(); ++j) {
        if (report.isBlocked(static_cast<long long>(j))) {
            out.coeffs[j - 1] = 0.0;
        }
    }
    return out;
}

}  // namespace dirichlet
