#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "dirichlet/moment.hpp"
#include "dirichlet/series.hpp"
#include "dirichlet/spectral.hpp"
#include "dirichlet/state.hpp"
#include "dirichlet/uniqueness.hpp"

namespace dirichlet {

struct Trajectory {
    std::vector<double> times;
    std::vector<SpectralState> states;
    std::optional<double> terminalError;  ///< ||z(T) - z1|| when a target was given

    const SpectralState& terminal() const { return states.back(); }
};

inline constexpr int kMinSteps = 16;

/// Modal solution of z' = A z + B u by variation of constants on a uniform
/// grid of `steps` intervals over [0, T]. Exponential-sum controls are
/// convolved in closed form. The simulated mode count is z0.size().
Trajectory propagate(const SpectralState& z0, const ControlFunction& control,
                     const Actuator& actuator, double horizon, int steps,
                     const std::optional<SpectralState>& target = std::nullopt);

/// Same for an arbitrary lumped control u(s); each step's convolution
/// integral is computed with adaptive Gauss-Legendre panels.
Trajectory propagate(const SpectralState& z0, const std::function<double(double)>& control,
                     const Actuator& actuator, double horizon, int steps,
                     const std::optional<SpectralState>& target = std::nullopt,
                     double tolerance = 1e-10);

/// B* S*(t) y as a Dirichlet series in t.
///
/// Lumped: sum_j y_j beta_j e^{mu_j t}. Distributed: ||1_omega S(t) y||^2 =
/// sum_{j,k} y_j y_k gamma_jk e^{(mu_j + mu_k) t}, which vanishes exactly when
/// 1_omega S(t) y does.
DirichletSeries observabilitySeries(const SpectralState& y, const Actuator& actuator);

/// observabilitySeries sampled at `samples` uniform points of [0, T].
SampledSignal observabilitySignal(const SpectralState& y, const Actuator& actuator,
                                  double horizon, int samples);

/// Zeroes the coordinates whose index lies in the blocked set I.
SpectralState projectOntoV(const SpectralState& y, const ControllabilityReport& report);

}  // namespace dirichlet
