#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "dirichlet/spectral.hpp"
#include "dirichlet/state.hpp"

namespace dirichlet {

enum class ControlKind { Lumped, Distributed };

std::string toString(ControlKind kind);
ControlKind parseControlKind(std::string_view text);

/// Exponential-sum control built from the modal basis e^{mu_k (T - s)}.
///
/// Lumped: u(s) = sum_k c_k e^{mu_k (T - s)}, entering every mode j through
/// beta_j. Distributed: u(x, s) = 1_omega(x) sum_k d_k e^{mu_k (T - s)} phi_k(x),
/// entering mode j through gamma_jk = \int_omega phi_j phi_k.
struct ControlFunction {
    ControlKind kind = ControlKind::Lumped;
    double horizon = 1.0;
    std::vector<int> modes;          ///< mode index of each basis function
    std::vector<double> exponents;   ///< mu_k
    std::vector<double> coeffs;      ///< c_k (lumped) or d_k (distributed)

    /// Scalar amplitude sum_k c_k e^{mu_k (T - s)}; for distributed controls
    /// use modeAmplitude().
    double operator()(double s) const;

    /// d_k e^{mu_k (T - s)} for basis entry k.
    double modeAmplitude(std::size_t k, double s) const;

    /// The same control seen from time t0: u'(s) = u(t0 + s).
    ControlFunction shifted(double t0) const;

    friend bool operator==(const ControlFunction&, const ControlFunction&) = default;
};

/// Zero control for the given kind and horizon.
ControlFunction zeroControl(ControlKind kind, double horizon);

/// G_jk = \int_0^T e^{(mu_j + mu_k)(T - s)} ds = (e^{(mu_j + mu_k) T} - 1) / (mu_j + mu_k).
/// Rejects repeated exponents and T <= 0.
Eigen::MatrixXd gramMatrix(const std::vector<double>& exponents, double horizon);

/// Ratio of extreme eigenvalues of a symmetric positive definite matrix.
double conditionNumber(const Eigen::MatrixXd& spd);

/// Find c with \int_0^T e^{mu_j (T - s)} u(s) ds = m_j for the exponential-sum u.
struct MomentProblem {
    std::vector<double> exponents;  ///< mu_j, distinct
    std::vector<double> moments;    ///< m_j
    double horizon = 1.0;
    std::vector<int> modes;         ///< optional labels; defaults to 1..N
};

struct MomentSolution {
    ControlFunction control;
    double residual = 0.0;          ///< ||G c - m||_inf
    double energy = 0.0;            ///< c^T G c = ||u||^2_{L2(0,T)}
    double conditionNumber = 0.0;   ///< of G
};

/// Solves (G + regularization I) c = m. At zero regularization a residual
/// above 1e-6 ||m||_inf raises ConditioningError.
MomentSolution solveMomentProblem(const MomentProblem& problem, double regularization = 0.0);

struct LumpedOptions {
    double regularization = 0.0;
    int maxModes = 8;
};

struct LumpedSynthesis {
    ControlFunction control;
    double predictedError = 0.0;
    double momentResidual = 0.0;
    double energy = 0.0;
    double conditionNumber = 0.0;
    std::vector<int> retainedModes;
    std::vector<int> blockedModes;   ///< in 1..N, left to free dynamics
};

/// Moment-method lumped control steering z0 towards z1 on modes 1..N.
///
/// Blocked modes (beta_j = 0) are left to free decay; if such a mode must move
/// by more than eps, BlockedModeError is raised naming the mode.
/// predictedError = sqrt(retained mismatch^2 + blocked displacement^2 +
/// sum_{j>N} (z1_j - e^{mu_j T} z0_j)^2).
LumpedSynthesis synthesizeLumped(const SpectralState& z0, const SpectralState& z1,
                                 const Actuator& actuator, double horizon, int modeCount,
                                 double eps, const LumpedOptions& options = {});

struct DistributedSynthesis {
    ControlFunction control;
    double predictedError = 0.0;
    double modalResidual = 0.0;
    double conditionNumber = 0.0;
};

/// Distributed control hitting modes 1..N exactly. Since the basis functions
/// 1_omega phi_k couple modes through gamma_jk, the coefficients solve
/// (Gamma o G) d = z1 - e^{mu T} z0 (Hadamard product, SPD).
DistributedSynthesis synthesizeDistributed(const SpectralState& z0, const SpectralState& z1,
                                           const Actuator& omega, double horizon,
                                           int modeCount, double eps);

/// ||u||^2 in L2(0, T) (lumped) or L2(0, T; L2(omega)) (distributed).
double controlEnergy(const ControlFunction& control, const Actuator& actuator);

}  // namespace dirichlet
