#include "dirichlet/uniqueness.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "dirichlet/errors.hpp"

namespace dirichlet {
namespace {

constexpr double kDominance = 10.0;
constexpr int kMaxSweeps = 500;

}  // namespace

SampledSignal::SampledSignal(std::vector<double> t, std::vector<double> v, double T)
    : times(std::move(t)), values(std::move(v)), horizon(T) {
    if (times.empty()) {
        throw ValidationError("sampled signal needs at least one sample");
    }
    if (times.size() != values.size()) {
        throw ValidationError("sample times and values differ in length");
    }
    if (!std::isfinite(horizon) || horizon <= 0.0) {
        throw ValidationError("signal horizon must be positive");
    }
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (!std::isfinite(times[i]) || times[i] < 0.0 || times[i] > horizon) {
            throw ValidationError("sample time " + std::to_string(times[i]) +
                                  " outside [0, T]");
        }
        if (i > 0 && times[i] <= times[i - 1]) {
            throw ValidationError("sample times must be strictly increasing");
        }
        if (!std::isfinite(values[i])) {
            throw ValidationError("sample values must be finite");
        }
    }
}

std::vector<double> chebyshevNodes(double horizon, int count) {
    if (!std::isfinite(horizon) || horizon <= 0.0) {
        throw ValidationError("horizon must be positive");
    }
    if (count < 2) {
        throw ValidationError("need at least two Chebyshev nodes");
    }
    std::vector<double> nodes(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) {
        nodes[k] = 0.5 * horizon * (1.0 - std::cos(std::numbers::pi * k / (count - 1)));
    }
    return nodes;
}

bool isIdenticallyZero(const DirichletSeries& series, double horizon, double tol) {
    if (!(tol > 0.0)) {
        throw ValidationError("zero-test tolerance must be positive");
    }
    for (double t : chebyshevNodes(horizon, kZeroTestNodes)) {
        const auto v = evaluate(series, t);
        if (std::abs(v.value) + v.errorBound > tol) {
            return false;
        }
    }
    return true;
}

PeelResult peelLeading(const SampledSignal& signal, const std::vector<double>& knownLambdas,
                       int count) {
    if (count < 0 || static_cast<std::size_t>(count) > knownLambdas.size()) {
        throw ValidationError("peel count " + std::to_string(count) +
                              " exceeds the number of known exponents");
    }
    for (std::size_t i = 0; i < knownLambdas.size(); ++i) {
        if (!std::isfinite(knownLambdas[i])) {
            throw ValidationError("known exponents must be finite");
        }
        if (i > 0 && knownLambdas[i] <= knownLambdas[i - 1]) {
            throw ValidationError("known exponents must be strictly increasing");
        }
    }
    const std::size_t samples = signal.times.size();
    if (samples < 2 * static_cast<std::size_t>(count)) {
        throw ValidationError("need at least 2*count samples to peel " +
                              std::to_string(count) + " coefficients");
    }

    PeelResult result;
    const auto n = static_cast<std::size_t>(count);
    for (std::size_t j = 0; j + 1 < knownLambdas.size() && j < n; ++j) {
        if (knownLambdas[j + 1] - knownLambdas[j] < 1.0 / signal.horizon) {
            result.illConditioned = true;
        }
    }

    // basis[j][i] = exp(-lambda_j t_i)
    std::vector<std::vector<double>> basis(n, std::vector<double>(samples));
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < samples; ++i) {
            basis[j][i] = std::exp(-knownLambdas[j] * signal.times[i]);
        }
    }

    // Window j starts where e^{-lambda_j t} exceeds e^{-lambda_{j+1} t} by kDominance.
    std::vector<std::size_t> windowStart(n, 0);
    for (std::size_t j = 0; j < n; ++j) {
        if (j + 1 < knownLambdas.size()) {
            const double start = std::log(kDominance) / (knownLambdas[j + 1] - knownLambdas[j]);
            const auto it = std::lower_bound(signal.times.begin(), signal.times.end(), start);
            windowStart[j] = static_cast<std::size_t>(it - signal.times.begin());
        }
        if (samples - windowStart[j] < 2) {
            windowStart[j] = samples >= 2 ? samples - 2 : 0;
            result.illConditioned = true;
        }
    }

    std::vector<double> alpha(n, 0.0);
    auto refit = [&](std::size_t j) {
        double num = 0.0;
        double den = 0.0;
        for (std::size_t i = windowStart[j]; i < samples; ++i) {
            double r = signal.values[i];
            for (std::size_t k = 0; k < n; ++k) {
                if (k != j) {
                    r -= alpha[k] * basis[k][i];
                }
            }
            num += basis[j][i] * r;
            den += basis[j][i] * basis[j][i];
        }
        if (den == 0.0) {
            result.illConditioned = true;
            return 0.0;
        }
        return num / den;
    };

    bool converged = n == 0;
    double previousChange = std::numeric_limits<double>::infinity();
    for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
        double change = 0.0;
        double scale = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const double next = refit(j);
            change = std::max(change, std::abs(next - alpha[j]));
            alpha[j] = next;
            scale = std::max(scale, std::abs(next));
        }
        result.sweeps = sweep + 1;
        if (!std::isfinite(change) || (sweep > 10 && change > 2.0 * previousChange)) {
            break;
        }
        converged = change <= 1e-14 * (1.0 + scale);
        previousChange = change;
    }

    if (!converged) {
        // Fixed point of the sweeps: sum_{i in W_j} e_j (v - sum_k alpha_k e_k) = 0.
        Eigen::MatrixXd system = Eigen::MatrixXd::Zero(count, count);
        Eigen::VectorXd rhs = Eigen::VectorXd::Zero(count);
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t i = windowStart[j]; i < samples; ++i) {
                rhs(j) += basis[j][i] * signal.values[i];
                for (std::size_t k = 0; k < n; ++k) {
                    system(j, k) += basis[j][i] * basis[k][i];
                }
            }
        }
        const Eigen::VectorXd solved = system.colPivHouseholderQr().solve(rhs);
        for (std::size_t j = 0; j < n; ++j) {
            alpha[j] = solved(j);
        }
        result.illConditioned = true;
    }

    for (std::size_t j = 0; j < n; ++j) {
        result.recovered.push_back({alpha[j], knownLambdas[j]});
    }
    for (std::size_t i = 0; i < samples; ++i) {
        double r = signal.values[i];
        for (std::size_t j = 0; j < n; ++j) {
            r -= alpha[j] * basis[j][i];
        }
        result.residualNorm = std::max(result.residualNorm, std::abs(r));
    }
    return result;
}

}  // namespace dirichlet
