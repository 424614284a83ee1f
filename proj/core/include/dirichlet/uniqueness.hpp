#pragma once

#include <vector>

#include "dirichlet/series.hpp"

namespace dirichlet {

/// Samples (t_i, v_i) of a signal on [0, T], t strictly increasing.
struct SampledSignal {
    std::vector<double> times;
    std::vector<double> values;
    double horizon = 0.0;

    SampledSignal() = default;
    SampledSignal(std::vector<double> t, std::vector<double> v, double T);

    friend bool operator==(const SampledSignal&, const SampledSignal&) = default;
};

/// Chebyshev-Lobatto points of [0, T] (both ends included), increasing.
std::vector<double> chebyshevNodes(double horizon, int count);

inline constexpr int kZeroTestNodes = 129;

/// True iff |phi(t)| + errorBound(t) <= tol at every Chebyshev node of
/// [0, T]. Tolerance is absolute.
bool isIdenticallyZero(const DirichletSeries& series, double horizon, double tol);

struct PeelResult {
    std::vector<Term> recovered;  ///< (alpha estimate, lambda), increasing lambda
    double residualNorm = 0.0;    ///< max |signal - fit| over the samples
    bool illConditioned = false;  ///< some gap lambda_{j+1} - lambda_j < 1/T
    int sweeps = 0;

    friend bool operator==(const PeelResult&, const PeelResult&) = default;
};

/// Recovers alpha_1..alpha_count for known exponents by peeling: each
/// coefficient is fit by least squares on the late-time window where its
/// exponential outweighs the next one by a factor 10, the fitted term is
/// removed, and the pass is repeated with all other estimates removed until
/// the estimates settle.
PeelResult peelLeading(const SampledSignal& signal, const std::vector<double>& knownLambdas,
                       int count);

}  // namespace dirichlet
