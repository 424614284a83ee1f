#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace dirichlet {

/// One term alpha * exp(-lambda * t) of an exponential Dirichlet series.
struct Term {
    double alpha = 0.0;
    double lambda = 0.0;

    friend bool operator==(const Term&, const Term&) = default;
};

/// Certified description of the terms dropped from a truncated series.
///
/// The truncated terms satisfy sum |alpha_j| <= sumBound() and
/// lambda_j >= lambdaFloor(). Optional weighted bounds b_k certify
/// sum |alpha_j| / lambda_j^k <= b_k; indices not supplied are derived from
/// the nearest supplied lower index through the floor.
class TailModel {
public:
    /// `weightedBounds[0]`, when present, must equal `sumBound`. Supplied
    /// bounds are tightened with b_k <= b_{k-1} / lambdaFloor.
    TailModel(double sumBound, double lambdaFloor,
              std::vector<double> weightedBounds = {});

    double sumBound() const noexcept { return weighted_.front(); }
    double lambdaFloor() const noexcept { return floor_; }

    /// Bound on sum |alpha_j| / lambda_j^k over the truncated terms.
    double weightedSumBound(std::size_t k) const;

    /// The explicitly stored (tightened) bounds, index k = power.
    std::span<const double> weightedBounds() const noexcept { return weighted_; }

    friend bool operator==(const TailModel&, const TailModel&) = default;

private:
    double floor_;
    std::vector<double> weighted_;
};

/// Certified value of a series: |true value - value| <= errorBound.
struct SeriesValue {
    double value = 0.0;
    double errorBound = 0.0;
};

/// Finite explicit exponential sum with an optional certified tail.
///
/// Terms are stored in strictly increasing exponent order. Duplicate
/// exponents are rejected; use merge() to combine series that share them.
class DirichletSeries {
public:
    explicit DirichletSeries(std::vector<Term> terms,
                             std::optional<TailModel> tail = std::nullopt);

    std::span<const Term> terms() const noexcept { return terms_; }
    const std::optional<TailModel>& tail() const noexcept { return tail_; }
    std::size_t size() const noexcept { return terms_.size(); }

    double minExponent() const noexcept { return terms_.front().lambda; }

    /// Sum of |alpha_j| over explicit terms plus the tail's sumBound.
    double sumAbsAlpha() const noexcept;

    friend bool operator==(const DirichletSeries&, const DirichletSeries&) = default;

private:
    std::vector<Term> terms_;
    std::optional<TailModel> tail_;
};

/// Value at t. Terms are accumulated in increasing-exponent order with
/// Neumaier compensation. Rejects non-finite t, and t < 0 when a tail is
/// present.
SeriesValue evaluate(const DirichletSeries& series, double t);

struct ShiftedSeries {
    DirichletSeries series;
    double shift = 0.0;
};

/// Moves the smallest exponent to 1:
/// evaluate(original, t) == exp(-shift * t) * evaluate(shifted, t).
ShiftedSeries shiftNormalize(const DirichletSeries& series);

/// Replaces alpha_j by alpha_j / lambda_j^k, so that the k-th derivative of
/// the result equals (-1)^k times the input. Requires every exponent > 0.
DirichletSeries antiderivativeReduce(const DirichletSeries& series, unsigned k);

/// Union of two series; coefficients of shared exponents are added and
/// tails are combined.
DirichletSeries merge(const DirichletSeries& a, const DirichletSeries& b);

}  // namespace dirichlet
