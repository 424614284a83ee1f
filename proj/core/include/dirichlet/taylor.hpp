#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "dirichlet/series.hpp"

namespace dirichlet {

/// Power-series expansion of a Dirichlet series about a center tau > 0:
///
///   phi(t) = sum_n b_n (t - tau)^n,   b_n = sum_j alpha_j e^{-lambda_j tau} (-lambda_j)^n / n!
///
/// valid on (0, 2 tau). `coeffBounds[n]` holds
/// a_n = sum_j |alpha_j| e^{-lambda_j tau} lambda_j^n / n! (explicit terms plus
/// a certified tail contribution), so |b_n| <= a_n.
struct TaylorExpansion {
    double center = 1.0;
    std::vector<double> coeffs;
    std::vector<double> coeffBounds;
    double sumAbsAlpha = 0.0;  ///< S0, including the tail bound.

    std::size_t order() const noexcept { return coeffs.empty() ? 0 : coeffs.size() - 1; }

    friend bool operator==(const TaylorExpansion&, const TaylorExpansion&) = default;
};

struct RemainderCertificate {
    std::size_t order = 0;
    double t = 0.0;
    double bound = 0.0;
};

/// Coefficients b_0..b_order about `tau`. Requires tau > 0 and strictly
/// positive exponents (see shiftNormalize()).
TaylorExpansion expand(const DirichletSeries& series, double tau, std::size_t order);

/// Certified bound on |phi(t) - sum_{j<=n} b_j (t - tau)^j|:
///
///   S0 / sqrt(2 pi (n + 1)) * r^{n+1} / (1 - r),   r = |t - tau| / tau.
///
/// Follows from e^{-lambda tau} lambda^n <= (n / (e tau))^n and Stirling's
/// lower bound n! >= sqrt(2 pi n) (n/e)^n, giving a_n <= S0 / (tau^n sqrt(2 pi n)).
/// Requires 0 < t < 2 tau and 1 <= n <= order.
RemainderCertificate remainderBound(const TaylorExpansion& expansion, std::size_t n,
                                    double t);

/// sum_{j<=n} b_j (t - tau)^j by Horner's rule.
double partialSum(const TaylorExpansion& expansion, std::size_t n, double t);

/// Full-order partial sum with the matching remainder certificate. Like
/// evaluate().value, this covers the explicit terms; a tail's own value is
/// bounded by evaluate().errorBound.
SeriesValue evaluateViaExpansion(const TaylorExpansion& expansion, double t);

/// Smallest order n in [1, maxOrder] whose certified remainder at t is at
/// most `tolerance`, or nullopt if none is.
std::optional<std::size_t> selectOrder(const DirichletSeries& series, double tau,
                                       double t, double tolerance,
                                       std::size_t maxOrder = 200);

}  // namespace dirichlet
