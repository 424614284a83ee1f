#include "dirichlet/taylor.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "compensated.hpp"
#include "dirichlet/errors.hpp"

namespace dirichlet {
namespace {

// Beyond this, exp(-lambda * tau) is subnormal and the iterative update
// would lose all precision; switch to log space.
constexpr double kLogSpaceThreshold = 700.0;

double certifiedTail(double sumAbsAlpha, double ratio, std::size_t n) {
    if (ratio == 0.0) {
        return 0.0;
    }
    const double np1 = static_cast<double>(n + 1);
    return sumAbsAlpha / std::sqrt(2.0 * std::numbers::pi * np1) *
           std::pow(ratio, np1) / (1.0 - ratio);
}

double expansionRatio(double center, double t) {
    if (!std::isfinite(t) || t <= 0.0 || t >= 2.0 * center) {
        throw ValidationError("t = " + std::to_string(t) +
                              " outside the expansion interval (0, 2*tau)");
    }
    return std::abs(t - center) / center;
}

// max over lambda >= floor of e^{-lambda tau} lambda^n / n!
double tailCoefficientBound(const TailModel& tail, double tau, std::size_t n) {
    const double dn = static_cast<double>(n);
    const double peak = std::max(dn / tau, tail.lambdaFloor());
    const double logTerm = -peak * tau + dn * std::log(peak) - std::lgamma(dn + 1.0);
    return tail.sumBound() * std::exp(logTerm);
}

}  // namespace

TaylorExpansion expand(const DirichletSeries& series, double tau, std::size_t order) {
    if (!std::isfinite(tau) || tau <= 0.0) {
        throw ValidationError("expansion center tau must be positive");
    }
    for (const auto& term : series.terms()) {
        if (term.lambda <= 0.0) {
            throw ValidationError("expand requires positive exponents "
                                  "(apply shiftNormalize first)");
        }
    }

    const std::size_t count = order + 1;
    std::vector<detail::CompensatedSum> coeffSums(count);
    std::vector<detail::CompensatedSum> boundSums(count);

    for (const auto& term : series.terms()) {
        const double decay = term.lambda * tau;
        double current = term.alpha * std::exp(-decay);
        coeffSums[0].add(current);
        boundSums[0].add(std::abs(current));
        if (decay <= kLogSpaceThreshold) {
            for (std::size_t n = 1; n < count; ++n) {
                current *= -term.lambda / static_cast<double>(n);
                coeffSums[n].add(current);
                boundSums[n].add(std::abs(current));
            }
        } else if (term.alpha != 0.0) {
            const double logAlpha = std::log(std::abs(term.alpha));
            const double logLambda = std::log(term.lambda);
            const double sign = term.alpha < 0.0 ? -1.0 : 1.0;
            for (std::size_t n = 1; n < count; ++n) {
                const double dn = static_cast<double>(n);
                const double magnitude =
                    std::exp(logAlpha - decay + dn * logLambda - std::lgamma(dn + 1.0));
                const double value = (n % 2 == 0 ? sign : -sign) * magnitude;
                coeffSums[n].add(value);
                boundSums[n].add(magnitude);
            }
        }
    }

    TaylorExpansion out;
    out.center = tau;
    out.sumAbsAlpha = series.sumAbsAlpha();
    out.coeffs.resize(count);
    out.coeffBounds.resize(count);
    for (std::size_t n = 0; n < count; ++n) {
        out.coeffs[n] = coeffSums[n].value();
        double bound = boundSums[n].value();
        if (const auto& tail = series.tail()) {
            bound += tailCoefficientBound(*tail, tau, n);
        }
        out.coeffBounds[n] = bound;
    }
    return out;
}

RemainderCertificate remainderBound(const TaylorExpansion& expansion, std::size_t n,
                                    double t) {
    const double ratio = expansionRatio(expansion.center, t);
    if (n == 0) {
        throw ValidationError("remainder order must be at least 1");
    }
    if (n > expansion.order()) {
        throw ValidationError("remainder order " + std::to_string(n) +
                              " exceeds expansion order " +
                              std::to_string(expansion.order()));
    }
    return {n, t, certifiedTail(expansion.sumAbsAlpha, ratio, n)};
}

double partialSum(const TaylorExpansion& expansion, std::size_t n, double t) {
    if (n > expansion.order()) {
        throw ValidationError("partial sum order exceeds expansion order");
    }
    const double dt = t - expansion.center;
    double acc = 0.0;
    for (std::size_t i = n + 1; i-- > 0;) {
        acc = acc * dt + expansion.coeffs[i];
    }
    return acc;
}

SeriesValue evaluateViaExpansion(const TaylorExpansion& expansion, double t) {
    const double ratio = expansionRatio(expansion.center, t);
    const std::size_t n = expansion.order();
    return {partialSum(expansion, n, t),
            certifiedTail(expansion.sumAbsAlpha, ratio, n)};
}

std::optional<std::size_t> selectOrder(const DirichletSeries& series, double tau,
                                       double t, double tolerance,
                                       std::size_t maxOrder) {
    if (!std::isfinite(tau) || tau <= 0.0) {
        throw ValidationError("expansion center tau must be positive");
    }
    if (!(tolerance > 0.0)) {
        throw ValidationError("tolerance must be positive");
    }
    const double ratio = expansionRatio(tau, t);
    const double s0 = series.sumAbsAlpha();
    for (std::size_t n = 1; n <= maxOrder; ++n) {
        if (certifiedTail(s0, ratio, n) <= tolerance) {
            return n;
        }
    }
    return std::nullopt;
}

}  // namespace dirichlet
