#include "dirichlet/quadrature.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "dirichlet/errors.hpp"

namespace dirichlet {
namespace {

constexpr int kPoints = 10;
constexpr int kMaxDepth = 48;

struct Rule {
    std::array<double, kPoints> nodes{};
    std::array<double, kPoints> weights{};
};

// Roots of P_10 by Newton iteration from the Chebyshev guess.
Rule makeRule() {
    Rule rule;
    for (int i = 0; i < kPoints; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (kPoints + 0.5));
        double derivative = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = x;
            for (int n = 2; n <= kPoints; ++n) {
                const double p2 = ((2.0 * n - 1.0) * x * p1 - (n - 1.0) * p0) / n;
                p0 = p1;
                p1 = p2;
            }
            derivative = kPoints * (x * p1 - p0) / (x * x - 1.0);
            const double step = p1 / derivative;
            x -= step;
            if (std::abs(step) < 1e-16) {
                break;
            }
        }
        rule.nodes[i] = x;
        rule.weights[i] = 2.0 / ((1.0 - x * x) * derivative * derivative);
    }
    return rule;
}

const Rule& rule() {
    static const Rule r = makeRule();
    return r;
}

double panel(const std::function<double(double)>& f, double a, double b) {
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    double sum = 0.0;
    for (int i = 0; i < kPoints; ++i) {
        const double value = f(mid + half * rule().nodes[i]);
        if (!std::isfinite(value)) {
            throw ValidationError("integrand is not finite at t = " +
                                  std::to_string(mid + half * rule().nodes[i]));
        }
        sum += rule().weights[i] * value;
    }
    return half * sum;
}

double refine(const std::function<double(double)>& f, double a, double b, double whole,
              double tol, int depth) {
    const double mid = 0.5 * (a + b);
    const double left = panel(f, a, mid);
    const double right = panel(f, mid, b);
    const double both = left + right;
    if (std::abs(both - whole) <= tol || depth >= kMaxDepth) {
        return both;
    }
    return refine(f, a, mid, left, 0.5 * tol, depth + 1) +
           refine(f, mid, b, right, 0.5 * tol, depth + 1);
}

}  // namespace

double integrateGaussLegendre(const std::function<double(double)>& f, double a, double b,
                              double tol) {
    if (!std::isfinite(a) || !std::isfinite(b)) {
        throw ValidationError("integration limits must be finite");
    }
    if (a == b) {
        return 0.0;
    }
    if (!(tol > 0.0)) {
        throw ValidationError("quadrature tolerance must be positive");
    }
    return refine(f, a, b, panel(f, a, b), tol, 0);
}

}  // namespace dirichlet
