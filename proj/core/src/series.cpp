#include "dirichlet/series.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "compensated.hpp"
#include "dirichlet/errors.hpp"

namespace dirichlet {

TailModel::TailModel(double sumBound, double lambdaFloor,
                     std::vector<double> weightedBounds)
    : floor_(lambdaFloor), weighted_(std::move(weightedBounds)) {
    if (!std::isfinite(sumBound) || sumBound < 0.0) {
        throw ValidationError("tail sumBound must be finite and nonnegative");
    }
    if (!std::isfinite(lambdaFloor) || lambdaFloor <= 0.0) {
        throw ValidationError("tail lambdaFloor must be finite and positive");
    }
    if (weighted_.empty()) {
        weighted_.push_back(sumBound);
    } else if (weighted_.front() != sumBound) {
        throw ValidationError("tail weightedBounds[0] must equal sumBound");
    }
    for (std::size_t k = 0; k < weighted_.size(); ++k) {
        if (!std::isfinite(weighted_[k]) || weighted_[k] < 0.0) {
            throw ValidationError("tail weighted bound " + std::to_string(k) +
                                  " must be finite and nonnegative");
        }
        if (k > 0) {
            weighted_[k] = std::min(weighted_[k], weighted_[k - 1] / floor_);
        }
    }
}

double TailModel::weightedSumBound(std::size_t k) const {
    if (k < weighted_.size()) {
        return weighted_[k];
    }
    // sum |a|/l^k <= floor^{-(k - k0)} * sum |a|/l^k0 for l >= floor.
    const auto last = weighted_.size() - 1;
    const double extra = static_cast<double>(k - last);
    return weighted_.back() * std::pow(floor_, -extra);
}

DirichletSeries::DirichletSeries(std::vector<Term> terms,
                                 std::optional<TailModel> tail)
    : terms_(std::move(terms)), tail_(std::move(tail)) {
    if (terms_.empty()) {
        throw ValidationError("a Dirichlet series needs at least one term");
    }
    for (const auto& term : terms_) {
        if (!std::isfinite(term.alpha) || !std::isfinite(term.lambda)) {
            throw ValidationError("series coefficients and exponents must be finite");
        }
    }
    std::sort(terms_.begin(), terms_.end(),
              [](const Term& a, const Term& b) { return a.lambda < b.lambda; });
    for (std::size_t i = 1; i < terms_.size(); ++i) {
        if (terms_[i].lambda == terms_[i - 1].lambda) {
            throw ValidationError("duplicate exponent " +
                                  std::to_string(terms_[i].lambda) +
                                  " (use merge() to combine terms)");
        }
    }
}

double DirichletSeries::sumAbsAlpha() const noexcept {
    detail::CompensatedSum sum;
    for (const auto& term : terms_) {
        sum.add(std::abs(term.alpha));
    }
    if (tail_) {
        sum.add(tail_->sumBound());
    }
    return sum.value();
}

SeriesValue evaluate(const DirichletSeries& series, double t) {
    if (!std::isfinite(t)) {
        throw ValidationError("evaluation point must be finite");
    }
    if (series.tail() && t < 0.0) {
        throw ValidationError("t < 0 with certified tail");
    }
    detail::CompensatedSum sum;
    for (const auto& term : series.terms()) {
        sum.add(term.alpha * std::exp(-term.lambda * t));
    }
    SeriesValue out{sum.value(), 0.0};
    if (const auto& tail = series.tail()) {
        out.errorBound = tail->sumBound() * std::exp(-tail->lambdaFloor() * t);
    }
    return out;
}

ShiftedSeries shiftNormalize(const DirichletSeries& series) {
    double lowest = series.minExponent();
    if (series.tail()) {
        lowest = std::min(lowest, series.tail()->lambdaFloor());
    }
    const double shift = lowest - 1.0;

    std::vector<Term> terms(series.terms().begin(), series.terms().end());
    for (auto& term : terms) {
        term.lambda -= shift;
    }
    std::optional<TailModel> tail;
    if (const auto& old = series.tail()) {
        // Only the k = 0 bound survives a change of exponents.
        tail.emplace(old->sumBound(), old->lambdaFloor() - shift);
    }
    return {DirichletSeries(std::move(terms), std::move(tail)), shift};
}

DirichletSeries antiderivativeReduce(const DirichletSeries& series, unsigned k) {
    std::vector<Term> terms(series.terms().begin(), series.terms().end());
    for (auto& term : terms) {
        if (term.lambda <= 0.0) {
            throw ValidationError("antiderivativeReduce requires positive exponents "
                                  "(apply shiftNormalize first)");
        }
        // Repeated division keeps reduce(reduce(s, j), k) == reduce(s, j + k)
        // bit for bit.
        for (unsigned i = 0; i < k; ++i) {
            term.alpha /= term.lambda;
        }
    }
    std::optional<TailModel> tail;
    if (const auto& old = series.tail()) {
        const std::size_t stored = old->weightedBounds().size();
        const std::size_t keep = stored > k ? stored - k : 1;
        std::vector<double> bounds(keep);
        for (std::size_t m = 0; m < keep; ++m) {
            bounds[m] = old->weightedSumBound(k + m);
        }
        tail.emplace(bounds.front(), old->lambdaFloor(), std::move(bounds));
    }
    return DirichletSeries(std::move(terms), std::move(tail));
}

DirichletSeries merge(const DirichletSeries& a, const DirichletSeries& b) {
    std::map<double, double> byExponent;
    for (const auto& term : a.terms()) {
        byExponent[term.lambda] += term.alpha;
    }
    for (const auto& term : b.terms()) {
        byExponent[term.lambda] += term.alpha;
    }
    std::vector<Term> terms;
    terms.reserve(byExponent.size());
    for (const auto& [lambda, alpha] : byExponent) {
        terms.push_back({alpha, lambda});
    }

    std::optional<TailModel> tail;
    if (a.tail() && b.tail()) {
        const auto& ta = *a.tail();
        const auto& tb = *b.tail();
        const std::size_t n =
            std::max(ta.weightedBounds().size(), tb.weightedBounds().size());
        std::vector<double> bounds(n);
        for (std::size_t k = 0; k < n; ++k) {
            bounds[k] = ta.weightedSumBound(k) + tb.weightedSumBound(k);
        }
        tail.emplace(bounds.front(), std::min(ta.lambdaFloor(), tb.lambdaFloor()),
                     std::move(bounds));
    } else if (a.tail()) {
        tail = a.tail();
    } else if (b.tail()) {
        tail = b.tail();
    }
    return DirichletSeries(std::move(terms), std::move(tail));
}

}  // namespace dirichlet
