#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

namespace dirichlet {

/// Coordinates z_1..z_N of a state in the eigenbasis {phi_j}. Modes beyond N
/// are zero.
struct SpectralState {
    std::vector<double> coeffs;

    SpectralState() = default;
    explicit SpectralState(std::vector<double> c) : coeffs(std::move(c)) {}

    /// phi_j with N = max(j, size) modes.
    static SpectralState mode(int j, std::size_t size = 0) {
        SpectralState s(std::vector<double>(std::max<std::size_t>(size, j), 0.0));
        s.coeffs[j - 1] = 1.0;
        return s;
    }

    std::size_t size() const noexcept { return coeffs.size(); }

    /// 1-based coordinate; zero past the end.
    double operator()(int j) const noexcept {
        return j >= 1 && static_cast<std::size_t>(j) <= coeffs.size() ? coeffs[j - 1] : 0.0;
    }

    /// L2 norm via Parseval.
    double norm() const noexcept {
        double sum = 0.0;
        for (double z : coeffs) {
            sum += z * z;
        }
        return std::sqrt(sum);
    }

    friend bool operator==(const SpectralState&, const SpectralState&) = default;
};

}  // namespace dirichlet
