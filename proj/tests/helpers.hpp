#pragma once

// Shared helpers for the unit and acceptance suites. No framework
// dependencies so both binaries can include it.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "geomstat/geometry.hpp"

namespace testutil {

// Random points in the unit cube. Uniform doubles essentially never violate
// general position, but instance generation in the suites still retries on
// degeneracy_error at the call site when an engine is tolerance-banded.
inline geomstat::PointSet random_points(std::mt19937_64& rng, std::size_t n,
                                        std::size_t d) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> flat(n * d);
    for (auto& v : flat) v = u(rng);
    return geomstat::PointSet(d, std::move(flat));
}

inline std::vector<double> random_probs(std::mt19937_64& rng, std::size_t n,
                                        double lo = 0.05, double hi = 0.95) {
    std::uniform_real_distribution<double> u(lo, hi);
    std::vector<double> p(n);
    for (auto& v : p) v = u(rng);
    return p;
}

// Comparison against oracle values: absolute 1e-9 at unit scale, relative
// 1e-9 beyond. All suite instances live in the unit cube, so measure values
// are O(1) and this implements the 1e-9-relative acceptance bar.
inline bool near(double got, double want, double tol = 1e-9) {
    return std::abs(got - want) <= tol * std::max(1.0, std::abs(want));
}

inline double rel_err(double got, double want) {
    return std::abs(got - want) / std::max(1e-300, std::abs(want));
}

}  // namespace testutil
