#pragma once

#include <cstddef>

#include "geomstat/binomial.hpp"
#include "geomstat/models.hpp"

namespace geomstat {

// Moments of X(S) = c(s) * sum over unordered pairs {p,q} in S of w(p,q),
// for a uniform s-subset S. MPD uses w = ||pq|| with c = 2/(s(s-1)); the
// centroid distance uses w = ||pq||^2 with c = 1/s^2; the WSPD approximation
// uses w = delta_ball. All three reduce to the same coincidence expansion
// over ordered index 4-tuples:
//   Sum2 = SUMSQ - 2*D2          (ordered triples p; q != r, both != p)
//   Sum1 = 4*D1^2 - 4*D2 - 4*Sum2  (all four indices distinct)
//   E[(sum_pairs w)^2] = (1/4) * (Sum1*rho4 + 4*Sum2*rho3 + 4*D2*rho2)
// where D1 = sum w, D2 = sum w^2 over unordered pairs, SUMSQ = sum_p W_p^2
// with W_p = sum_{q != p} w(p,q), and rho_k = C(n-k, s-k)/C(n, s).
struct PairAggregates {
    double d1 = 0;
    double d2 = 0;
    double sumsq = 0;

    double mean(std::size_t n, std::size_t s, double c) const {
        return c * inclusion_ratio(n, 2, s) * d1;
    }

    double second_moment(std::size_t n, std::size_t s, double c) const {
        double sum2 = sumsq - 2.0 * d2;
        double sum1 = 4.0 * d1 * d1 - 4.0 * d2 - 4.0 * sum2;
        double e2 = 0.25 * (sum1 * inclusion_ratio(n, 4, s) +
                            4.0 * sum2 * inclusion_ratio(n, 3, s) +
                            4.0 * d2 * inclusion_ratio(n, 2, s));
        return c * c * e2;
    }
};

// Per-s mean and variance when the same aggregates drive both moments.
inline PerSRow pair_moment_row(const PairAggregates& agg, std::size_t n, std::size_t s,
                               double c, bool* clamped = nullptr) {
    double m = agg.mean(n, s, c);
    double e2 = agg.second_moment(n, s, c);
    return {s, m, clamp_variance(e2 - m * m, e2, clamped)};
}

}  // namespace geomstat
