#pragma once

#include <chrono>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "geomstat/geometry.hpp"
#include "geomstat/models.hpp"
#include "geomstat/pair_moments.hpp"

namespace geomstat {

// Degree <= 4 coordinate power sums driving the centroid-distance moments.
// For a subset S of size s,
//   CD(S) = (1/s) sum_{p in S} ||p - c(S)||^2 = (1/s^2) sum_{p<q in S} ||pq||^2,
// so both moments are pair-sum moments with weight w = squared distance, and
// every needed pair aggregate reduces to these sums in one O(n d^2) pass.
struct CoordinateAggregates {
    std::size_t n = 0, d = 0;
    std::vector<double> t;       // T_i   = sum p_i
    double q = 0;                // Q     = sum ||p||^2
    std::vector<double> s11;     // per (i,j): sum p_i p_j
    std::vector<double> s21;     // sum p_i^2 p_j
    std::vector<double> s12;     // sum p_i p_j^2
    std::vector<double> s22;     // sum p_i^2 p_j^2

    explicit CoordinateAggregates(const PointSet& ps)
        : n(ps.size()), d(ps.dim()), t(d, 0.0),
          s11(d * d, 0.0), s21(d * d, 0.0), s12(d * d, 0.0), s22(d * d, 0.0) {
        for (std::size_t p = 0; p < n; ++p) {
            auto pt = ps.point(p);
            for (std::size_t i = 0; i < d; ++i) {
                t[i] += pt[i];
                q += pt[i] * pt[i];
                for (std::size_t j = 0; j < d; ++j) {
                    double a = pt[i], b = pt[j];
                    s11[i * d + j] += a * b;
                    s21[i * d + j] += a * a * b;
                    s12[i * d + j] += a * b * b;
                    s22[i * d + j] += a * a * b * b;
                }
            }
        }
    }

    // sum over unordered pairs of ||pq||^2
    double pair_sq_sum() const {
        double tt = 0;
        for (double v : t) tt += v * v;
        return double(n) * q - tt;
    }

    // sum over unordered pairs of ||pq||^4, via
    // sum_{p,q} (p_i-q_i)^2 (p_j-q_j)^2 expanded into power-sum products.
    double pair_quad_sum() const {
        double acc = 0;
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) {
                double a22 = s22[i * d + j], a21 = s21[i * d + j], a12 = s12[i * d + j];
                double a11 = s11[i * d + j], a20 = s11[i * d + i], a02 = s11[j * d + j];
                double a10 = t[i], a01 = t[j];
                acc += 2.0 * double(n) * a22 - 4.0 * a21 * a01 - 4.0 * a12 * a10 +
                       2.0 * a20 * a02 + 4.0 * a11 * a11;
            }
        return acc / 2.0;
    }

    // sum_p (sum_{q != p} ||pq||^2)^2, with W_p = n||p||^2 - 2 p.T + Q
    double row_sum_squares(const PointSet& ps) const {
        double acc = 0;
        for (std::size_t p = 0; p < n; ++p) {
            auto pt = ps.point(p);
            double norm2 = 0, dot = 0;
            for (std::size_t i = 0; i < d; ++i) {
                norm2 += pt[i] * pt[i];
                dot += pt[i] * t[i];
            }
            double w = double(n) * norm2 - 2.0 * dot + q;
            acc += w * w;
        }
        return acc;
    }
};

// Theorem-7 engine: mean and variance of CD(S) for every s, fixed-size model.
inline MomentResult centroid_moments(const PointSet& ps) {
    if (ps.size() == 0) throw std::invalid_argument("centroid_moments: empty point set");
    auto t0 = std::chrono::steady_clock::now();
    std::size_t n = ps.size();

    CoordinateAggregates agg(ps);
    PairAggregates pa;
    pa.d1 = agg.pair_sq_sum();
    pa.d2 = agg.pair_quad_sum();
    pa.sumsq = agg.row_sum_squares(ps);

    MomentResult res;
    res.method = Method::Exact;
    for (std::size_t s = 1; s <= n; ++s) {
        double c = 1.0 / (double(s) * double(s));
        res.per_s.push_back(pair_moment_row(pa, n, s, c, &res.variance_clamped));
    }
    res.mean = res.per_s.back().mean;
    res.variance = res.per_s.back().variance;
    res.elapsed_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - t0)
                         .count();
    return res;
}

}  // namespace geomstat
