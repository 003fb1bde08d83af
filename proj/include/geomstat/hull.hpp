#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "geomstat/binomial.hpp"
#include "geomstat/geometry.hpp"
#include "geomstat/models.hpp"
#include "geomstat/scaled_real.hpp"

namespace geomstat {

// A point strictly outside BB(P) (hence outside the hull), with a
// deterministic irrational-style offset per dimension so that no candidate
// hyperplane passes through it by accident.
inline Point choose_origin(const PointSet& ps) {
    std::size_t d = ps.dim();
    Point o(d);
    for (std::size_t k = 0; k < d; ++k) {
        double lo = ps(0, k), hi = lo;
        for (std::size_t i = 0; i < ps.size(); ++i) {
            lo = std::min(lo, ps(i, k));
            hi = std::max(hi, ps(i, k));
        }
        double extent = std::max(1.0, hi - lo);
        o[k] = lo - extent * (1.0 + std::sqrt(2.0 + double(k)) / 3.0);
    }
    return o;
}

// One candidate facet F_Z: the d defining points, the apex simplex volume,
// and the side counts/probability factors relative to the origin.
struct FacetCandidate {
    std::vector<std::size_t> z;
    double volume = 0;            // vol(SX(F_Z))
    std::size_t n_same = 0;       // points on the origin's side
    std::size_t co_count = 0;     // points on the opposite side
    double pi_z = 1;              // Bernoulli only: pi(Z)
    double pibar_same = 1;        // Bernoulli only: pibar(same-side set)
    double pibar_co = 1;          // Bernoulli only: pibar(CO_Z)
};

// (P[F_Z in UP(S)], P[F_Z in LW(S)]). F_Z is an upper facet exactly when all
// other selected points lie on the origin's side of its hyperplane.
inline std::pair<double, double> facet_probability(const FacetCandidate& fc,
                                                   std::size_t n, std::size_t d,
                                                   const DistributionSpec& dist) {
    if (const auto* f = std::get_if<FixedSizeModel>(&dist)) {
        if (f->s < d) return {0.0, 0.0};
        double up = choose_ratio(fc.n_same, (long long)(f->s - d), n, f->s);
        double low = choose_ratio(fc.co_count, (long long)(f->s - d), n, f->s);
        return {up, low};
    }
    return {fc.pi_z * fc.pibar_co, fc.pi_z * fc.pibar_same};
}

namespace detail {

// d = 2 fast path: per pivot, radially sort the others and advance the
// half-plane boundary with a rotating pointer, so side counts and pibar
// products update in O(1) amortized per edge. Each unordered pair is seen
// from both pivots; callers weigh contributions by 1/2.
template <typename Fn>
void for_each_edge_candidate_2d(const PointSet& ps, const Point& origin,
                                const std::vector<double>* probs, Fn&& fn) {
    std::size_t n = ps.size();
    if (n < 2) return;
    double scale = 1.0;
    for (double v : ps.data()) scale = std::max(scale, std::abs(v));

    for (std::size_t a = 0; a < n; ++a) {
        double ax = ps(a, 0), ay = ps(a, 1);
        std::vector<std::size_t> others;
        others.reserve(n - 1);
        for (std::size_t i = 0; i < n; ++i)
            if (i != a) others.push_back(i);
        std::size_t m = others.size();

        std::vector<double> dx(m), dy(m);
        for (std::size_t i = 0; i < m; ++i) {
            dx[i] = ps(others[i], 0) - ax;
            dy[i] = ps(others[i], 1) - ay;
        }
        std::vector<std::size_t> ord(m);
        std::iota(ord.begin(), ord.end(), 0);
        auto half = [&](std::size_t i) {
            return dy[i] < 0 || (dy[i] == 0 && dx[i] < 0) ? 1 : 0;
        };
        std::sort(ord.begin(), ord.end(), [&](std::size_t u, std::size_t v) {
            int hu = half(u), hv = half(v);
            if (hu != hv) return hu < hv;
            return dx[u] * dy[v] - dy[u] * dx[v] > 0;
        });

        auto cross_of = [&](std::size_t u, std::size_t v) {
            return dx[u] * dy[v] - dy[u] * dx[v];
        };
        double tol = kGeomTol * scale * scale;

        // pibar prefix state for Bernoulli: product over the current window
        ScaledReal window_pibar = ScaledReal::one();
        ScaledReal pibar_others = ScaledReal::one();
        if (probs)
            for (auto r : others) pibar_others *= ScaledReal::from(1.0 - (*probs)[r]);

        std::size_t hi = 1;  // doubled index, exclusive upper bound of the window
        for (std::size_t i = 0; i < m; ++i) {
            std::size_t q = ord[i];
            if (i + 1 > hi) {
                hi = i + 1;
                window_pibar = ScaledReal::one();
            } else if (hi > i + 1 && probs) {
                // ord[i] leaves the low end of the previous window
                window_pibar =
                    window_pibar / ScaledReal::from(1.0 - (*probs)[others[ord[i % m]]]);
            }
            if (hi == i + 1) window_pibar = ScaledReal::one();
            while (hi < i + m) {
                std::size_t r = ord[hi % m];
                double c = cross_of(q, r);
                if (std::abs(c) <= tol)
                    throw degeneracy_error("hull 2d: collinear triple around pivot");
                if (c <= 0) break;
                if (probs) window_pibar *= ScaledReal::from(1.0 - (*probs)[others[r]]);
                ++hi;
            }
            std::size_t left = hi - (i + 1);
            std::size_t right = m - 1 - left;

            double ox = origin[0] - ax, oy = origin[1] - ay;
            double co = dx[q] * oy - dy[q] * ox;
            if (std::abs(co) <= kGeomTol * scale * std::max(scale, std::hypot(ox, oy)))
                throw degeneracy_error("hull 2d: origin on a candidate line");
            bool origin_left = co > 0;

            FacetCandidate fc;
            fc.z = {a, others[q]};
            fc.volume = std::abs(co) / 2.0;
            fc.n_same = origin_left ? left : right;
            fc.co_count = origin_left ? right : left;
            if (probs) {
                double pibar_left = window_pibar.to_double();
                double pibar_right =
                    (pibar_others /
                     (window_pibar * ScaledReal::from(1.0 - (*probs)[others[q]])))
                        .to_double();
                fc.pi_z = (*probs)[a] * (*probs)[others[q]];
                fc.pibar_same = origin_left ? pibar_left : pibar_right;
                fc.pibar_co = origin_left ? pibar_right : pibar_left;
            }
            fn(fc);
        }
    }
}

template <typename Fn>
void for_each_facet_candidate_3d(const PointSet& ps, const Point& origin,
                                 const std::vector<double>* probs, Fn&& fn) {
    std::size_t n = ps.size();
    double scale = 1.0;
    for (double v : ps.data()) scale = std::max(scale, std::abs(v));
    double tol = kGeomTol * scale * scale * scale;

    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b)
            for (std::size_t c = b + 1; c < n; ++c) {
                auto A = ps.point(a);
                auto B = ps.point(b);
                auto C = ps.point(c);
                double ux = B[0] - A[0], uy = B[1] - A[1], uz = B[2] - A[2];
                double vx = C[0] - A[0], vy = C[1] - A[1], vz = C[2] - A[2];
                double nx = uy * vz - uz * vy;
                double ny = uz * vx - ux * vz;
                double nz = ux * vy - uy * vx;
                double so = nx * (origin[0] - A[0]) + ny * (origin[1] - A[1]) +
                            nz * (origin[2] - A[2]);
                if (std::abs(so) <= tol)
                    throw degeneracy_error("hull 3d: origin on a candidate plane");
                FacetCandidate fc;
                fc.z = {a, b, c};
                fc.volume = std::abs(so) / 6.0;
                for (std::size_t r = 0; r < n; ++r) {
                    if (r == a || r == b || r == c) continue;
                    auto R = ps.point(r);
                    double sr = nx * (R[0] - A[0]) + ny * (R[1] - A[1]) +
                                nz * (R[2] - A[2]);
                    if (std::abs(sr) <= tol)
                        throw degeneracy_error("hull 3d: point on a candidate plane");
                    bool same = (sr > 0) == (so > 0);
                    if (same) {
                        ++fc.n_same;
                        if (probs) fc.pibar_same *= 1.0 - (*probs)[r];
                    } else {
                        ++fc.co_count;
                        if (probs) fc.pibar_co *= 1.0 - (*probs)[r];
                    }
                }
                if (probs) fc.pi_z = (*probs)[a] * (*probs)[b] * (*probs)[c];
                fn(fc);
            }
}

}  // namespace detail

// Eq-(8) engine: sum over all C(n,d) facet candidates of
// vol(SX(F_Z)) * (P[upper] - P[lower]), both distributions, d <= 3.
// Fixed-size results carry the full per-s table.
inline MomentResult expected_hull_volume(const PointSet& ps, const DistributionSpec& dist) {
    std::size_t n = ps.size(), d = ps.dim();
    if (d != 2 && d != 3)
        throw std::invalid_argument("expected_hull_volume: engine ships d in {2,3}");
    auto t0 = std::chrono::steady_clock::now();
    const std::vector<double>* probs = nullptr;
    if (const auto* b = std::get_if<BernoulliModel>(&dist)) {
        if (b->probs.size() != n)
            throw std::invalid_argument("expected_hull_volume: probs length mismatch");
        probs = &b->probs;
    }
    Point origin = choose_origin(ps);
    MomentResult res;
    res.method = Method::Exact;

    double pair_weight = d == 2 ? 0.5 : 1.0;  // 2D sweep visits each edge twice

    if (probs) {
        double mean = 0;
        auto visit = [&](const FacetCandidate& fc) {
            auto [up, low] = facet_probability(fc, n, d, dist);
            mean += pair_weight * fc.volume * (up - low);
        };
        if (d == 2)
            detail::for_each_edge_candidate_2d(ps, origin, probs, visit);
        else
            detail::for_each_facet_candidate_3d(ps, origin, probs, visit);
        res.mean = mean;
    } else {
        // aggregate volumes by side count, then extract every s
        std::vector<double> up_acc(n + 1, 0.0), low_acc(n + 1, 0.0);
        auto visit = [&](const FacetCandidate& fc) {
            up_acc[fc.n_same] += pair_weight * fc.volume;
            low_acc[fc.co_count] += pair_weight * fc.volume;
        };
        if (d == 2)
            detail::for_each_edge_candidate_2d(ps, origin, nullptr, visit);
        else
            detail::for_each_facet_candidate_3d(ps, origin, nullptr, visit);
        const auto& f = std::get<FixedSizeModel>(dist);
        if (f.s > n) throw std::invalid_argument("expected_hull_volume: s > n");
        for (std::size_t s = 1; s <= n; ++s) {
            double mean = 0;
            if (s >= d)
                for (std::size_t m = 0; m + d <= n; ++m)
                    if (up_acc[m] != 0.0 || low_acc[m] != 0.0)
                        mean += (up_acc[m] - low_acc[m]) *
                                choose_ratio(m, (long long)(s - d), n, s);
            res.per_s.push_back({s, mean, std::nullopt});
        }
        res.mean = res.per_s[f.s - 1].mean;
    }
    res.elapsed_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - t0)
                         .count();
    return res;
}

}  // namespace geomstat
