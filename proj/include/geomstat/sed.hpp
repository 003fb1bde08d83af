#pragma once

#include <algorithm>
#include <cassert>
#include <chrono>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "geomstat/binomial.hpp"
#include "geomstat/geometry.hpp"
#include "geomstat/models.hpp"
#include "geomstat/scaled_real.hpp"
#include "geomstat/threads.hpp"

namespace geomstat {

// Coordinates of every other point in the frame where p and q sit on the
// vertical axis at (0, -h) and (0, +h). x > 0 is the half-plane l+,
// x < 0 is l-; candidate circumcenters all lie on the frame x-axis.
struct PairFrame {
    std::size_t p = 0, q = 0;
    double h = 0;                    // half of ||pq||
    std::vector<std::size_t> idx;    // original indices of the n-2 candidates
    std::vector<double> tx, ty;      // frame coordinates, parallel to idx
    double scale = 1;                // for degeneracy tolerances
};

inline PairFrame make_pair_frame(const PointSet& ps, std::size_t p, std::size_t q) {
    if (ps.dim() != 2) throw std::invalid_argument("make_pair_frame: d must be 2");
    if (p == q) throw std::invalid_argument("make_pair_frame: p == q");
    PairFrame fr;
    fr.p = p;
    fr.q = q;
    double px = ps(p, 0), py = ps(p, 1);
    double qx = ps(q, 0), qy = ps(q, 1);
    double len = std::hypot(qx - px, qy - py);
    for (double v : ps.data()) fr.scale = std::max(fr.scale, std::abs(v));
    if (len <= kGeomTol * fr.scale)
        throw degeneracy_error("make_pair_frame: coincident pair");
    fr.h = len / 2.0;
    double ux = (qx - px) / len, uy = (qy - py) / len;  // frame y direction
    double mx = (px + qx) / 2.0, my = (py + qy) / 2.0;
    std::size_t n = ps.size();
    fr.idx.reserve(n - 2);
    for (std::size_t t = 0; t < n; ++t) {
        if (t == p || t == q) continue;
        double rx = ps(t, 0) - mx, ry = ps(t, 1) - my;
        fr.idx.push_back(t);
        fr.tx.push_back(rx * uy - ry * ux);
        fr.ty.push_back(rx * ux + ry * uy);
    }
    return fr;
}

namespace detail {

// x-coordinate of the circumcenter of (p, q, t_i) in the frame
inline double sed_center_x(const PairFrame& fr, std::size_t i) {
    double tol = kGeomTol * fr.scale;
    if (std::abs(fr.tx[i]) <= tol)
        throw degeneracy_error("sed: collinear triple");
    return (fr.tx[i] * fr.tx[i] + fr.ty[i] * fr.ty[i] - fr.h * fr.h) / (2.0 * fr.tx[i]);
}

// a 3-point disk is the SED of its support iff the triangle is non-obtuse:
// t on or outside the diametral circle of pq, and |ty| <= h
inline bool sed_non_obtuse(const PairFrame& fr, std::size_t i) {
    double mm = fr.tx[i] * fr.tx[i] + fr.ty[i] * fr.ty[i];
    return mm >= fr.h * fr.h && std::abs(fr.ty[i]) <= fr.h;
}

// ||pq|| * P[the diametral disk of (p,q) is the SED of the selected subset
// with p, q selected]. Naive strict-inside counting.
inline double two_point_pair(const PointSet& ps, const PairFrame& fr,
                             const DistributionSpec& dist) {
    std::size_t n = ps.size();
    const auto* bern = std::get_if<BernoulliModel>(&dist);
    const auto* fixed = std::get_if<FixedSizeModel>(&dist);
    double h2 = fr.h * fr.h;
    double tol = kGeomTol * fr.scale * fr.scale;
    std::size_t inside = 0;
    double pibar_out = 1;
    for (std::size_t i = 0; i < fr.idx.size(); ++i) {
        double mm = fr.tx[i] * fr.tx[i] + fr.ty[i] * fr.ty[i];
        if (std::abs(mm - h2) <= tol)
            throw degeneracy_error("sed: point on a diametral circle");
        if (mm < h2)
            ++inside;
        else if (bern)
            pibar_out *= 1.0 - bern->probs[fr.idx[i]];
    }
    double prob;
    if (fixed) {
        if (fixed->s < 2) return 0;
        prob = choose_ratio(inside, (long long)(fixed->s) - 2, n, fixed->s);
    } else {
        prob = bern->probs[fr.p] * bern->probs[fr.q] * pibar_out;
    }
    return 2.0 * fr.h * prob;
}

}  // namespace detail

// Sum of the two-point term over all pairs.
inline double two_point_contribution(const PointSet& ps, const DistributionSpec& dist) {
    std::size_t n = ps.size();
    if (ps.dim() != 2) throw std::invalid_argument("two_point_contribution: d must be 2");
    double total = 0;
    for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = p + 1; q < n; ++q)
            total += detail::two_point_pair(ps, make_pair_frame(ps, p, q), dist);
    return total;
}

// F(p,q): sum over the n-2 three-point candidates D_i = disk(p, q, t_i) of
// diam(D_i) * P[D_i is the SED of the selected subset]. Candidates are
// swept in circumcenter order; the inside set gains l+ points and sheds l-
// points monotonically, so counts and Bernoulli pibar factors come from one
// prefix/suffix pass.
inline double triple_sweep_F(std::size_t p, std::size_t q, const PointSet& ps,
                             const DistributionSpec& dist) {
    std::size_t n = ps.size();
    PairFrame fr = make_pair_frame(ps, p, q);
    std::size_t m = fr.idx.size();
    if (m == 0) return 0;
    const auto* bern = std::get_if<BernoulliModel>(&dist);
    const auto* fixed = std::get_if<FixedSizeModel>(&dist);
    if (fixed && fixed->s < 3) return 0;

    std::vector<double> cx(m);
    for (std::size_t i = 0; i < m; ++i) cx[i] = detail::sed_center_x(fr, i);

    std::vector<std::size_t> ord(m);
    std::iota(ord.begin(), ord.end(), 0);
    std::sort(ord.begin(), ord.end(),
              [&](std::size_t a, std::size_t b) { return cx[a] < cx[b]; });
    double ctol = kGeomTol * fr.scale;
    for (std::size_t k = 0; k + 1 < m; ++k)
        if (cx[ord[k + 1]] - cx[ord[k]] <=
            ctol * std::max(1.0, std::max(std::abs(cx[ord[k]]), std::abs(cx[ord[k + 1]]))))
            throw degeneracy_error("sed: four concyclic points");

    // t_j is inside D_i iff (t_j in l+ and c_j <= c_i) or (t_j in l- and c_j >= c_i)
    std::vector<std::size_t> plus_prefix(m + 1, 0), minus_suffix(m + 1, 0);
    std::vector<ScaledReal> pibar_plus_suffix(m + 1, ScaledReal::one());
    std::vector<ScaledReal> pibar_minus_prefix(m + 1, ScaledReal::one());
    for (std::size_t k = 0; k < m; ++k) {
        bool plus = fr.tx[ord[k]] > 0;
        plus_prefix[k + 1] = plus_prefix[k] + (plus ? 1 : 0);
        pibar_minus_prefix[k + 1] = pibar_minus_prefix[k];
        if (!plus && bern)
            pibar_minus_prefix[k + 1] *=
                ScaledReal::from(1.0 - bern->probs[fr.idx[ord[k]]]);
    }
    for (std::size_t k = m; k-- > 0;) {
        bool plus = fr.tx[ord[k]] > 0;
        minus_suffix[k] = minus_suffix[k + 1] + (plus ? 0 : 1);
        pibar_plus_suffix[k] = pibar_plus_suffix[k + 1];
        if (plus && bern)
            pibar_plus_suffix[k] *= ScaledReal::from(1.0 - bern->probs[fr.idx[ord[k]]]);
    }

    double total = 0;
    std::size_t prev_count = 0;
    for (std::size_t k = 0; k < m; ++k) {
        std::size_t i = ord[k];
        // candidates inside D_i (including t_i itself)
        std::size_t cnt = plus_prefix[k + 1] + minus_suffix[k];
        if (k > 0) {
            // Lemma-11 monotonicity: per step, at most t_i enters (from l+)
            // and at most t_{i-1} leaves (from l-)
            std::size_t gained = fr.tx[i] > 0 ? 1 : 0;
            std::size_t lost = fr.tx[ord[k - 1]] > 0 ? 0 : 1;
            if (cnt + lost != prev_count + gained)
                throw degeneracy_error("sed: sweep monotonicity violated");
        }
        prev_count = cnt;
        if (!detail::sed_non_obtuse(fr, i)) continue;
        std::size_t si = cnt + 2;  // |S_i|: p, q, t_i, and points inside D_i
        double prob;
        if (fixed) {
            prob = choose_ratio(si - 3, (long long)(fixed->s) - 3, n, fixed->s);
        } else {
            ScaledReal pibar_out = pibar_minus_prefix[k] * pibar_plus_suffix[k + 1];
            prob = bern->probs[p] * bern->probs[q] * bern->probs[fr.idx[i]] *
                   pibar_out.to_double();
        }
        double diam = 2.0 * std::sqrt(cx[i] * cx[i] + fr.h * fr.h);
        total += diam * prob;
    }
    return total;
}

// Theorem-12 engine: E[diam(SED(S))] in the plane, both distributions,
// as the two-point term plus the sum of F(p,q) over all pairs.
inline MomentResult expected_sed_diameter(const PointSet& ps, const DistributionSpec& dist) {
    std::size_t n = ps.size();
    if (ps.dim() != 2)
        throw std::invalid_argument("expected_sed_diameter: d must be 2");
    if (n < 2) throw std::invalid_argument("expected_sed_diameter: need n >= 2");
    if (const auto* f = std::get_if<FixedSizeModel>(&dist)) {
        if (f->s < 2 || f->s > n)
            throw std::invalid_argument("expected_sed_diameter: need 2 <= s <= n");
    } else if (std::get<BernoulliModel>(dist).probs.size() != n) {
        throw std::invalid_argument("expected_sed_diameter: probs length mismatch");
    }
    auto t0 = std::chrono::steady_clock::now();
    // pairs are independent work units; partials are reduced in index order.
    // Each 3-point disk shows up in F once per defining pair, so the triple
    // term carries weight 1/3.
    std::vector<double> partial(n, 0.0);
    parallel_for(n, [&](std::size_t p) {
        double acc = 0;
        for (std::size_t q = p + 1; q < n; ++q) {
            acc += detail::two_point_pair(ps, make_pair_frame(ps, p, q), dist);
            acc += triple_sweep_F(p, q, ps, dist) / 3.0;
        }
        partial[p] = acc;
    });
    double mean = 0;
    for (double v : partial) mean += v;
    MomentResult res;
    res.method = Method::Exact;
    res.mean = mean;
    res.elapsed_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - t0)
                         .count();
    return res;
}

}  // namespace geomstat
