#pragma once

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "geomstat/binomial.hpp"
#include "geomstat/geometry.hpp"
#include "geomstat/models.hpp"
#include "geomstat/product_tree.hpp"

namespace geomstat {

inline constexpr std::size_t kBBoxMaxDim = 4;

namespace detail {

// E[max_p x'(p) * max_q y'(q)] for the (possibly reflected) coordinate maps
// x', y'. One sweep in increasing x order over the product tree: after
// Addmark(p) the marked set is exactly {q : q_x <= p_x}, so Query(p) yields
// B(p) and the complement query yields pibar(P^+(p,p)).
inline double corner_expectation_2d(const std::vector<double>& xs,
                                    const std::vector<double>& ys,
                                    const std::vector<double>& probs) {
    std::size_t n = xs.size();
    std::vector<std::size_t> by_x(n), by_y(n);
    std::iota(by_x.begin(), by_x.end(), 0);
    std::iota(by_y.begin(), by_y.end(), 0);
    std::sort(by_x.begin(), by_x.end(), [&](auto a, auto b) { return xs[a] < xs[b]; });
    std::sort(by_y.begin(), by_y.end(), [&](auto a, auto b) { return ys[a] < ys[b]; });
    for (std::size_t i = 1; i < n; ++i) {
        if (xs[by_x[i]] == xs[by_x[i - 1]] || ys[by_y[i]] == ys[by_y[i - 1]])
            throw degeneracy_error("corner_expectation_2d: shared coordinate");
    }
    std::vector<std::size_t> rank_y(n);
    for (std::size_t r = 0; r < n; ++r) rank_y[by_y[r]] = r;

    // suffix pibar products in x and y order
    std::vector<ScaledReal> pibar_x(n), pibar_y(n);
    ScaledReal acc = ScaledReal::one();
    for (std::size_t i = n; i-- > 0;) {
        pibar_x[by_x[i]] = acc;
        acc *= ScaledReal::from(1.0 - probs[by_x[i]]);
    }
    acc = ScaledReal::one();
    for (std::size_t i = n; i-- > 0;) {
        pibar_y[by_y[i]] = acc;
        acc *= ScaledReal::from(1.0 - probs[by_y[i]]);
    }

    std::vector<ScaledReal> weights(n);  // D(q), in y order
    for (std::size_t r = 0; r < n; ++r) {
        std::size_t q = by_y[r];
        weights[r] = ScaledReal::from(ys[q] * probs[q]) * pibar_y[q];
    }
    std::vector<double> probs_y(n);
    for (std::size_t r = 0; r < n; ++r) probs_y[r] = probs[by_y[r]];

    ProductTree tree(std::move(weights), probs_y);
    ScaledReal total{};
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t p = by_x[i];
        tree.addmark(rank_y[p]);
        ScaledReal a = ScaledReal::from(xs[p] * probs[p]) * pibar_x[p];
        ScaledReal b = tree.query_scaled(rank_y[p]);
        ScaledReal pibar_joint = tree.complement_query_scaled(rank_y[p]);
        ScaledReal c = ScaledReal::from(xs[p] * ys[p] * probs[p]) * pibar_x[p] *
                       pibar_y[p] / pibar_joint;
        total += a * b + c;
    }
    return total.to_double();
}

}  // namespace detail

// One corner term of the 2D expansion. max_x/max_y select the corner;
// min variants run on reflected coordinates and negate the result, so the
// max-max engine serves all four terms.
inline double corner_term_2d(const PointSet& ps, const std::vector<double>& probs,
                             bool max_x, bool max_y) {
    if (ps.dim() != 2) throw std::invalid_argument("corner_term_2d: d must be 2");
    BernoulliModel model(probs);  // validates (0,1)
    std::size_t n = ps.size();
    std::vector<double> xs(n), ys(n);
    for (std::size_t i = 0; i < n; ++i) {
        xs[i] = max_x ? ps(i, 0) : -ps(i, 0);
        ys[i] = max_y ? ps(i, 1) : -ps(i, 1);
    }
    double sign = (max_x ? 1.0 : -1.0) * (max_y ? 1.0 : -1.0);
    return sign * detail::corner_expectation_2d(xs, ys, probs);
}

// Theorem-3 engine: Eq (1) corner combination, O(n log n).
inline MomentResult expected_bbox_area_2d_bernoulli(const PointSet& ps,
                                                    const std::vector<double>& probs) {
    auto t0 = std::chrono::steady_clock::now();
    MomentResult res;
    res.method = Method::Exact;
    res.mean = corner_term_2d(ps, probs, true, true) - corner_term_2d(ps, probs, true, false) -
               corner_term_2d(ps, probs, false, true) + corner_term_2d(ps, probs, false, false);
    res.elapsed_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - t0)
                         .count();
    return res;
}

struct ConciseSet {
    std::vector<std::size_t> members;      // |H| = k <= d
    std::vector<double> maxima;            // per-dimension max over H
    std::vector<std::size_t> pplus;        // points exceeding some maximum
};

// Emits every concise k-set (k = 1..d) exactly once. A subset is concise iff
// each member attains the maximum in at least one coordinate.
template <typename Fn>
void enumerate_concise_sets(const std::vector<std::vector<double>>& coords, Fn&& fn) {
    std::size_t n = coords.size();
    if (n == 0) return;
    std::size_t d = coords.front().size();
    if (d > kBBoxMaxDim)
        throw std::invalid_argument("enumerate_concise_sets: d capped at 4");
    std::size_t kmax = std::min(d, n);
    std::vector<std::size_t> idx;

    auto consider = [&](const std::vector<std::size_t>& H) {
        std::vector<std::size_t> argmax(d);
        for (std::size_t i = 0; i < d; ++i) {
            std::size_t best = H[0];
            for (auto p : H)
                if (coords[p][i] > coords[best][i]) best = p;
            argmax[i] = best;
        }
        for (auto p : H)
            if (std::find(argmax.begin(), argmax.end(), p) == argmax.end()) return;
        ConciseSet cs;
        cs.members = H;
        cs.maxima.resize(d);
        for (std::size_t i = 0; i < d; ++i) cs.maxima[i] = coords[argmax[i]][i];
        for (std::size_t q = 0; q < n; ++q) {
            bool exceeds = false;
            for (std::size_t i = 0; i < d && !exceeds; ++i)
                exceeds = coords[q][i] > cs.maxima[i];
            if (exceeds) cs.pplus.push_back(q);
        }
        fn(cs);
    };

    for (std::size_t k = 1; k <= kmax; ++k) {
        idx.assign(k, 0);
        for (std::size_t i = 0; i < k; ++i) idx[i] = i;
        while (true) {
            consider(idx);
            std::size_t j = k;
            bool done = true;
            while (j-- > 0) {
                if (idx[j] + (k - 1 - j) < n - 1) {
                    ++idx[j];
                    for (std::size_t t = j + 1; t < k; ++t) idx[t] = idx[t - 1] + 1;
                    done = false;
                    break;
                }
            }
            if (done) break;
        }
    }
}

namespace detail {

inline std::vector<std::vector<double>> reflected_coords(const PointSet& ps,
                                                         unsigned sigma) {
    std::size_t n = ps.size(), d = ps.dim();
    std::vector<std::vector<double>> out(n, std::vector<double>(d));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < d; ++k)
            out[i][k] = (sigma >> k & 1) ? -ps(i, k) : ps(i, k);
    return out;
}

}  // namespace detail

// Appendix Eq-(20) engine: expand prod_i (max_i - min_i) into 2^d terms of
// the form E[prod_i max x'_i] (min via reflection), each a sum of concise-set
// contributions con(H) = prod maxima * pi(H) * pibar(P^+(H)).
inline MomentResult expected_bbox_volume_dd_bernoulli(const PointSet& ps,
                                                      const std::vector<double>& probs) {
    auto t0 = std::chrono::steady_clock::now();
    BernoulliModel model(probs);
    std::size_t d = ps.dim();
    if (d > kBBoxMaxDim)
        throw std::invalid_argument("expected_bbox_volume_dd_bernoulli: d capped at 4");
    double mean = 0;
    for (unsigned sigma = 0; sigma < (1u << d); ++sigma) {
        auto coords = detail::reflected_coords(ps, sigma);
        enumerate_concise_sets(coords, [&](const ConciseSet& cs) {
            double con = 1.0;
            for (double m : cs.maxima) con *= m;
            for (auto p : cs.members) con *= probs[p];
            for (auto q : cs.pplus) con *= 1.0 - probs[q];
            mean += con;
        });
    }
    MomentResult res;
    res.method = Method::Exact;
    res.mean = mean;
    res.elapsed_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - t0)
                         .count();
    return res;
}

// Appendix Eqs (25)-(26): one SUM_k^g table accumulated across the 2^d
// reflected terms, then per-s extraction via C(g, s-k)/C(n, s).
inline MomentResult expected_bbox_volume_dd_fixed(const PointSet& ps) {
    auto t0 = std::chrono::steady_clock::now();
    std::size_t n = ps.size(), d = ps.dim();
    if (d > kBBoxMaxDim)
        throw std::invalid_argument("expected_bbox_volume_dd_fixed: d capped at 4");
    // table[k-1][g], g = n - k - |P^+(H)|
    std::vector<std::vector<double>> table(d, std::vector<double>(n + 1, 0.0));
    for (unsigned sigma = 0; sigma < (1u << d); ++sigma) {
        auto coords = detail::reflected_coords(ps, sigma);
        enumerate_concise_sets(coords, [&](const ConciseSet& cs) {
            std::size_t k = cs.members.size();
            std::size_t g = n - k - cs.pplus.size();
            double prod = 1.0;
            for (double m : cs.maxima) prod *= m;
            table[k - 1][g] += prod;
        });
    }
    MomentResult res;
    res.method = Method::Exact;
    for (std::size_t s = 1; s <= n; ++s) {
        double mean = 0;
        for (std::size_t k = 1; k <= std::min(d, s); ++k)
            for (std::size_t g = 0; g + k <= n; ++g)
                if (table[k - 1][g] != 0.0)
                    mean += table[k - 1][g] * choose_ratio(g, (long long)(s - k), n, s);
        res.per_s.push_back({s, mean, std::nullopt});
    }
    res.mean = res.per_s.back().mean;
    res.elapsed_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - t0)
                         .count();
    return res;
}

}  // namespace geomstat
