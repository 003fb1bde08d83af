#pragma once

#include <chrono>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "geomstat/measures.hpp"
#include "geomstat/models.hpp"

namespace geomstat {

inline constexpr std::size_t kOracleMaxN = 20;

namespace detail {

inline double eval_or_zero(MeasureKind kind, const PointSet& ps,
                           std::span<const std::size_t> idx) {
    if (kind == MeasureKind::MPD && idx.size() < 2) return 0.0;
    return eval_measure(kind, ps, idx);
}

template <typename Fn>
void for_each_subset_of_size(std::size_t n, std::size_t s, Fn&& fn) {
    if (s > n) return;
    std::vector<std::size_t> idx(s);
    for (std::size_t i = 0; i < s; ++i) idx[i] = i;
    while (true) {
        fn(idx);
        if (s == 0) return;
        std::size_t j = s;
        while (j-- > 0) {
            if (idx[j] + (s - 1 - j) < n - 1) {
                ++idx[j];
                for (std::size_t k = j + 1; k < s; ++k) idx[k] = idx[k - 1] + 1;
                break;
            }
            if (j == 0) return;
        }
    }
}

}  // namespace detail

// Ground truth by full enumeration. Bernoulli weighs each subset Q by
// pi(Q) * pibar(P \ Q); fixed-size enumerates only size-s subsets.
inline MomentResult oracle_moments(const PointSet& ps, const DistributionSpec& dist,
                                   MeasureKind kind) {
    std::size_t n = ps.size();
    if (n > kOracleMaxN)
        throw std::invalid_argument("oracle_moments: n exceeds enumeration cap of 20");
    auto t0 = std::chrono::steady_clock::now();
    MomentResult res;
    res.method = Method::Oracle;

    double e1 = 0, e2 = 0;
    if (const auto* b = std::get_if<BernoulliModel>(&dist)) {
        if (b->probs.size() != n)
            throw std::invalid_argument("oracle_moments: probs length mismatch");
        std::vector<std::size_t> idx;
        for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << n); ++mask) {
            idx.clear();
            double w = 1.0;
            for (std::size_t i = 0; i < n; ++i) {
                if (mask >> i & 1) {
                    idx.push_back(i);
                    w *= b->probs[i];
                } else {
                    w *= 1.0 - b->probs[i];
                }
            }
            double v = detail::eval_or_zero(kind, ps, idx);
            e1 += w * v;
            e2 += w * v * v;
        }
    } else {
        const auto& f = std::get<FixedSizeModel>(dist);
        if (f.s > n) throw std::invalid_argument("oracle_moments: s > n");
        std::size_t count = 0;
        detail::for_each_subset_of_size(n, f.s, [&](const std::vector<std::size_t>& idx) {
            double v = detail::eval_or_zero(kind, ps, idx);
            e1 += v;
            e2 += v * v;
            ++count;
        });
        e1 /= double(count);
        e2 /= double(count);
    }
    res.mean = e1;
    res.variance = clamp_variance(e2 - e1 * e1, e2, &res.variance_clamped);
    res.elapsed_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - t0)
                         .count();
    return res;
}

// Sample mean and unbiased (n-1) sample variance over independent draws.
inline MomentResult monte_carlo_moments(const PointSet& ps, const DistributionSpec& dist,
                                        MeasureKind kind, std::size_t num_samples,
                                        std::uint64_t seed) {
    if (num_samples < 2)
        throw std::invalid_argument("monte_carlo_moments: need num_samples >= 2");
    auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(seed);
    // Welford streaming moments
    double mean = 0, m2 = 0;
    for (std::size_t i = 0; i < num_samples; ++i) {
        auto idx = sample_subset(ps.size(), dist, rng);
        double v = detail::eval_or_zero(kind, ps, idx);
        double delta = v - mean;
        mean += delta / double(i + 1);
        m2 += delta * (v - mean);
    }
    MomentResult res;
    res.method = Method::Sample;
    res.mean = mean;
    res.variance = m2 / double(num_samples - 1);
    res.elapsed_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - t0)
                         .count();
    return res;
}

}  // namespace geomstat
