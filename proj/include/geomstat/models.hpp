#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace geomstat {

// Per-point inclusion probabilities. Endpoints 0 and 1 are rejected: the
// corner-term algebra divides by 1 - pi(p).
struct BernoulliModel {
    std::vector<double> probs;

    explicit BernoulliModel(std::vector<double> p) : probs(std::move(p)) {
        for (double v : probs)
            if (!(v > 0.0 && v < 1.0))
                throw std::invalid_argument(
                    "BernoulliModel: probabilities must lie strictly in (0,1)");
    }
};

struct FixedSizeModel {
    std::size_t s = 0;
};

using DistributionSpec = std::variant<BernoulliModel, FixedSizeModel>;

inline double pi_product(const BernoulliModel& m, std::span<const std::size_t> Q) {
    double out = 1.0;
    for (auto i : Q) out *= m.probs.at(i);
    return out;
}

inline double pibar_product(const BernoulliModel& m, std::span<const std::size_t> Q) {
    double out = 1.0;
    for (auto i : Q) out *= 1.0 - m.probs.at(i);
    return out;
}

enum class Method { Exact, Approx, Sample, Oracle };

inline std::string method_name(Method m) {
    switch (m) {
        case Method::Exact: return "exact";
        case Method::Approx: return "approx";
        case Method::Sample: return "sample";
        case Method::Oracle: return "oracle";
    }
    return "?";
}

struct PerSRow {
    std::size_t s = 0;
    double mean = 0;
    std::optional<double> variance;
};

struct MomentResult {
    double mean = 0;
    std::optional<double> variance;
    std::vector<PerSRow> per_s;
    Method method = Method::Exact;
    double elapsed_ms = 0;
    bool variance_clamped = false;  // a tiny negative variance was clamped to 0
};

// Clamp tiny negative variances arising from cancellation; anything below
// -1e-9 (relative to the second moment) is a genuine bug and passes through.
inline double clamp_variance(double v, double second_moment, bool* flagged = nullptr) {
    double tol = 1e-9 * std::max(1.0, std::abs(second_moment));
    if (v < 0.0 && v >= -tol) {
        if (flagged) *flagged = true;
        return 0.0;
    }
    return v;
}

// Bernoulli: one independent coin per point. Fixed-size: uniform s-subset by
// partial Fisher-Yates. Deterministic given the rng state.
inline std::vector<std::size_t> sample_subset(std::size_t n, const DistributionSpec& dist,
                                              std::mt19937_64& rng) {
    std::vector<std::size_t> out;
    if (const auto* b = std::get_if<BernoulliModel>(&dist)) {
        if (b->probs.size() != n)
            throw std::invalid_argument("sample_subset: probs length mismatch");
        std::uniform_real_distribution<double> u(0.0, 1.0);
        for (std::size_t i = 0; i < n; ++i)
            if (u(rng) < b->probs[i]) out.push_back(i);
        return out;
    }
    const auto& f = std::get<FixedSizeModel>(dist);
    if (f.s > n) throw std::invalid_argument("sample_subset: s > n");
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    for (std::size_t i = 0; i < f.s; ++i) {
        std::uniform_int_distribution<std::size_t> pick(i, n - 1);
        std::swap(idx[i], idx[pick(rng)]);
    }
    out.assign(idx.begin(), idx.begin() + f.s);
    return out;
}

}  // namespace geomstat
