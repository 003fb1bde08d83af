#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

namespace geomstat {

// C(n-k, s-k) / C(n, s) = prod_{i<k} (s-i)/(n-i): the probability that a
// fixed k-subset is contained in a uniform s-subset. Telescoping product,
// never factorials.
inline double inclusion_ratio(std::size_t n, std::size_t k, std::size_t s) {
    if (k > 4) throw std::invalid_argument("inclusion_ratio: k must be <= 4");
    if (s > n) throw std::invalid_argument("inclusion_ratio: s > n");
    if (s < k) return 0.0;
    double out = 1.0;
    for (std::size_t i = 0; i < k; ++i)
        out *= double(s - i) / double(n - i);
    return out;
}

inline double log_choose(std::size_t m, long long j) {
    if (j < 0 || std::size_t(j) > m) return -std::numeric_limits<double>::infinity();
    return std::lgamma(double(m) + 1.0) - std::lgamma(double(j) + 1.0) -
           std::lgamma(double(m - std::size_t(j)) + 1.0);
}

// C(m, j) / C(n, s) for the per-s tables (j may exceed 4, m may differ
// from n-j). Log-gamma based; relative error well below 1e-12 at the
// instance sizes the engines handle.
inline double choose_ratio(std::size_t m, long long j, std::size_t n, std::size_t s) {
    double lo = log_choose(m, j);
    if (lo == -std::numeric_limits<double>::infinity()) return 0.0;
    return std::exp(lo - log_choose(n, s));
}

// Ratios C(n-k, s-k)/C(n,s) for k in 0..4 and all s, per the moment
// expansions. ratio(k, s) with s < k is 0 and ratio(0, s) is 1.
class BinomialTable {
public:
    explicit BinomialTable(std::size_t n) : n_(n), ratios_(5 * (n + 1)) {
        for (std::size_t s = 0; s <= n; ++s)
            for (std::size_t k = 0; k <= 4; ++k)
                ratios_[k * (n + 1) + s] = inclusion_ratio(n, k, s);
    }

    std::size_t n() const { return n_; }
    double ratio(std::size_t k, std::size_t s) const {
        return ratios_.at(k * (n_ + 1) + s);
    }

private:
    std::size_t n_;
    std::vector<double> ratios_;
};

}  // namespace geomstat
