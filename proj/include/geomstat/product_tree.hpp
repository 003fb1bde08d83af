#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "geomstat/scaled_real.hpp"

namespace geomstat {

// Augmented balanced tree over points in increasing y order. Leaves carry a
// weight D(q) and the factor 1/(1 - pi(q)); internal nodes maintain
//   iproduct[v] = iproduct[lc] * iproduct[rc]
//   sproduct[v] = sproduct[lc] * iproduct[rc] + sproduct[rc]
// An unmarked leaf contributes (ip = 1/(1-pi), sp = 0); marking switches it
// to (ip = 1, sp = D). query(rank) evaluates, over the suffix of strictly
// larger y,
//   sum_{marked q} D(q) / pibar({unmarked r above q})
// by a root-to-successor walk; no splitting, no persistence. The point set
// is static, so the shape is a perfectly balanced implicit tree built once.
class ProductTree {
public:
    ProductTree(std::vector<ScaledReal> weights, const std::vector<double>& probs)
        : n_(weights.size()), d_(std::move(weights)) {
        if (probs.size() != n_) throw std::invalid_argument("ProductTree: size mismatch");
        base_ = 1;
        while (base_ < n_) base_ <<= 1;
        ip_.assign(2 * base_, ScaledReal::one());
        sp_.assign(2 * base_, ScaledReal{});
        marked_.assign(n_, false);
        inv1mp_.resize(n_);
        for (std::size_t i = 0; i < n_; ++i) {
            if (!(probs[i] > 0.0 && probs[i] < 1.0))
                throw std::invalid_argument("ProductTree: pi must be in (0,1)");
            inv1mp_[i] = ScaledReal::from(1.0 / (1.0 - probs[i]));
            ip_[base_ + i] = inv1mp_[i];
        }
        for (std::size_t v = base_; v-- > 1;) pull(v);
    }

    ProductTree(const std::vector<double>& weights, const std::vector<double>& probs)
        : ProductTree(to_scaled(weights), probs) {}

    // Convenience constructor that also checks the y-order precondition.
    ProductTree(const std::vector<double>& y_sorted, std::vector<double> weights,
                std::vector<double> probs)
        : ProductTree(std::move(weights), std::move(probs)) {
        for (std::size_t i = 1; i < y_sorted.size(); ++i)
            if (!(y_sorted[i] > y_sorted[i - 1]))
                throw std::invalid_argument("ProductTree: y-coordinates not strictly increasing");
    }

    std::size_t size() const { return n_; }
    bool is_marked(std::size_t rank) const { return marked_.at(rank); }

    void addmark(std::size_t rank) {
        if (rank >= n_) throw std::invalid_argument("ProductTree: unknown point");
        if (marked_[rank]) throw std::invalid_argument("ProductTree: already marked");
        marked_[rank] = true;
        std::size_t v = base_ + rank;
        ip_[v] = ScaledReal::one();
        sp_[v] = d_[rank];
        ++visits_;
        for (v >>= 1; v >= 1; v >>= 1) {
            pull(v);
            ++visits_;
        }
    }

    // Eq-(6)-style weighted sum over marked points with strictly larger y.
    ScaledReal query_scaled(std::size_t rank) const {
        if (rank >= n_) throw std::invalid_argument("ProductTree: unknown point");
        return suffix_aggregate(rank + 1).second;
    }
    double query(std::size_t rank) const { return query_scaled(rank).to_double(); }

    // pibar of the unmarked points with strictly larger y.
    ScaledReal complement_query_scaled(std::size_t rank) const {
        if (rank >= n_) throw std::invalid_argument("ProductTree: unknown point");
        return ScaledReal::one() / suffix_aggregate(rank + 1).first;
    }
    double complement_query(std::size_t rank) const {
        return complement_query_scaled(rank).to_double();
    }

    ScaledReal root_iproduct() const { return ip_[1]; }
    ScaledReal root_sproduct() const { return sp_[1]; }

    std::size_t node_visits() const { return visits_; }
    void reset_node_visits() { visits_ = 0; }

private:
    static std::vector<ScaledReal> to_scaled(const std::vector<double>& w) {
        std::vector<ScaledReal> out(w.size());
        for (std::size_t i = 0; i < w.size(); ++i) out[i] = ScaledReal::from(w[i]);
        return out;
    }

    void pull(std::size_t v) {
        ip_[v] = ip_[2 * v] * ip_[2 * v + 1];
        sp_[v] = sp_[2 * v] * ip_[2 * v + 1] + sp_[2 * v + 1];
    }

    // (iproduct, sproduct) over leaves [from, n); padding leaves are identity.
    std::pair<ScaledReal, ScaledReal> suffix_aggregate(std::size_t from) const {
        ScaledReal ip = ScaledReal::one();
        ScaledReal sp{};
        std::size_t l = base_ + from;
        std::size_t r = base_ + base_;
        while (l < r) {
            if (l & 1) {
                sp = sp * ip_[l] + sp_[l];
                ip = ip * ip_[l];
                ++visits_;
                ++l;
            }
            l >>= 1;
            r >>= 1;
        }
        return {ip, sp};
    }

    std::size_t n_ = 0;
    std::size_t base_ = 1;
    std::vector<ScaledReal> ip_, sp_, d_, inv1mp_;
    std::vector<bool> marked_;
    mutable std::size_t visits_ = 0;
};

}  // namespace geomstat
