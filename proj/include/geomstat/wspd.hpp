#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "geomstat/geometry.hpp"

namespace geomstat {

// Fair-split tree: each internal node splits its point bounding box at the
// midpoint of the longest side (ties broken by lowest dimension index, so
// construction is deterministic). The enclosing ball of a node is the ball
// circumscribing its bounding box.
class SplitTree {
public:
    struct Node {
        std::size_t begin = 0, end = 0;  // range into perm()
        int left = -1, right = -1, parent = -1;
        std::vector<double> lo, hi, center;
        double radius = 0;
        std::size_t count() const { return end - begin; }
        bool is_leaf() const { return left < 0; }
    };

    explicit SplitTree(const PointSet& ps) : ps_(&ps) {
        std::size_t n = ps.size();
        if (n == 0) throw std::invalid_argument("SplitTree: empty point set");
        perm_.resize(n);
        std::iota(perm_.begin(), perm_.end(), 0);
        leaf_of_point_.assign(n, -1);
        root_ = build(0, n, -1);
    }

    const Node& node(int v) const { return nodes_[v]; }
    int root() const { return root_; }
    std::size_t num_nodes() const { return nodes_.size(); }
    const std::vector<std::size_t>& perm() const { return perm_; }
    int leaf_of_point(std::size_t p) const { return leaf_of_point_[p]; }
    const PointSet& points() const { return *ps_; }

    template <typename Fn>
    void for_each_point(int v, Fn&& fn) const {
        for (std::size_t i = nodes_[v].begin; i < nodes_[v].end; ++i) fn(perm_[i]);
    }

private:
    int build(std::size_t begin, std::size_t end, int parent) {
        int id = int(nodes_.size());
        nodes_.emplace_back();
        std::size_t d = ps_->dim();
        Node nd;
        nd.begin = begin;
        nd.end = end;
        nd.parent = parent;
        nd.lo.assign(d, 0);
        nd.hi.assign(d, 0);
        for (std::size_t k = 0; k < d; ++k) {
            double lo = ps_->operator()(perm_[begin], k), hi = lo;
            for (std::size_t i = begin; i < end; ++i) {
                double v = ps_->operator()(perm_[i], k);
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
            nd.lo[k] = lo;
            nd.hi[k] = hi;
        }
        nd.center.resize(d);
        double diag2 = 0;
        for (std::size_t k = 0; k < d; ++k) {
            nd.center[k] = (nd.lo[k] + nd.hi[k]) / 2.0;
            double half = (nd.hi[k] - nd.lo[k]) / 2.0;
            diag2 += half * half;
        }
        nd.radius = std::sqrt(diag2);

        if (end - begin == 1) {
            leaf_of_point_[perm_[begin]] = id;
            nodes_[id] = std::move(nd);
            return id;
        }
        std::size_t split_dim = 0;
        double best = -1;
        for (std::size_t k = 0; k < d; ++k) {
            double len = nd.hi[k] - nd.lo[k];
            if (len > best) {
                best = len;
                split_dim = k;
            }
        }
        double mid = (nd.lo[split_dim] + nd.hi[split_dim]) / 2.0;
        auto it = std::partition(perm_.begin() + begin, perm_.begin() + end,
                                 [&](std::size_t p) { return ps_->operator()(p, split_dim) <= mid; });
        std::size_t cut = std::size_t(it - perm_.begin());
        // longest side > 0 and points at both extremes guarantee a real split
        nodes_[id] = std::move(nd);
        int l = build(begin, cut, id);
        int r = build(cut, end, id);
        nodes_[id].left = l;
        nodes_[id].right = r;
        return id;
    }

    const PointSet* ps_;
    std::vector<std::size_t> perm_;
    std::vector<Node> nodes_;
    std::vector<int> leaf_of_point_;
    int root_ = -1;
};

namespace detail {

inline double box_gap_sq(const SplitTree::Node& a, const SplitTree::Node& b) {
    double g2 = 0;
    for (std::size_t k = 0; k < a.lo.size(); ++k) {
        double g = std::max({0.0, a.lo[k] - b.hi[k], b.lo[k] - a.hi[k]});
        g2 += g * g;
    }
    return g2;
}

inline double center_distance(const SplitTree::Node& a, const SplitTree::Node& b) {
    double acc = 0;
    for (std::size_t k = 0; k < a.center.size(); ++k) {
        double t = a.center[k] - b.center[k];
        acc += t * t;
    }
    return std::sqrt(acc);
}

}  // namespace detail

// Lower bound on the distance between any point of node a and any point of
// node b, tightened by descending two levels and taking the smallest gap
// between the (up to 4x4) grandchild boxes. Always within
// [ball distance, true minimum distance].
inline double refined_box_gap(const SplitTree& tree, int a, int b) {
    auto expand = [&](int v, int* out) {
        const auto& nd = tree.node(v);
        int tmp[2];
        int n2 = 0;
        if (nd.is_leaf()) tmp[n2++] = v;
        else { tmp[0] = nd.left; tmp[1] = nd.right; n2 = 2; }
        int n3 = 0;
        for (int i = 0; i < n2; ++i) {
            const auto& c = tree.node(tmp[i]);
            if (c.is_leaf()) out[n3++] = tmp[i];
            else { out[n3++] = c.left; out[n3++] = c.right; }
        }
        return n3;
    };
    int as[4], bs[4];
    int na = expand(a, as), nb = expand(b, bs);
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < na; ++i)
        for (int j = 0; j < nb; ++j)
            best = std::min(best, detail::box_gap_sq(tree.node(as[i]), tree.node(bs[j])));
    return std::sqrt(best);
}

struct WSPair {
    int a = -1, b = -1;          // split-tree node ids
    std::size_t size_a = 0, size_b = 0;
    double delta_ball = 0;       // distance between the two enclosing balls
};

// Callahan-Kosaraju pair generation against the node enclosing balls: both
// sets fit in balls of radius r = max(r_a, r_b), and the pair is emitted
// once the distance between those equal-radius balls is at least z*r.
// Streaming form so large decompositions never need to be materialized.
template <typename Fn>
void for_each_wspd_pair(const SplitTree& tree, double z, Fn&& fn) {
    if (z < 1.0) throw std::invalid_argument("for_each_wspd_pair: z must be >= 1");
    std::vector<std::pair<int, int>> stack;

    auto center_dist = [&](int a, int b) {
        const auto& na = tree.node(a);
        const auto& nb = tree.node(b);
        double acc = 0;
        for (std::size_t k = 0; k < na.center.size(); ++k) {
            double t = na.center[k] - nb.center[k];
            acc += t * t;
        }
        return std::sqrt(acc);
    };

    // seed with (lc, rc) of every internal node
    std::vector<int> walk{tree.root()};
    while (!walk.empty()) {
        int v = walk.back();
        walk.pop_back();
        const auto& nd = tree.node(v);
        if (nd.is_leaf()) continue;
        stack.emplace_back(nd.left, nd.right);
        walk.push_back(nd.left);
        walk.push_back(nd.right);
    }

    while (!stack.empty()) {
        auto [a, b] = stack.back();
        stack.pop_back();
        const auto& na = tree.node(a);
        const auto& nb = tree.node(b);
        double rmax = std::max(na.radius, nb.radius);
        double cd = center_dist(a, b);
        if (cd - 2.0 * rmax >= z * rmax) {
            WSPair p;
            p.a = a;
            p.b = b;
            p.size_a = na.count();
            p.size_b = nb.count();
            p.delta_ball = std::max(0.0, cd - na.radius - nb.radius);
            fn(p);
            continue;
        }
        // split the node with the larger ball (ties by size, then id)
        bool split_a = na.radius > nb.radius ||
                       (na.radius == nb.radius &&
                        (na.count() > nb.count() || (na.count() == nb.count() && a < b)));
        if (tree.node(split_a ? a : b).is_leaf()) split_a = !split_a;
        if (split_a) {
            stack.emplace_back(na.left, b);
            stack.emplace_back(na.right, b);
        } else {
            stack.emplace_back(a, nb.left);
            stack.emplace_back(a, nb.right);
        }
    }
}

inline std::vector<WSPair> wspd_pairs(const SplitTree& tree, double z) {
    std::vector<WSPair> out;
    for_each_wspd_pair(tree, z, [&](const WSPair& p) { out.push_back(p); });
    return out;
}

struct PerPointSums {
    std::vector<double> sum;      // SUM(p)  = sum over pairs (A,B), A or B containing p, of |other| * delta
    std::vector<double> sum_sq;   // same with delta^2
};

namespace detail {

inline void accumulate_pair(std::vector<double>& ms, std::vector<double>& ms2,
                            const WSPair& p) {
    if (p.a < 0 || p.b < 0 || std::size_t(p.a) >= ms.size() ||
        std::size_t(p.b) >= ms.size())
        throw std::invalid_argument("accumulate_pair: foreign pair");
    ms[p.a] += double(p.size_b) * p.delta_ball;
    ms[p.b] += double(p.size_a) * p.delta_ball;
    ms2[p.a] += double(p.size_b) * p.delta_ball * p.delta_ball;
    ms2[p.b] += double(p.size_a) * p.delta_ball * p.delta_ball;
}

// one top-down pass SUM[v] = SUM[parent] + ms[v]; answers read at the leaves
inline PerPointSums top_down_sums(const SplitTree& tree, const std::vector<double>& ms,
                                  const std::vector<double>& ms2) {
    std::size_t nn = tree.num_nodes();
    std::vector<double> sumv(nn, 0.0), sumv2(nn, 0.0);
    std::vector<int> walk{tree.root()};
    while (!walk.empty()) {
        int v = walk.back();
        walk.pop_back();
        const auto& nd = tree.node(v);
        double base = nd.parent >= 0 ? sumv[nd.parent] : 0.0;
        double base2 = nd.parent >= 0 ? sumv2[nd.parent] : 0.0;
        sumv[v] = base + ms[v];
        sumv2[v] = base2 + ms2[v];
        if (!nd.is_leaf()) {
            walk.push_back(nd.left);
            walk.push_back(nd.right);
        }
    }
    std::size_t n = tree.points().size();
    PerPointSums out;
    out.sum.resize(n);
    out.sum_sq.resize(n);
    for (std::size_t p = 0; p < n; ++p) {
        int leaf = tree.leaf_of_point(p);
        out.sum[p] = sumv[leaf];
        out.sum_sq[p] = sumv2[leaf];
    }
    return out;
}

}  // namespace detail

// Eq-(19) aggregation: accumulate ms[v] at each node from its incident
// pairs, then propagate top-down. Each unordered pair contributes to both
// of its sides.
inline PerPointSums sum_per_point(const SplitTree& tree, const std::vector<WSPair>& pairs) {
    std::size_t nn = tree.num_nodes();
    std::vector<double> ms(nn, 0.0), ms2(nn, 0.0);
    for (const auto& p : pairs) detail::accumulate_pair(ms, ms2, p);
    return detail::top_down_sums(tree, ms, ms2);
}

// Test utility: delta_ball(p, q) for every point pair, by expanding pairs.
inline std::vector<std::vector<double>> pair_delta_matrix(const SplitTree& tree,
                                                          const std::vector<WSPair>& pairs) {
    std::size_t n = tree.points().size();
    std::vector<std::vector<double>> m(n, std::vector<double>(n, -1.0));
    for (const auto& pr : pairs)
        tree.for_each_point(pr.a, [&](std::size_t p) {
            tree.for_each_point(pr.b, [&](std::size_t q) {
                m[p][q] = pr.delta_ball;
                m[q][p] = pr.delta_ball;
            });
        });
    return m;
}

}  // namespace geomstat
