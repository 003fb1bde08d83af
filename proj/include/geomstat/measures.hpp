#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "geomstat/geometry.hpp"

namespace geomstat {

enum class MeasureKind { BBoxVolume, ConvexHullVolume, CentroidSqDist, MPD, SEDDiameter };

inline std::string measure_name(MeasureKind k) {
    switch (k) {
        case MeasureKind::BBoxVolume: return "bbox";
        case MeasureKind::ConvexHullVolume: return "hull";
        case MeasureKind::CentroidSqDist: return "centroid";
        case MeasureKind::MPD: return "mpd";
        case MeasureKind::SEDDiameter: return "sed";
    }
    return "?";
}

namespace detail {

inline double bbox_volume(const PointSet& ps, std::span<const std::size_t> idx) {
    if (idx.size() <= 1) return 0.0;
    std::size_t d = ps.dim();
    double vol = 1.0;
    for (std::size_t k = 0; k < d; ++k) {
        double lo = ps(idx[0], k), hi = lo;
        for (auto i : idx) {
            lo = std::min(lo, ps(i, k));
            hi = std::max(hi, ps(i, k));
        }
        vol *= hi - lo;
    }
    return vol;
}

inline double cross2(double ox, double oy, double ax, double ay, double bx, double by) {
    return (ax - ox) * (by - oy) - (ay - oy) * (bx - ox);
}

// Monotone-chain hull area (shoelace over the hull polygon).
inline double hull_area_2d(const PointSet& ps, std::span<const std::size_t> idx) {
    std::size_t m = idx.size();
    if (m <= 2) return 0.0;
    std::vector<std::size_t> pts(idx.begin(), idx.end());
    std::sort(pts.begin(), pts.end(), [&](std::size_t a, std::size_t b) {
        return ps(a, 0) < ps(b, 0) || (ps(a, 0) == ps(b, 0) && ps(a, 1) < ps(b, 1));
    });
    std::vector<std::size_t> hull(2 * m);
    std::size_t k = 0;
    for (std::size_t i = 0; i < m; ++i) {
        while (k >= 2 && cross2(ps(hull[k - 2], 0), ps(hull[k - 2], 1),
                                ps(hull[k - 1], 0), ps(hull[k - 1], 1),
                                ps(pts[i], 0), ps(pts[i], 1)) <= 0)
            --k;
        hull[k++] = pts[i];
    }
    std::size_t lower = k + 1;
    for (std::size_t i = m - 1; i-- > 0;) {
        while (k >= lower && cross2(ps(hull[k - 2], 0), ps(hull[k - 2], 1),
                                    ps(hull[k - 1], 0), ps(hull[k - 1], 1),
                                    ps(pts[i], 0), ps(pts[i], 1)) <= 0)
            --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    double area2 = 0;
    for (std::size_t i = 0; i < hull.size(); ++i) {
        std::size_t j = (i + 1) % hull.size();
        area2 += ps(hull[i], 0) * ps(hull[j], 1) - ps(hull[j], 0) * ps(hull[i], 1);
    }
    return std::abs(area2) / 2.0;
}

// Brute-force 3D hull volume for small subsets: a triple is a hull facet iff
// all other subset points lie strictly on one side of its plane; the volume
// is the sum of tetrahedra from the subset centroid to the facets.
inline double hull_volume_3d(const PointSet& ps, std::span<const std::size_t> idx) {
    std::size_t m = idx.size();
    if (m <= 3) return 0.0;
    std::array<double, 3> c{0, 0, 0};
    for (auto i : idx)
        for (int k = 0; k < 3; ++k) c[k] += ps(i, k) / double(m);
    double vol = 0;
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = a + 1; b < m; ++b)
            for (std::size_t g = b + 1; g < m; ++g) {
                auto A = ps.point(idx[a]);
                auto B = ps.point(idx[b]);
                auto G = ps.point(idx[g]);
                double ux = B[0] - A[0], uy = B[1] - A[1], uz = B[2] - A[2];
                double vx = G[0] - A[0], vy = G[1] - A[1], vz = G[2] - A[2];
                double nx = uy * vz - uz * vy;
                double ny = uz * vx - ux * vz;
                double nz = ux * vy - uy * vx;
                int pos = 0, neg = 0;
                for (std::size_t o = 0; o < m; ++o) {
                    if (o == a || o == b || o == g) continue;
                    auto P = ps.point(idx[o]);
                    double sd = nx * (P[0] - A[0]) + ny * (P[1] - A[1]) + nz * (P[2] - A[2]);
                    (sd > 0 ? pos : neg)++;
                }
                if (pos != 0 && neg != 0) continue;  // not a hull facet
                double sd = nx * (c[0] - A[0]) + ny * (c[1] - A[1]) + nz * (c[2] - A[2]);
                vol += std::abs(sd) / 6.0;
            }
    return vol;
}

inline double centroid_sq_dist(const PointSet& ps, std::span<const std::size_t> idx) {
    std::size_t m = idx.size();
    if (m == 0) return 0.0;
    std::size_t d = ps.dim();
    std::vector<double> c(d, 0.0);
    for (auto i : idx)
        for (std::size_t k = 0; k < d; ++k) c[k] += ps(i, k);
    for (auto& v : c) v /= double(m);
    double acc = 0;
    for (auto i : idx)
        for (std::size_t k = 0; k < d; ++k) {
            double t = ps(i, k) - c[k];
            acc += t * t;
        }
    return acc / double(m);
}

inline double mean_pairwise_distance(const PointSet& ps, std::span<const std::size_t> idx) {
    std::size_t m = idx.size();
    if (m < 2) throw std::invalid_argument("MPD requires at least 2 points");
    double acc = 0;
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = a + 1; b < m; ++b)
            acc += euclidean_distance(ps.point(idx[a]), ps.point(idx[b]));
    return acc * 2.0 / (double(m) * double(m - 1));
}

// Welzl-style move-to-front smallest enclosing disk.
struct MinidiskSolver {
    const PointSet& ps;

    Disk disk1(std::size_t a) const { return {ps(a, 0), ps(a, 1), 0.0}; }
    Disk disk2(std::size_t a, std::size_t b) const {
        return diametral_disk(ps.point(a), ps.point(b));
    }
    Disk disk3(std::size_t a, std::size_t b, std::size_t c) const {
        return circumdisk(ps.point(a), ps.point(b), ps.point(c));
    }
    static bool in(const Disk& D, double x, double y) {
        return std::hypot(x - D.cx, y - D.cy) <= D.radius * (1.0 + 1e-12) + 1e-300;
    }
    bool in(const Disk& D, std::size_t i) const { return in(D, ps(i, 0), ps(i, 1)); }

    Disk solve(std::vector<std::size_t> pts) const {
        std::mt19937_64 rng(0x5eedULL);
        std::shuffle(pts.begin(), pts.end(), rng);
        Disk D{0, 0, -1};
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (D.radius >= 0 && in(D, pts[i])) continue;
            D = disk1(pts[i]);
            for (std::size_t j = 0; j < i; ++j) {
                if (in(D, pts[j])) continue;
                D = disk2(pts[i], pts[j]);
                for (std::size_t k = 0; k < j; ++k) {
                    if (in(D, pts[k])) continue;
                    D = disk3(pts[i], pts[j], pts[k]);
                }
            }
        }
        return D;
    }
};

}  // namespace detail

inline double sed_diameter(const PointSet& ps, std::span<const std::size_t> idx) {
    if (ps.dim() != 2) throw std::invalid_argument("SED diameter requires d = 2");
    if (idx.empty()) return 0.0;
    if (idx.size() == 1) return 0.0;
    detail::MinidiskSolver solver{ps};
    return solver.solve({idx.begin(), idx.end()}).diameter();
}

inline double eval_measure(MeasureKind kind, const PointSet& ps,
                           std::span<const std::size_t> idx) {
    switch (kind) {
        case MeasureKind::BBoxVolume:
            return detail::bbox_volume(ps, idx);
        case MeasureKind::ConvexHullVolume:
            if (idx.size() <= ps.dim()) return 0.0;
            if (ps.dim() == 2) return detail::hull_area_2d(ps, idx);
            if (ps.dim() == 3) return detail::hull_volume_3d(ps, idx);
            throw std::invalid_argument("hull evaluation limited to d <= 3");
        case MeasureKind::CentroidSqDist:
            return detail::centroid_sq_dist(ps, idx);
        case MeasureKind::MPD:
            return detail::mean_pairwise_distance(ps, idx);
        case MeasureKind::SEDDiameter:
            return sed_diameter(ps, idx);
    }
    throw std::logic_error("unknown measure");
}

}  // namespace geomstat
