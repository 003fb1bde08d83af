#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace geomstat {

// Relative tolerance for geometric predicates. Values inside the tolerance
// band are treated as a general-position violation, not silently resolved.
inline constexpr double kGeomTol = 1e-9;

struct degeneracy_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using Point = std::vector<double>;

// Flat row-major point storage. All points share the same dimension.
class PointSet {
public:
    PointSet() = default;
    PointSet(std::size_t dim, std::vector<double> data)
        : dim_(dim), data_(std::move(data)) {
        if (dim_ == 0) throw std::invalid_argument("PointSet: dim must be >= 1");
        if (data_.size() % dim_ != 0)
            throw std::invalid_argument("PointSet: data size not a multiple of dim");
        for (double v : data_)
            if (!std::isfinite(v))
                throw std::invalid_argument("PointSet: non-finite coordinate");
    }

    static PointSet from_points(const std::vector<Point>& pts) {
        if (pts.empty()) throw std::invalid_argument("PointSet: empty");
        std::size_t d = pts.front().size();
        std::vector<double> flat;
        flat.reserve(pts.size() * d);
        for (const auto& p : pts) {
            if (p.size() != d)
                throw std::invalid_argument("PointSet: inconsistent dimensions");
            flat.insert(flat.end(), p.begin(), p.end());
        }
        return PointSet(d, std::move(flat));
    }

    std::size_t size() const { return dim_ ? data_.size() / dim_ : 0; }
    std::size_t dim() const { return dim_; }

    double operator()(std::size_t i, std::size_t k) const { return data_[i * dim_ + k]; }
    std::span<const double> point(std::size_t i) const {
        return {data_.data() + i * dim_, dim_};
    }
    Point point_copy(std::size_t i) const {
        auto s = point(i);
        return Point(s.begin(), s.end());
    }
    const std::vector<double>& data() const { return data_; }
    std::vector<double>& mutable_data() { return data_; }

private:
    std::size_t dim_ = 0;
    std::vector<double> data_;
};

inline double euclidean_distance(std::span<const double> p, std::span<const double> q) {
    if (p.size() != q.size())
        throw std::invalid_argument("euclidean_distance: dimension mismatch");
    double acc = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        double t = p[i] - q[i];
        acc += t * t;
    }
    return std::sqrt(acc);
}

inline double squared_distance(std::span<const double> p, std::span<const double> q) {
    double acc = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        double t = p[i] - q[i];
        acc += t * t;
    }
    return acc;
}

namespace detail {

// Determinant by Gaussian elimination with partial pivoting. Small d only.
inline double det(std::vector<double>& m, std::size_t d) {
    double sign = 1.0;
    for (std::size_t c = 0; c < d; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < d; ++r)
            if (std::abs(m[r * d + c]) > std::abs(m[piv * d + c])) piv = r;
        if (piv != c) {
            for (std::size_t k = 0; k < d; ++k) std::swap(m[c * d + k], m[piv * d + k]);
            sign = -sign;
        }
        if (m[c * d + c] == 0.0) return 0.0;
        for (std::size_t r = c + 1; r < d; ++r) {
            double f = m[r * d + c] / m[c * d + c];
            for (std::size_t k = c; k < d; ++k) m[r * d + k] -= f * m[c * d + k];
        }
    }
    double out = sign;
    for (std::size_t c = 0; c < d; ++c) out *= m[c * d + c];
    return out;
}

}  // namespace detail

// Volume of the d-simplex with the given d+1 vertices: |det(v2-v1,...)|/d!.
inline double simplex_volume(const std::vector<Point>& vertices) {
    if (vertices.empty()) throw std::invalid_argument("simplex_volume: no vertices");
    std::size_t d = vertices.front().size();
    if (vertices.size() != d + 1)
        throw std::invalid_argument("simplex_volume: need exactly d+1 vertices");
    std::vector<double> m(d * d);
    for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < d; ++c)
            m[r * d + c] = vertices[r + 1][c] - vertices[0][c];
    double v = std::abs(detail::det(m, d));
    double fact = 1.0;
    for (std::size_t k = 2; k <= d; ++k) fact *= double(k);
    return v / fact;
}

struct Disk {
    double cx = 0, cy = 0;
    double radius = 0;
    double diameter() const { return 2.0 * radius; }
};

inline Disk diametral_disk(std::span<const double> p, std::span<const double> q) {
    if (p.size() != 2 || q.size() != 2)
        throw std::invalid_argument("diametral_disk: points must be 2-dimensional");
    if (p[0] == q[0] && p[1] == q[1])
        throw std::invalid_argument("diametral_disk: identical points");
    return {(p[0] + q[0]) / 2.0, (p[1] + q[1]) / 2.0,
            euclidean_distance(p, q) / 2.0};
}

// Unique disk through three non-collinear points.
inline Disk circumdisk(std::span<const double> p, std::span<const double> q,
                       std::span<const double> t) {
    double ax = p[0], ay = p[1], bx = q[0], by = q[1], cx = t[0], cy = t[1];
    double den = 2.0 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by));
    double scale = std::max({std::abs(ax - bx) + std::abs(ay - by),
                             std::abs(ax - cx) + std::abs(ay - cy), 1e-300});
    if (std::abs(den) <= kGeomTol * scale * scale * 4.0)
        throw degeneracy_error("circumdisk: collinear triple");
    double a2 = ax * ax + ay * ay, b2 = bx * bx + by * by, c2 = cx * cx + cy * cy;
    double ux = (a2 * (by - cy) + b2 * (cy - ay) + c2 * (ay - by)) / den;
    double uy = (a2 * (cx - bx) + b2 * (ax - cx) + c2 * (bx - ax)) / den;
    double r = std::hypot(ax - ux, ay - uy);
    return {ux, uy, r};
}

inline bool disk_contains(const Disk& D, std::span<const double> p, bool closed = true) {
    double d = std::hypot(p[0] - D.cx, p[1] - D.cy);
    return closed ? d <= D.radius : d < D.radius;
}

// General-position ingest check: exact shared-coordinate test, plus affine
// degeneracy over (d+1)-subsets (exhaustive for n <= 64, sampled otherwise).
// Returns a description of the first violation found, or empty string.
inline std::string general_position_violation(const PointSet& ps,
                                              std::uint64_t sample_seed = 1234567) {
    std::size_t n = ps.size(), d = ps.dim();
    for (std::size_t k = 0; k < d; ++k) {
        std::vector<std::pair<double, std::size_t>> col(n);
        for (std::size_t i = 0; i < n; ++i) col[i] = {ps(i, k), i};
        std::sort(col.begin(), col.end());
        for (std::size_t i = 1; i < n; ++i)
            if (col[i].first == col[i - 1].first)
                return "points " + std::to_string(col[i - 1].second) + " and " +
                       std::to_string(col[i].second) + " share coordinate " +
                       std::to_string(k);
    }
    if (d > 3 || n <= d) return {};

    double scale = 0;
    for (double v : ps.data()) scale = std::max(scale, std::abs(v));
    if (scale == 0) scale = 1;
    double vol_tol = kGeomTol;
    for (std::size_t k = 0; k < d; ++k) vol_tol *= scale;

    auto flat = [&](const std::vector<std::size_t>& idx) -> std::string {
        std::vector<Point> verts;
        for (auto i : idx) verts.push_back(ps.point_copy(i));
        if (simplex_volume(verts) <= vol_tol) {
            std::string msg = "affinely degenerate subset {";
            for (auto i : idx) msg += std::to_string(i) + " ";
            msg += "}";
            return msg;
        }
        return {};
    };

    if (n <= 64) {
        std::vector<std::size_t> idx(d + 1);
        // iterate all (d+1)-subsets
        for (std::size_t i = 0; i <= d; ++i) idx[i] = i;
        while (true) {
            if (auto msg = flat(idx); !msg.empty()) return msg;
            std::size_t j = d + 1;
            while (j-- > 0) {
                if (idx[j] + (d - j) < n - 1) {
                    ++idx[j];
                    for (std::size_t k = j + 1; k <= d; ++k) idx[k] = idx[k - 1] + 1;
                    break;
                }
                if (j == 0) return {};
            }
        }
    }
    std::mt19937_64 rng(sample_seed);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    for (int trial = 0; trial < 20000; ++trial) {
        std::vector<std::size_t> idx;
        while (idx.size() < d + 1) {
            std::size_t c = pick(rng);
            if (std::find(idx.begin(), idx.end(), c) == idx.end()) idx.push_back(c);
        }
        if (auto msg = flat(idx); !msg.empty()) return msg;
    }
    return {};
}

}  // namespace geomstat
