#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "geomstat/geometry.hpp"
#include "geomstat/models.hpp"

namespace geomstat {

struct dataio_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Dataset {
    PointSet points;
    std::optional<std::vector<double>> probs;  // Bernoulli column, if present
    std::string source;                        // file path or generator spec
    std::uint64_t seed = 0;
};

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' '))
            cell.pop_back();
        std::size_t b = cell.find_first_not_of(' ');
        out.push_back(b == std::string::npos ? "" : cell.substr(b));
    }
    if (!line.empty() && line.back() == ',') out.push_back("");
    return out;
}

inline std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// shared-coordinate scan: any two rows agreeing exactly in some column break
// the general-position contract for the sweep engines
inline void check_ingest_general_position(const std::vector<std::vector<double>>& rows,
                                          std::size_t d) {
    for (std::size_t k = 0; k < d; ++k) {
        std::map<double, std::size_t> seen;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            auto [it, fresh] = seen.emplace(rows[r][k], r);
            if (!fresh)
                throw degeneracy_error("general-position violation: rows " +
                                       std::to_string(it->second + 2) + " and " +
                                       std::to_string(r + 2) + " share x" +
                                       std::to_string(k + 1));
        }
    }
}

}  // namespace detail

// Header `x1,...,xd[,prob]`, one decimal-float row per point.
inline Dataset read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw dataio_error("cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw dataio_error(path + ": empty file");
    auto header = detail::split_csv_line(line);
    bool has_prob = !header.empty() && header.back() == "prob";
    std::size_t d = header.size() - (has_prob ? 1 : 0);
    if (d == 0) throw dataio_error(path + ": no coordinate columns");
    for (std::size_t k = 0; k < d; ++k)
        if (header[k] != "x" + std::to_string(k + 1))
            throw dataio_error(path + ": header column " + std::to_string(k + 1) +
                               " must be x" + std::to_string(k + 1));

    std::vector<std::vector<double>> rows;
    std::vector<double> probs;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line == "\r") continue;
        auto cells = detail::split_csv_line(line);
        if (cells.size() != header.size())
            throw dataio_error(path + ": row " + std::to_string(lineno) + " has " +
                               std::to_string(cells.size()) + " cells, expected " +
                               std::to_string(header.size()));
        std::vector<double> row(d);
        for (std::size_t k = 0; k < header.size(); ++k) {
            double v;
            try {
                std::size_t pos = 0;
                v = std::stod(cells[k], &pos);
                if (pos != cells[k].size()) throw std::invalid_argument("");
            } catch (const std::exception&) {
                throw dataio_error(path + ": row " + std::to_string(lineno) +
                                   ", column " + std::to_string(k + 1) +
                                   ": not a number: '" + cells[k] + "'");
            }
            if (!std::isfinite(v))
                throw dataio_error(path + ": row " + std::to_string(lineno) +
                                   ", column " + std::to_string(k + 1) +
                                   ": non-finite value");
            if (k < d) {
                row[k] = v;
            } else {
                if (!(v > 0.0 && v < 1.0))
                    throw dataio_error(path + ": row " + std::to_string(lineno) +
                                       ": prob must lie in (0,1)");
                probs.push_back(v);
            }
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw dataio_error(path + ": no data rows");
    detail::check_ingest_general_position(rows, d);

    Dataset ds;
    ds.points = PointSet::from_points(rows);
    if (has_prob) ds.probs = std::move(probs);
    ds.source = path;
    return ds;
}

inline void write_csv(const Dataset& ds, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw dataio_error("cannot write " + path);
    std::size_t d = ds.points.dim();
    for (std::size_t k = 0; k < d; ++k) out << (k ? "," : "") << "x" << k + 1;
    if (ds.probs) out << ",prob";
    out << "\n";
    for (std::size_t i = 0; i < ds.points.size(); ++i) {
        for (std::size_t k = 0; k < d; ++k)
            out << (k ? "," : "") << detail::format_g17(ds.points(i, k));
        if (ds.probs) out << "," << detail::format_g17((*ds.probs)[i]);
        out << "\n";
    }
    if (!out) throw dataio_error("write failed: " + path);
}

struct GenerateParams {
    std::size_t clusters = 5;   // clustered only
    double spread = 0.02;       // per-cluster Gaussian sigma
};

// Deterministic synthetic datasets (std::mt19937_64 keyed by the seed; the
// same seed yields the same bit stream on every platform).
inline Dataset generate(const std::string& kind, std::size_t n, std::size_t d,
                        std::uint64_t seed, const GenerateParams& params = {}) {
    if (n == 0 || d == 0) throw std::invalid_argument("generate: need n, d >= 1");
    std::mt19937_64 rng(seed);
    std::vector<double> flat;
    flat.reserve(n * d);
    if (kind == "uniform-cube") {
        std::uniform_real_distribution<double> u(0.0, 1.0);
        for (std::size_t i = 0; i < n * d; ++i) flat.push_back(u(rng));
    } else if (kind == "clustered") {
        if (params.clusters == 0) throw std::invalid_argument("generate: clusters >= 1");
        std::uniform_real_distribution<double> u(0.0, 1.0);
        std::normal_distribution<double> g(0.0, params.spread);
        std::vector<double> centers(params.clusters * d);
        for (auto& c : centers) c = u(rng);
        std::uniform_int_distribution<std::size_t> pick(0, params.clusters - 1);
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t c = pick(rng);
            for (std::size_t k = 0; k < d; ++k)
                flat.push_back(centers[c * d + k] + g(rng));
        }
    } else {
        throw std::invalid_argument("generate: unknown kind '" + kind + "'");
    }

    // enforce general position: nudge exact per-column collisions
    std::uniform_real_distribution<double> jitter(-1e-9, 1e-9);
    for (std::size_t k = 0; k < d; ++k) {
        bool clean = false;
        while (!clean) {
            clean = true;
            std::map<double, std::size_t> seen;
            for (std::size_t i = 0; i < n; ++i) {
                auto [it, fresh] = seen.emplace(flat[i * d + k], i);
                if (!fresh) {
                    flat[i * d + k] += jitter(rng);
                    clean = false;
                }
            }
        }
    }

    Dataset ds;
    ds.points = PointSet(d, std::move(flat));
    ds.source = kind + " n=" + std::to_string(n) + " d=" + std::to_string(d);
    ds.seed = seed;
    return ds;
}

// Run descriptor serialized alongside the numbers so any output file is
// reproducible from its own metadata.
struct ResultMeta {
    std::string measure;
    std::string distribution;
    std::size_t n = 0, d = 0;
    std::optional<double> epsilon;
    std::optional<std::size_t> samples;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> s;
};

// Field order: measure, distribution, method, n, d, s?, epsilon?, samples?,
// seed?, mean, variance?, per_s?, elapsed_ms.
inline nlohmann::ordered_json result_to_json(const MomentResult& res, const ResultMeta& meta) {
    nlohmann::ordered_json j;
    j["measure"] = meta.measure;
    j["distribution"] = meta.distribution;
    j["method"] = method_name(res.method);
    j["n"] = meta.n;
    j["d"] = meta.d;
    if (meta.s) j["s"] = *meta.s;
    if (meta.epsilon) j["epsilon"] = *meta.epsilon;
    if (meta.samples) j["samples"] = *meta.samples;
    if (meta.seed) j["seed"] = *meta.seed;
    j["mean"] = res.mean;
    if (res.variance) j["variance"] = *res.variance;
    if (!res.per_s.empty()) {
        auto arr = nlohmann::ordered_json::array();
        for (const auto& row : res.per_s) {
            auto r = nlohmann::ordered_json::array();
            r.push_back(row.s);
            r.push_back(row.mean);
            if (row.variance) r.push_back(*row.variance);
            arr.push_back(std::move(r));
        }
        j["per_s"] = std::move(arr);
    }
    j["elapsed_ms"] = res.elapsed_ms;
    return j;
}

inline void write_result(const MomentResult& res, const ResultMeta& meta,
                         const std::string& format, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw dataio_error("cannot write " + path);
    if (format == "json") {
        out << result_to_json(res, meta).dump(2) << "\n";
    } else if (format == "csv") {
        out << "measure,distribution,method,s,mean,variance,elapsed_ms\n";
        auto emit = [&](std::size_t s, double mean, std::optional<double> var) {
            out << meta.measure << "," << meta.distribution << ","
                << method_name(res.method) << "," << s << ","
                << detail::format_g17(mean) << ","
                << (var ? detail::format_g17(*var) : "") << ","
                << detail::format_g17(res.elapsed_ms) << "\n";
        };
        if (res.per_s.empty())
            emit(meta.s.value_or(0), res.mean, res.variance);
        else
            for (const auto& row : res.per_s) emit(row.s, row.mean, row.variance);
    } else {
        throw std::invalid_argument("write_result: format must be json or csv");
    }
    if (!out) throw dataio_error("write failed: " + path);
}

}  // namespace geomstat
