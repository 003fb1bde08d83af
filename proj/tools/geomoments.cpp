// geomoments: expected value and variance of geometric measures of random
// point subsets. Subcommands: moments (analytic engines), oracle (full
// enumeration, n <= 20), sample (Monte Carlo baseline), gen (synthetic
// datasets), bench (timing/error grids).

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "geomstat/bbox.hpp"
#include "geomstat/centroid.hpp"
#include "geomstat/dataio.hpp"
#include "geomstat/hull.hpp"
#include "geomstat/mpd.hpp"
#include "geomstat/oracle.hpp"
#include "geomstat/sed.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitData = 1;
constexpr int kExitUsage = 2;

struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

geomstat::MeasureKind parse_measure(const std::string& m) {
    if (m == "bbox") return geomstat::MeasureKind::BBoxVolume;
    if (m == "hull") return geomstat::MeasureKind::ConvexHullVolume;
    if (m == "centroid") return geomstat::MeasureKind::CentroidSqDist;
    if (m == "mpd") return geomstat::MeasureKind::MPD;
    if (m == "sed") return geomstat::MeasureKind::SEDDiameter;
    throw usage_error("unknown measure: " + m);
}

struct RunOpts {
    std::string input, measure, dist = "fixed", method = "exact";
    std::string out, format = "json";
    std::size_t s = 0;
    bool all_s = false;
    double epsilon = 0.5;  // the experimental default
    std::size_t samples = 1000;
    std::uint64_t seed = 12345;
};

void add_common_flags(CLI::App* cmd, RunOpts& o, bool need_measure = true) {
    cmd->add_option("--input", o.input, "input CSV (header x1,...,xd[,prob])")
        ->required();
    auto* m = cmd->add_option("--measure", o.measure,
                              "bbox | hull | centroid | mpd | sed");
    if (need_measure) m->required();
    cmd->add_option("--dist", o.dist, "bernoulli | fixed (default fixed)");
    cmd->add_option("--s", o.s, "subset size for the fixed-size model");
    cmd->add_option("--out", o.out, "output path (default: stdout)");
    cmd->add_option("--format", o.format, "json | csv (default json)");
}

geomstat::DistributionSpec make_dist(const RunOpts& o, const geomstat::Dataset& ds) {
    if (o.dist == "bernoulli") {
        if (!ds.probs)
            throw usage_error("--dist bernoulli needs a prob column in the input");
        return geomstat::BernoulliModel(*ds.probs);
    }
    if (o.dist == "fixed") {
        if (o.s == 0 && !o.all_s)
            throw usage_error("--dist fixed needs --s (or --all-s where supported)");
        if (o.s > ds.points.size())
            throw usage_error("--s exceeds the number of points");
        return geomstat::FixedSizeModel{o.s};
    }
    throw usage_error("unknown distribution: " + o.dist);
}

// select one per-s row as the headline mean/variance; keep or drop the table
void select_s(geomstat::MomentResult& res, std::size_t s, bool all_s) {
    if (s > 0) {
        auto it = std::find_if(res.per_s.begin(), res.per_s.end(),
                               [&](const auto& r) { return r.s == s; });
        if (it == res.per_s.end()) throw usage_error("--s outside the engine's range");
        res.mean = it->mean;
        res.variance = it->variance;
    }
    if (!all_s) res.per_s.clear();
}

geomstat::MomentResult dispatch_moments(const geomstat::Dataset& ds, const RunOpts& o) {
    const auto& ps = ds.points;
    bool bern = o.dist == "bernoulli";
    if (o.method != "exact" && o.method != "approx")
        throw usage_error("unknown method: " + o.method);
    if (o.method == "approx" && o.measure != "mpd")
        throw usage_error("--method approx is only available for mpd");
    if (o.all_s) {
        if (bern) throw usage_error("--all-s applies to the fixed-size model only");
        if (o.measure != "bbox" && o.measure != "centroid" && o.measure != "mpd")
            throw usage_error("--all-s is supported for bbox, centroid and mpd");
    }
    auto dist = make_dist(o, ds);

    if (o.measure == "bbox") {
        if (bern) {
            return ps.dim() == 2
                       ? geomstat::expected_bbox_area_2d_bernoulli(ps, *ds.probs)
                       : geomstat::expected_bbox_volume_dd_bernoulli(ps, *ds.probs);
        }
        auto res = geomstat::expected_bbox_volume_dd_fixed(ps);
        select_s(res, o.s, o.all_s);
        return res;
    }
    if (o.measure == "hull") {
        auto res = geomstat::expected_hull_volume(ps, dist);
        res.per_s.clear();
        return res;
    }
    if (o.measure == "centroid") {
        if (bern) throw usage_error("centroid moments require the fixed-size model");
        auto res = geomstat::centroid_moments(ps);
        select_s(res, o.s, o.all_s);
        return res;
    }
    if (o.measure == "mpd") {
        if (bern) throw usage_error("mpd moments require the fixed-size model");
        if (o.s == 1) throw usage_error("mpd needs s >= 2");
        auto res = o.method == "approx" ? geomstat::mpd_approx_moments(ps, o.epsilon)
                                        : geomstat::mpd_exact_moments(ps);
        select_s(res, o.s, o.all_s);
        return res;
    }
    if (o.measure == "sed") {
        if (ps.dim() != 2) throw usage_error("sed requires d = 2");
        return geomstat::expected_sed_diameter(ps, dist);
    }
    throw usage_error("unknown measure: " + o.measure);
}

void emit(const geomstat::MomentResult& res, const RunOpts& o,
          const geomstat::Dataset& ds) {
    geomstat::ResultMeta meta;
    meta.measure = o.measure;
    meta.distribution = o.dist;
    meta.n = ds.points.size();
    meta.d = ds.points.dim();
    if (o.dist == "fixed" && o.s > 0) meta.s = o.s;
    if (res.method == geomstat::Method::Approx) meta.epsilon = o.epsilon;
    if (res.method == geomstat::Method::Sample) {
        meta.samples = o.samples;
        meta.seed = o.seed;
    }
    if (o.out.empty()) {
        std::cout << geomstat::result_to_json(res, meta).dump(2) << "\n";
    } else {
        geomstat::write_result(res, meta, o.format, o.out);
    }
}

double median3(const std::vector<double>& v) {
    auto s = v;
    std::sort(s.begin(), s.end());
    return s[s.size() / 2];
}

template <typename Fn>
double timed_median3(Fn&& fn) {
    std::vector<double> t;
    for (int r = 0; r < 3; ++r) {
        auto t0 = std::chrono::steady_clock::now();
        fn();
        t.push_back(std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - t0)
                        .count());
    }
    return median3(t);
}

double rel_err(double got, double want) {
    return std::abs(got - want) / std::max(1e-300, std::abs(want));
}

int run_bench(const std::string& suite, const std::string& out_dir) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    std::ofstream csv(out_dir + "/" + suite + ".csv");
    if (!csv) throw geomstat::dataio_error("cannot write into " + out_dir);
    std::cerr << "bench " << suite << " -> " << out_dir << "/" << suite << ".csv\n";

    auto fixed = [](std::size_t s) { return geomstat::DistributionSpec(geomstat::FixedSizeModel{s}); };

    if (suite == "mpd-vs-n") {
        csv << "n,d,s,t_exact_ms,t_approx_ms,t_sample_ms,err_mean_approx,err_var_approx,"
               "err_mean_sample,err_var_sample\n";
        for (std::size_t n : {500, 1000, 2000, 4000, 8000}) {
            auto ds = geomstat::generate("uniform-cube", n, 3, 42 + n);
            std::size_t s = n / 2;
            geomstat::MomentResult ex, ap;
            double t_exact = timed_median3([&] { ex = geomstat::mpd_exact_moments(ds.points); });
            double t_approx = timed_median3([&] { ap = geomstat::mpd_approx_moments(ds.points, 0.5); });
            auto exr = ex.per_s[s - 2];
            auto apr = ap.per_s[s - 2];
            csv << n << ",3," << s << "," << t_exact << "," << t_approx << ",";
            if (n <= 2000) {
                geomstat::MomentResult mc;
                double t_sample = timed_median3([&] {
                    mc = geomstat::monte_carlo_moments(ds.points, fixed(s),
                                                       geomstat::MeasureKind::MPD, 1000, 7);
                });
                csv << t_sample << "," << rel_err(apr.mean, exr.mean) << ","
                    << rel_err(*apr.variance, *exr.variance) << ","
                    << rel_err(mc.mean, exr.mean) << ","
                    << rel_err(*mc.variance, *exr.variance) << "\n";
            } else {
                csv << "," << rel_err(apr.mean, exr.mean) << ","
                    << rel_err(*apr.variance, *exr.variance) << ",,\n";
            }
        }
        return kExitOk;
    }
    if (suite == "mpd-vs-s") {
        csv << "n,d,s,t_exact_ms,t_sample_ms,err_mean_sample\n";
        auto ds = geomstat::generate("uniform-cube", 2000, 3, 99);
        geomstat::MomentResult ex;
        for (std::size_t s : {10, 50, 100, 200, 500}) {
            double t_exact = timed_median3([&] { ex = geomstat::mpd_exact_moments(ds.points); });
            auto exr = ex.per_s[s - 2];
            geomstat::MomentResult mc;
            double t_sample = timed_median3([&] {
                mc = geomstat::monte_carlo_moments(ds.points, fixed(s),
                                                   geomstat::MeasureKind::MPD, 1000, 7);
            });
            csv << "2000,3," << s << "," << t_exact << "," << t_sample << ","
                << rel_err(mc.mean, exr.mean) << "\n";
        }
        return kExitOk;
    }
    if (suite == "mpd-vs-eps") {
        csv << "n,d,s,eps,t_approx_ms,err_mean,err_var\n";
        auto ds = geomstat::generate("uniform-cube", 2000, 3, 77);
        auto ex = geomstat::mpd_exact_moments(ds.points);
        auto exr = ex.per_s[420 - 2];
        for (int k = 1; k <= 19; ++k) {
            double eps = 0.05 * k;
            geomstat::MomentResult ap;
            double t = timed_median3([&] { ap = geomstat::mpd_approx_moments(ds.points, eps); });
            auto apr = ap.per_s[420 - 2];
            csv << "2000,3,420," << eps << "," << t << "," << rel_err(apr.mean, exr.mean)
                << "," << rel_err(*apr.variance, *exr.variance) << "\n";
        }
        return kExitOk;
    }
    if (suite == "mpd-vs-d") {
        csv << "n,d,s,t_exact_ms,t_approx_ms,err_mean,err_var\n";
        for (std::size_t d : {2, 3, 4, 5, 6}) {
            auto ds = geomstat::generate("uniform-cube", 2000, d, 31 + d);
            std::size_t s = 1000;
            geomstat::MomentResult ex, ap;
            double t_exact = timed_median3([&] { ex = geomstat::mpd_exact_moments(ds.points); });
            double t_approx = timed_median3([&] { ap = geomstat::mpd_approx_moments(ds.points, 0.5); });
            auto exr = ex.per_s[s - 2];
            auto apr = ap.per_s[s - 2];
            csv << "2000," << d << "," << s << "," << t_exact << "," << t_approx << ","
                << rel_err(apr.mean, exr.mean) << ","
                << rel_err(*apr.variance, *exr.variance) << "\n";
        }
        return kExitOk;
    }
    if (suite == "bbox-vs-n") {
        csv << "n,d,t_exact_ms\n";
        for (std::size_t n : {1000, 2000, 4000, 8000}) {
            auto ds = geomstat::generate("uniform-cube", n, 2, 5 + n);
            std::vector<double> probs(n, 0.5);
            double t = timed_median3(
                [&] { geomstat::expected_bbox_area_2d_bernoulli(ds.points, probs); });
            csv << n << ",2," << t << "\n";
        }
        return kExitOk;
    }
    throw usage_error("unknown bench suite: " + suite);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"expected moments of geometric measures of random point subsets"};
    app.require_subcommand(1);

    RunOpts mo, oo, so;
    auto* cmd_moments = app.add_subcommand("moments", "analytic engines");
    add_common_flags(cmd_moments, mo);
    cmd_moments->add_flag("--all-s", mo.all_s, "emit the full per-s table");
    cmd_moments->add_option("--method", mo.method, "exact | approx (mpd only)");
    cmd_moments->add_option("--epsilon", mo.epsilon,
                            "approximation parameter in (0,1), default 0.5");

    auto* cmd_oracle = app.add_subcommand("oracle", "full enumeration, n <= 20");
    add_common_flags(cmd_oracle, oo);

    auto* cmd_sample = app.add_subcommand("sample", "Monte Carlo baseline");
    add_common_flags(cmd_sample, so);
    cmd_sample->add_option("--samples", so.samples, "number of draws, default 1000");
    cmd_sample->add_option("--seed", so.seed, "PRNG seed, default 12345");

    struct {
        std::string kind = "uniform-cube", out;
        std::size_t n = 100, d = 2, clusters = 5;
        std::uint64_t seed = 1;
        double spread = 0.02, prob = 0.0;
    } go;
    auto* cmd_gen = app.add_subcommand("gen", "synthetic dataset generator");
    cmd_gen->add_option("--kind", go.kind, "uniform-cube | clustered");
    cmd_gen->add_option("--n", go.n, "number of points")->required();
    cmd_gen->add_option("--d", go.d, "dimension")->required();
    cmd_gen->add_option("--seed", go.seed, "PRNG seed");
    cmd_gen->add_option("--clusters", go.clusters, "clustered: number of blobs");
    cmd_gen->add_option("--spread", go.spread, "clustered: blob sigma");
    cmd_gen->add_option("--prob", go.prob, "attach a constant prob column in (0,1)");
    cmd_gen->add_option("--out", go.out, "output CSV path")->required();

    struct {
        std::string suite, out;
    } bo;
    auto* cmd_bench = app.add_subcommand("bench", "timing/error grids");
    cmd_bench->add_option("--suite", bo.suite,
                          "mpd-vs-n | mpd-vs-s | mpd-vs-eps | mpd-vs-d | bbox-vs-n")
        ->required();
    cmd_bench->add_option("--out", bo.out, "output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (cmd_moments->parsed()) {
            auto ds = geomstat::read_csv(mo.input);
            emit(dispatch_moments(ds, mo), mo, ds);
        } else if (cmd_oracle->parsed()) {
            auto ds = geomstat::read_csv(oo.input);
            if (ds.points.size() > geomstat::kOracleMaxN)
                throw usage_error("oracle is capped at n <= 20");
            auto res = geomstat::oracle_moments(ds.points, make_dist(oo, ds),
                                                parse_measure(oo.measure));
            emit(res, oo, ds);
        } else if (cmd_sample->parsed()) {
            if (so.samples < 2) throw usage_error("--samples must be >= 2");
            auto ds = geomstat::read_csv(so.input);
            auto res = geomstat::monte_carlo_moments(ds.points, make_dist(so, ds),
                                                     parse_measure(so.measure),
                                                     so.samples, so.seed);
            emit(res, so, ds);
        } else if (cmd_gen->parsed()) {
            auto ds = geomstat::generate(go.kind, go.n, go.d, go.seed,
                                         {go.clusters, go.spread});
            if (go.prob != 0.0) {
                if (!(go.prob > 0.0 && go.prob < 1.0))
                    throw usage_error("--prob must lie in (0,1)");
                ds.probs = std::vector<double>(go.n, go.prob);
            }
            geomstat::write_csv(ds, go.out);
        } else if (cmd_bench->parsed()) {
            return run_bench(bo.suite, bo.out);
        }
    } catch (const usage_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const geomstat::dataio_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const geomstat::degeneracy_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }
    return kExitOk;
}
