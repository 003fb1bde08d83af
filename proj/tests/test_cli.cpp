#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

#include <json.hpp>

using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

fs::path work_dir() {
    static fs::path p = [] {
        auto q = fs::temp_directory_path() /
                 ("geomstat_cli_" + std::to_string(::getpid()));
        fs::create_directories(q);
        return q;
    }();
    return p;
}

RunResult run(const std::string& args) {
    auto out_file = work_dir() / "out.txt";
    std::string cmd = std::string(GEOMOMENTS_BIN) + " " + args + " > " +
                      out_file.string() + " 2>&1";
    int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(out_file);
    std::stringstream ss;
    ss << in.rdbuf();
    r.out = ss.str();
    return r;
}

std::string dataset(std::size_t n, std::size_t d, double prob = 0.0,
                    std::uint64_t seed = 1) {
    std::ostringstream name;
    name << "data_n" << n << "_d" << d << "_p" << prob << "_s" << seed << ".csv";
    auto path = work_dir() / name.str();
    if (!fs::exists(path)) {
        std::ostringstream args;
        args << "gen --n " << n << " --d " << d << " --seed " << seed;
        if (prob > 0) args << " --prob " << prob;
        args << " --out " << path.string();
        REQUIRE(run(args.str()).exit_code == 0);
    }
    return path.string();
}

}  // namespace

TEST_CASE("moments subcommand emits well-formed JSON and exits 0") {
    auto data = dataset(30, 2);
    auto r = run("moments --input " + data + " --measure mpd --dist fixed --s 10");
    REQUIRE(r.exit_code == 0);
    auto j = json::parse(r.out);
    CHECK(j["measure"] == "mpd");
    CHECK(j["distribution"] == "fixed");
    CHECK(j["method"] == "exact");
    CHECK(j["n"] == 30);
    CHECK(j["d"] == 2);
    CHECK(j["s"] == 10);
    CHECK(j["mean"].is_number());
    CHECK(j["variance"].is_number());
    CHECK_FALSE(j.contains("per_s"));
}

TEST_CASE("--all-s emits one row per subset size") {
    auto data = dataset(30, 2);
    auto r = run("moments --input " + data + " --measure mpd --dist fixed --all-s");
    REQUIRE(r.exit_code == 0);
    auto j = json::parse(r.out);
    CHECK(j["per_s"].size() == 29);  // s = 2..30
    auto rb = run("moments --input " + data + " --measure bbox --dist fixed --all-s");
    REQUIRE(rb.exit_code == 0);
    CHECK(json::parse(rb.out)["per_s"].size() == 30);  // s = 1..30
}

TEST_CASE("approx method records its epsilon default") {
    auto data = dataset(64, 2);
    auto r = run("moments --input " + data +
                 " --measure mpd --dist fixed --s 20 --method approx");
    REQUIRE(r.exit_code == 0);
    auto j = json::parse(r.out);
    CHECK(j["method"] == "approx");
    CHECK(j["epsilon"] == 0.5);
}

TEST_CASE("sample subcommand is deterministic and records defaults") {
    auto data = dataset(20, 2);
    auto a = run("sample --input " + data + " --measure mpd --dist fixed --s 5");
    auto b = run("sample --input " + data + " --measure mpd --dist fixed --s 5");
    REQUIRE(a.exit_code == 0);
    auto ja = json::parse(a.out), jb = json::parse(b.out);
    CHECK(ja["mean"] == jb["mean"]);
    CHECK(ja["samples"] == 1000);
    CHECK(ja["seed"] == 12345);
    auto c = run("sample --input " + data +
                 " --measure mpd --dist fixed --s 5 --seed 6");
    CHECK(json::parse(c.out)["mean"] != ja["mean"]);
}

TEST_CASE("oracle subcommand agrees with the analytic engine") {
    auto data = dataset(10, 2, 0.4);
    auto an = run("moments --input " + data + " --measure sed --dist bernoulli");
    auto orc = run("oracle --input " + data + " --measure sed --dist bernoulli");
    REQUIRE(an.exit_code == 0);
    REQUIRE(orc.exit_code == 0);
    double a = json::parse(an.out)["mean"], o = json::parse(orc.out)["mean"];
    CHECK(a == Catch::Approx(o).margin(1e-9));
}

TEST_CASE("usage errors exit 2") {
    auto data = dataset(10, 2);
    // unknown flag
    CHECK(run("moments --input " + data + " --measure mpd --frobnicate").exit_code == 2);
    // missing required --input
    CHECK(run("moments --measure mpd --s 3").exit_code == 2);
    // out-of-scope requests
    CHECK(run("moments --input " + data + " --measure centroid --dist bernoulli")
              .exit_code == 2);
    CHECK(run("moments --input " + data + " --measure mpd --dist fixed --s 3 "
              "--method approx --epsilon 1.5").exit_code == 2);
    CHECK(run("moments --input " + data + " --measure bbox --dist fixed --s 99")
              .exit_code == 2);
    CHECK(run("moments --input " + data + " --measure hull --dist bernoulli")
              .exit_code == 2);  // no prob column
    auto big = dataset(25, 2);
    CHECK(run("oracle --input " + big + " --measure mpd --dist fixed --s 3").exit_code == 2);
    auto d3 = dataset(10, 3);
    CHECK(run("moments --input " + d3 + " --measure sed --dist fixed --s 3").exit_code == 2);
}

TEST_CASE("data errors exit 1") {
    CHECK(run("moments --input /nonexistent/x.csv --measure mpd --dist fixed --s 3")
              .exit_code == 1);
    auto bad = work_dir() / "bad.csv";
    std::ofstream(bad) << "x1,x2\n0.5,0.1\n0.5,0.2\n";  // shared coordinate
    CHECK(run("moments --input " + bad.string() +
              " --measure mpd --dist fixed --s 2").exit_code == 1);
}

TEST_CASE("--out writes the result file") {
    auto data = dataset(12, 2);
    auto out = work_dir() / "res.json";
    auto r = run("moments --input " + data +
                 " --measure centroid --dist fixed --s 4 --out " + out.string());
    REQUIRE(r.exit_code == 0);
    std::ifstream in(out);
    auto j = json::parse(in);
    CHECK(j["measure"] == "centroid");
    CHECK(j["s"] == 4);
}
