#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <unistd.h>

#include <json.hpp>

#include "geomstat/dataio.hpp"

using namespace geomstat;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("geomstat_dataio_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { std::error_code ec; fs::remove_all(path, ec); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

void write_text(const std::string& p, const std::string& text) {
    std::ofstream out(p);
    out << text;
}

}  // namespace

TEST_CASE("CSV round trip preserves coordinates bit-exactly") {
    TempDir tmp;
    auto ds = generate("uniform-cube", 40, 3, 9001);
    ds.probs = std::vector<double>(40, 0.25);
    auto p = tmp.file("round.csv");
    write_csv(ds, p);
    auto back = read_csv(p);
    REQUIRE(back.points.size() == 40);
    REQUIRE(back.points.dim() == 3);
    CHECK(back.points.data() == ds.points.data());
    REQUIRE(back.probs.has_value());
    CHECK(*back.probs == *ds.probs);
}

TEST_CASE("CSV reader reports precise errors") {
    TempDir tmp;

    auto miss = tmp.file("missing.csv");
    CHECK_THROWS_AS(read_csv(miss), dataio_error);

    auto badhdr = tmp.file("badhdr.csv");
    write_text(badhdr, "a,b\n1,2\n");
    CHECK_THROWS_MATCHES(read_csv(badhdr), dataio_error,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::ContainsSubstring("must be x1")));

    auto badnum = tmp.file("badnum.csv");
    write_text(badnum, "x1,x2\n0.1,0.2\n0.3,zebra\n");
    CHECK_THROWS_MATCHES(read_csv(badnum), dataio_error,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::ContainsSubstring("row 3, column 2")));

    auto badcells = tmp.file("badcells.csv");
    write_text(badcells, "x1,x2\n0.1,0.2,0.3\n");
    CHECK_THROWS_MATCHES(read_csv(badcells), dataio_error,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::ContainsSubstring("row 2")));

    auto badprob = tmp.file("badprob.csv");
    write_text(badprob, "x1,x2,prob\n0.1,0.2,1.5\n");
    CHECK_THROWS_MATCHES(read_csv(badprob), dataio_error,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::ContainsSubstring("prob must lie in (0,1)")));

    auto empty = tmp.file("empty.csv");
    write_text(empty, "x1,x2\n");
    CHECK_THROWS_AS(read_csv(empty), dataio_error);

    // duplicate coordinate in one column names both offending rows
    auto dup = tmp.file("dup.csv");
    write_text(dup, "x1,x2\n0.5,0.1\n0.7,0.2\n0.5,0.3\n");
    CHECK_THROWS_MATCHES(read_csv(dup), degeneracy_error,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::ContainsSubstring("rows 2 and 4 share x1")));
}

TEST_CASE("generator is deterministic per seed and respects general position") {
    auto a = generate("uniform-cube", 200, 2, 77);
    auto b = generate("uniform-cube", 200, 2, 77);
    CHECK(a.points.data() == b.points.data());
    auto c = generate("uniform-cube", 200, 2, 78);
    CHECK(a.points.data() != c.points.data());
    for (double v : a.points.data()) {
        CHECK(v >= -1e-6);
        CHECK(v <= 1.0 + 1e-6);
    }
    CHECK(general_position_violation(a.points).empty());

    auto cl = generate("clustered", 100, 3, 5, {4, 0.01});
    CHECK(cl.points.size() == 100);
    CHECK(cl.points.dim() == 3);
    CHECK(general_position_violation(cl.points).empty());

    CHECK_THROWS_AS(generate("moebius", 10, 2, 1), std::invalid_argument);
    CHECK_THROWS_AS(generate("uniform-cube", 0, 2, 1), std::invalid_argument);
}

TEST_CASE("result serialization") {
    MomentResult res;
    res.method = Method::Exact;
    res.mean = 1.25;
    res.variance = 0.5;
    res.per_s = {{2, 1.0, 0.25}, {3, 1.25, 0.5}};
    res.elapsed_ms = 7.5;
    ResultMeta meta;
    meta.measure = "mpd";
    meta.distribution = "fixed";
    meta.n = 3;
    meta.d = 2;
    meta.s = 3;

    auto j = result_to_json(res, meta);
    CHECK(j["measure"] == "mpd");
    CHECK(j["method"] == "exact");
    CHECK(j["n"] == 3);
    CHECK(j["s"] == 3);
    CHECK(j["mean"] == 1.25);
    CHECK(j["variance"] == 0.5);
    REQUIRE(j["per_s"].size() == 2);
    CHECK(j["per_s"][0][0] == 2);
    CHECK(j["per_s"][1][1] == 1.25);
    CHECK_FALSE(j.contains("epsilon"));

    TempDir tmp;
    auto jp = tmp.file("r.json");
    write_result(res, meta, "json", jp);
    std::ifstream in(jp);
    auto parsed = nlohmann::json::parse(in);
    CHECK(parsed["mean"] == 1.25);

    auto cp = tmp.file("r.csv");
    write_result(res, meta, "csv", cp);
    std::ifstream cin_(cp);
    std::string line;
    std::getline(cin_, line);
    CHECK(line == "measure,distribution,method,s,mean,variance,elapsed_ms");
    std::size_t rows = 0;
    while (std::getline(cin_, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 2);  // one per per-s entry

    CHECK_THROWS_AS(write_result(res, meta, "xml", tmp.file("r.xml")),
                    std::invalid_argument);
}
