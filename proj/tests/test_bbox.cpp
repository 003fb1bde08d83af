#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "geomstat/bbox.hpp"
#include "geomstat/oracle.hpp"
#include "helpers.hpp"

using namespace geomstat;

TEST_CASE("2D Bernoulli engine matches the oracle") {
    std::mt19937_64 rng(101);
    for (int inst = 0; inst < 25; ++inst) {
        std::size_t n = 2 + std::size_t(rng() % 9);
        auto ps = testutil::random_points(rng, n, 2);
        auto probs = testutil::random_probs(rng, n);
        auto got = expected_bbox_area_2d_bernoulli(ps, probs);
        auto want = oracle_moments(ps, BernoulliModel(probs), MeasureKind::BBoxVolume);
        INFO("instance " << inst << " n=" << n);
        CHECK(testutil::near(got.mean, want.mean));
    }
}

TEST_CASE("d-dimensional Bernoulli engine matches the oracle for d in 2..4") {
    std::mt19937_64 rng(202);
    for (std::size_t d : {2, 3, 4}) {
        for (int inst = 0; inst < 8; ++inst) {
            std::size_t n = 1 + std::size_t(rng() % 9);
            auto ps = testutil::random_points(rng, n, d);
            auto probs = testutil::random_probs(rng, n);
            auto got = expected_bbox_volume_dd_bernoulli(ps, probs);
            auto want = oracle_moments(ps, BernoulliModel(probs), MeasureKind::BBoxVolume);
            INFO("d=" << d << " n=" << n);
            CHECK(testutil::near(got.mean, want.mean));
        }
    }
}

TEST_CASE("fixed-size engine matches the oracle for every s") {
    std::mt19937_64 rng(303);
    for (std::size_t d : {2, 3}) {
        for (int inst = 0; inst < 6; ++inst) {
            std::size_t n = 2 + std::size_t(rng() % 8);
            auto ps = testutil::random_points(rng, n, d);
            auto got = expected_bbox_volume_dd_fixed(ps);
            REQUIRE(got.per_s.size() == n);
            for (std::size_t s = 1; s <= n; ++s) {
                auto want = oracle_moments(ps, FixedSizeModel{s}, MeasureKind::BBoxVolume);
                INFO("d=" << d << " n=" << n << " s=" << s);
                CHECK(testutil::near(got.per_s[s - 1].mean, want.mean));
            }
        }
    }
}

TEST_CASE("corner terms: four-corner combination is reflection symmetric") {
    std::mt19937_64 rng(404);
    auto ps = testutil::random_points(rng, 10, 2);
    auto probs = testutil::random_probs(rng, 10);
    double base = expected_bbox_area_2d_bernoulli(ps, probs).mean;

    // reflecting the x axis must not change the expected area
    std::vector<double> flipped = ps.data();
    for (std::size_t i = 0; i < 10; ++i) flipped[2 * i] = -flipped[2 * i];
    double refl = expected_bbox_area_2d_bernoulli(PointSet(2, std::move(flipped)), probs).mean;
    CHECK(base == Catch::Approx(refl).epsilon(1e-12));

    // translation invariance
    std::vector<double> shifted = ps.data();
    for (std::size_t i = 0; i < 10; ++i) {
        shifted[2 * i] += 17.0;
        shifted[2 * i + 1] -= 4.5;
    }
    double trans = expected_bbox_area_2d_bernoulli(PointSet(2, std::move(shifted)), probs).mean;
    CHECK(base == Catch::Approx(trans).margin(1e-10));
}

TEST_CASE("expected area grows with inclusion probabilities") {
    std::mt19937_64 rng(505);
    auto ps = testutil::random_points(rng, 12, 2);
    std::vector<double> lo(12, 0.2), hi(12, 0.7);
    CHECK(expected_bbox_area_2d_bernoulli(ps, lo).mean <
          expected_bbox_area_2d_bernoulli(ps, hi).mean);
}

TEST_CASE("degenerate and out-of-scope inputs are rejected") {
    // shared x coordinate trips the sweep precondition
    auto shared = PointSet::from_points({{0.5, 0.1}, {0.5, 0.9}, {0.2, 0.4}});
    std::vector<double> probs(3, 0.5);
    CHECK_THROWS_AS(expected_bbox_area_2d_bernoulli(shared, probs), degeneracy_error);

    std::mt19937_64 rng(606);
    auto ps5 = testutil::random_points(rng, 4, 5);
    CHECK_THROWS_AS(expected_bbox_volume_dd_bernoulli(ps5, {0.5, 0.5, 0.5, 0.5}),
                    std::invalid_argument);
    CHECK_THROWS_AS(expected_bbox_volume_dd_fixed(ps5), std::invalid_argument);
}

TEST_CASE("single point has zero expected volume") {
    auto ps = PointSet::from_points({{0.3, 0.4}});
    auto fixed = expected_bbox_volume_dd_fixed(ps);
    CHECK(fixed.per_s[0].mean == Catch::Approx(0.0).margin(1e-15));
    auto bern = expected_bbox_volume_dd_bernoulli(ps, {0.5});
    CHECK(bern.mean == Catch::Approx(0.0).margin(1e-15));
}
