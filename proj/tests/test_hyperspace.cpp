#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hyperdyn/experiments.hpp"
#include "hyperdyn/hyperspace.hpp"
#include "hyperdyn/relation.hpp"

#include "oracles.hpp"

#include <cmath>
#include <random>

using namespace hyperdyn;

namespace {

const Space kCircle{SpaceKind::Circle, 1e-9};
const Space kInterval{SpaceKind::Interval, 1e-9};
const Space kSigma{SpaceKind::Sigma2, 1e-9};

HSet random_hset(const Space& space, std::mt19937_64& rng, int max_size = 5) {
    std::uniform_int_distribution<int> size_dist(1, max_size);
    std::vector<Point> pts;
    const int n = size_dist(rng);
    for (int i = 0; i < n; ++i) pts.push_back(oracles::random_point(space, rng));
    return HSet::make(space, std::move(pts));
}

} // namespace

TEST_CASE("hset construction dedups and sorts") {
    const HSet a = HSet::make(kCircle, {CircleAngle{3.0}, CircleAngle{1.0},
                                        CircleAngle{1.0 + 1e-12}, CircleAngle{2.0}});
    REQUIRE(a.size() == 3);
    CHECK(std::get<CircleAngle>(a.points()[0]).theta == doctest::Approx(1.0));
    CHECK(std::get<CircleAngle>(a.points()[2]).theta == doctest::Approx(3.0));
    CHECK_THROWS_AS(HSet::make(kCircle, {}), input_error);
    CHECK_THROWS_AS(HSet::make(kCircle, {Point{UnitReal{0.5}}}), input_error);

    // wrap-around duplicates collapse too
    const HSet b = HSet::make(kCircle, {CircleAngle{0.0}, CircleAngle{kTau - 1e-12}});
    CHECK(b.size() == 1);
}

TEST_CASE("hausdorff distance on singletons equals the base metric") {
    std::mt19937_64 rng(2025);
    for (const Space& space : {kCircle, kInterval, kSigma}) {
        for (int i = 0; i < 1000; ++i) {
            const Point x = oracles::random_point(space, rng);
            const Point y = oracles::random_point(space, rng);
            const HSet a = HSet::make(space, {x});
            const HSet b = HSet::make(space, {y});
            CHECK(std::fabs(hausdorff_distance(space, a, b) - distance(space, x, y)) <= 1e-12);
        }
    }
}

TEST_CASE("hausdorff worked values and axioms") {
    const HSet zero = HSet::make(kCircle, {CircleAngle{0.0}});
    const HSet pairset = HSet::make(kCircle, {CircleAngle{0.0}, CircleAngle{kTau / 2}});
    CHECK(hausdorff_distance(kCircle, zero, zero) == 0.0);
    CHECK(hausdorff_distance(kCircle, zero, pairset) == doctest::Approx(kTau / 2));

    std::mt19937_64 rng(11);
    for (const Space& space : {kCircle, kInterval, kSigma}) {
        for (int i = 0; i < 300; ++i) {
            const HSet a = random_hset(space, rng);
            const HSet b = random_hset(space, rng);
            const HSet c = random_hset(space, rng);
            const double dab = hausdorff_distance(space, a, b);
            CHECK(dab == hausdorff_distance(space, b, a));
            CHECK(hausdorff_distance(space, a, a) <= space.dedup_tolerance);
            CHECK(hausdorff_distance(space, a, c) <=
                  dab + hausdorff_distance(space, b, c) + 1e-12);
        }
    }
}

TEST_CASE("induced map worked values") {
    const Relation pair = rational_pair();
    const HSet single = HSet::make(kCircle, {CircleAngle{1.0}});
    CHECK(hsets_equal(kCircle, induced_map(pair, single), image(pair, CircleAngle{1.0}), 1e-12));

    const HSet two = HSet::make(kCircle, {CircleAngle{0.0}, CircleAngle{kTau / 2}});
    const HSet img = induced_map(pair, two);
    REQUIRE(img.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) {
        const double expected = kTau / 8 + static_cast<double>(i) * kTau / 4;
        CHECK(std::get<CircleAngle>(img.points()[i]).theta == doctest::Approx(expected));
    }
}

TEST_CASE("induced map distributes over unions and is monotone") {
    std::mt19937_64 rng(303);
    for (const BuiltinFamily& fam : builtin_families()) {
        if (all_table_maps(fam.relation)) continue;
        const Space& space = fam.relation.space;
        for (int i = 0; i < 50; ++i) {
            const HSet a = random_hset(space, rng);
            const HSet b = random_hset(space, rng);
            std::vector<Point> both = a.points();
            for (const Point& p : b.points()) both.push_back(p);
            const HSet united = HSet::make(space, both);

            const HSet img_union = induced_map(fam.relation, united);
            std::vector<Point> stitched = induced_map(fam.relation, a).points();
            const HSet img_b = induced_map(fam.relation, b);
            for (const Point& p : img_b.points()) stitched.push_back(p);
            CHECK(oracles::set_equals(space, img_union.points(), stitched,
                                      space.dedup_tolerance));

            // monotone: a subset of united maps into the image of united
            CHECK(hset_subset_of(space, induced_map(fam.relation, a), img_union,
                                 space.dedup_tolerance));
        }
    }
}

TEST_CASE("union contraction bound") {
    std::mt19937_64 rng(404);
    for (const BuiltinFamily& fam : builtin_families()) {
        if (all_table_maps(fam.relation)) continue;
        const Space& space = fam.relation.space;
        for (int i = 0; i < 100; ++i) {
            const HSet a = random_hset(space, rng);
            const HSet b = random_hset(space, rng);
            double per_component = 0.0;
            for (const MapDescriptor& m : fam.relation.maps) {
                std::vector<Point> fa, fb;
                for (const Point& p : a.points()) fa.push_back(apply_map(space, m, p));
                for (const Point& p : b.points()) fb.push_back(apply_map(space, m, p));
                per_component = std::max(
                    per_component, hausdorff_distance(space, HSet::make(space, fa),
                                                      HSet::make(space, fb)));
            }
            const double united = hausdorff_distance(space, induced_map(fam.relation, a),
                                                     induced_map(fam.relation, b));
            CHECK(united <= per_component + 1e-12);
        }
    }
}

TEST_CASE("rotation components preserve hausdorff distance exactly") {
    std::mt19937_64 rng(505);
    const Relation pair = irrational_pair();
    for (int i = 0; i < 200; ++i) {
        const HSet a = random_hset(kCircle, rng);
        const HSet b = random_hset(kCircle, rng);
        const double base = hausdorff_distance(kCircle, a, b);
        for (const MapDescriptor& m : pair.maps) {
            std::vector<Point> fa, fb;
            for (const Point& p : a.points()) fa.push_back(apply_map(kCircle, m, p));
            for (const Point& p : b.points()) fb.push_back(apply_map(kCircle, m, p));
            CHECK(std::fabs(hausdorff_distance(kCircle, HSet::make(kCircle, fa),
                                               HSet::make(kCircle, fb)) -
                            base) <= 1e-12);
        }
    }
}

TEST_CASE("induced orbit") {
    const Relation pair = rational_pair();
    const HSet seed = HSet::make(kCircle, {CircleAngle{0.0}});

    // singleton seeding identity: orbit entry n equals the n-fold image
    const auto orbit = induced_orbit(pair, seed, 8);
    REQUIRE(orbit.size() == 9);
    for (int n = 1; n <= 8; ++n) {
        CHECK(hsets_equal(kCircle, orbit[static_cast<std::size_t>(n)],
                          n_fold_image(pair, n, CircleAngle{0.0}), 1e-12));
    }

    // frozen cardinality sequence for the rational pair from {0}
    std::vector<std::size_t> cards;
    for (const HSet& a : induced_orbit(pair, seed, 10)) cards.push_back(a.size());
    CHECK(cards == std::vector<std::size_t>{1, 2, 3, 4, 4, 4, 4, 4, 4, 4, 4});

    // a fixed seed gives a constant orbit
    const Relation shift = shift_single();
    const HSet zeros = HSet::make(kSigma, {constant_biseq(0)});
    for (const HSet& a : induced_orbit(shift, zeros, 5)) {
        CHECK(hsets_equal(kSigma, a, zeros, 0.0));
    }

    CHECK_THROWS_AS(induced_orbit(pair, seed, -1), input_error);
}

TEST_CASE("vietoris membership") {
    const OpenSetSpec u1{BallSpec{Ball{UnitReal{0.1}, 0.05}}};
    const OpenSetSpec u2{BallSpec{Ball{UnitReal{0.5}, 0.05}}};
    const std::vector<OpenSetSpec> both{u1, u2};

    const HSet hits = HSet::make(kInterval, {UnitReal{0.1}, UnitReal{0.5}});
    CHECK(vietoris_member(kInterval, hits, both));

    const HSet misses_second = HSet::make(kInterval, {UnitReal{0.1}});
    CHECK_FALSE(vietoris_member(kInterval, misses_second, both));

    const HSet uncovered = HSet::make(kInterval, {UnitReal{0.1}, UnitReal{0.3}, UnitReal{0.5}});
    CHECK_FALSE(vietoris_member(kInterval, uncovered, both));

    CHECK_THROWS_AS(vietoris_member(kInterval, hits, {}), input_error);
}

TEST_CASE("hit, plus and far-miss membership") {
    const OpenSetSpec small_ball{BallSpec{Ball{CircleAngle{0.0}, 0.1}}};
    const HSet origin = HSet::make(kCircle, {CircleAngle{0.0}});
    CHECK(hit_member(kCircle, origin, small_ball));
    CHECK(plus_member(kCircle, origin, small_ball));
    CHECK(plusplus_member(kCircle, origin, small_ball));

    const HSet split = HSet::make(kCircle, {CircleAngle{0.0}, CircleAngle{kTau / 2}});
    CHECK(hit_member(kCircle, split, small_ball));
    CHECK_FALSE(plus_member(kCircle, split, small_ball));
    CHECK_FALSE(plusplus_member(kCircle, split, small_ball));

    // complements of closed balls are open and membership stays strict
    const OpenSetSpec away{ComplementOfBalls{{Ball{CircleAngle{0.0}, 0.5}}}};
    CHECK_FALSE(point_in_open(kCircle, away, CircleAngle{0.5}));
    CHECK(point_in_open(kCircle, away, CircleAngle{1.0}));
    CHECK(plus_member(kCircle, HSet::make(kCircle, {CircleAngle{kTau / 2}}), away));
}

TEST_CASE("far-miss implies containment on random instances") {
    std::mt19937_64 rng(606);
    int plusplus_count = 0;
    for (int i = 0; i < 1000; ++i) {
        const Space& space = i % 2 == 0 ? kCircle : kInterval;
        const HSet a = random_hset(space, rng);
        const Point center = oracles::random_point(space, rng);
        std::uniform_real_distribution<double> radius(0.05, 1.5);
        const OpenSetSpec ball{BallSpec{Ball{center, radius(rng)}}};
        if (plusplus_member(space, a, ball)) {
            ++plusplus_count;
            CHECK(plus_member(space, a, ball));
        }
    }
    CHECK(plusplus_count > 0); // the implication was not vacuous
}

TEST_CASE("induced map respects the frontier cap") {
    const Relation pair = rational_pair();
    const HSet seed = HSet::make(kCircle, {CircleAngle{0.0}});
    CHECK_THROWS_AS(induced_map(pair, seed, 1), resource_error);
}
