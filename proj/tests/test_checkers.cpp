#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hyperdyn/checkers.hpp"
#include "hyperdyn/experiments.hpp"
#include "hyperdyn/json_io.hpp"

#include "oracles.hpp"

#include <cmath>
#include <vector>

using namespace hyperdyn;

namespace {

const Space kCircle{SpaceKind::Circle, 1e-9};

Bounds circle_bounds() { return default_bounds_for(SpaceKind::Circle); }
Bounds sigma_bounds() { return default_bounds_for(SpaceKind::Sigma2); }

Bounds coarse_circle_bounds() {
    Bounds b;
    b.cover_eps = 0.5;
    b.net_eps = 0.125;
    b.n_max = 100;
    return b;
}

// verdicts collected for the replay soundness sweep
std::vector<std::pair<Relation, Verdict>>& replay_pool() {
    static std::vector<std::pair<Relation, Verdict>> pool;
    return pool;
}

Verdict track(const Relation& f, Verdict v) {
    replay_pool().emplace_back(f, v);
    return v;
}

} // namespace

TEST_CASE("bounds validation") {
    Bounds b;
    b.n_max = 0;
    CHECK_THROWS_AS(check_transitivity(golden_rotation(), b), input_error);
    b = Bounds{};
    b.tol = 0.0;
    CHECK_THROWS_AS(check_transitivity(golden_rotation(), b), input_error);
}

TEST_CASE("transitivity of a single irrational rotation") {
    const Relation f = golden_rotation();
    const Verdict v = track(f, check_transitivity(f, circle_bounds()));
    CHECK(v.status == Status::ConfirmedWithinBounds);

    // independent route: the orbit of 0 must enter every cover ball
    const OrbitCoverReport orbit = direct_orbit_cover_visits(f, circle_bounds(), CircleAngle{0.0});
    CHECK(orbit.all_visited);
    for (int n : orbit.first_visit) {
        CHECK(n >= 1);
        CHECK(n <= circle_bounds().n_max);
    }
}

TEST_CASE("transitivity refutations") {
    // the rational pair reaches only a coset of the 8-point subgroup
    const Relation pair = rational_pair();
    const Verdict v = track(pair, check_transitivity(pair, circle_bounds()));
    CHECK(v.status == Status::RefutedWithinBounds);
    CHECK(v.witness.at("cycle_period").get<int>() >= 1);

    // the identity never leaves its ball, and far-apart balls exist
    const Relation id = identity_family();
    const Verdict vid = track(id, check_transitivity(id, circle_bounds()));
    CHECK(vid.status == Status::RefutedWithinBounds);
}

TEST_CASE("full shift is transitive on the cylinder cover") {
    const Relation f = shift_single();
    const Verdict v = track(f, check_transitivity(f, sigma_bounds()));
    CHECK(v.status == Status::ConfirmedWithinBounds);
    CHECK(v.witness.at("engine") == "sampled-graph");
}

TEST_CASE("super-transitivity agrees with transitivity on singletons") {
    for (const Relation& f : {golden_rotation(), sqrt2_rotation(), identity_family()}) {
        const Verdict trans = check_transitivity(f, circle_bounds());
        const Verdict super = track(f, check_super_transitivity(f, circle_bounds()));
        CHECK(super.status == trans.status);
    }
    const Relation shift = shift_single();
    CHECK(check_super_transitivity(shift, sigma_bounds()).status ==
          check_transitivity(shift, sigma_bounds()).status);
}

TEST_CASE("super-transitivity refutes commutative pairs") {
    const Verdict rational = track(rational_pair(),
                                   check_super_transitivity(rational_pair(), circle_bounds()));
    CHECK(rational.status == Status::RefutedWithinBounds);
    CHECK(rational.witness.at("certificate") == "image-spread");

    const Verdict irrational = track(
        irrational_pair(), check_super_transitivity(irrational_pair(), circle_bounds()));
    CHECK(irrational.status == Status::RefutedWithinBounds);
    CHECK(irrational.witness.at("certificate") == "image-spread");

    // shifts admit no spread certificate, so at a fine cover the exhausted
    // search stays inconclusive
    Bounds fine; // stock defaults: cover_eps 0.1, net_eps 0.025
    fine.n_max = 50;
    const Verdict shifts = check_super_transitivity(shift_pair(), fine);
    CHECK(shifts.status == Status::Inconclusive);
}

TEST_CASE("weak and topological mixing of the full shift") {
    const Relation f = shift_single();
    const Verdict weak = track(f, check_weak_mixing(f, sigma_bounds()));
    CHECK(weak.status == Status::ConfirmedWithinBounds);
    const Verdict top = track(f, check_topological_mixing(f, sigma_bounds()));
    CHECK(top.status == Status::ConfirmedWithinBounds);
    const Verdict sweak = track(f, check_super_weak_mixing(f, sigma_bounds()));
    CHECK(sweak.status == Status::ConfirmedWithinBounds);
    const Verdict stop = track(f, check_super_topological_mixing(f, sigma_bounds()));
    CHECK(stop.status == Status::ConfirmedWithinBounds);
}

TEST_CASE("mixing refutations") {
    const Verdict weak_id = track(identity_family(),
                                  check_weak_mixing(identity_family(), circle_bounds()));
    CHECK(weak_id.status == Status::RefutedWithinBounds);

    const Verdict top_id = track(identity_family(),
                                 check_topological_mixing(identity_family(), circle_bounds()));
    CHECK(top_id.status == Status::RefutedWithinBounds);

    // a single rational rotation fails topological mixing with a detected cycle
    const Relation single_rational = make_relation(kCircle, {Rotation{kTau / 8}});
    const Verdict top = track(single_rational,
                              check_topological_mixing(single_rational, circle_bounds()));
    CHECK(top.status == Status::RefutedWithinBounds);
    CHECK(top.witness.at("cycle_period").get<int>() >= 1);
    CHECK(top.witness.contains("miss_level"));

    const Verdict weak_rational = track(rational_pair(),
                                        check_weak_mixing(rational_pair(), circle_bounds()));
    CHECK(weak_rational.status == Status::RefutedWithinBounds);

    const Verdict sweak = track(irrational_pair(),
                                check_super_weak_mixing(irrational_pair(), circle_bounds()));
    CHECK(sweak.status == Status::RefutedWithinBounds);
    const Verdict stop = track(rational_pair(),
                               check_super_topological_mixing(rational_pair(), circle_bounds()));
    CHECK(stop.status == Status::RefutedWithinBounds);
}

TEST_CASE("implication chains hold at equal bounds") {
    struct ChainCase {
        Relation relation;
        Bounds bounds;
    };
    for (const auto& c : {ChainCase{shift_single(), sigma_bounds()},
                          ChainCase{identity_family(), circle_bounds()}}) {
        const Status trans = check_transitivity(c.relation, c.bounds).status;
        const Status weak = check_weak_mixing(c.relation, c.bounds).status;
        const Status top = check_topological_mixing(c.relation, c.bounds).status;
        if (top == Status::ConfirmedWithinBounds) CHECK(weak == Status::ConfirmedWithinBounds);
        if (weak == Status::ConfirmedWithinBounds) CHECK(trans == Status::ConfirmedWithinBounds);

        const Status strans = check_super_transitivity(c.relation, c.bounds).status;
        const Status sweak = check_super_weak_mixing(c.relation, c.bounds).status;
        const Status stop = check_super_topological_mixing(c.relation, c.bounds).status;
        if (stop == Status::ConfirmedWithinBounds) CHECK(sweak == Status::ConfirmedWithinBounds);
        if (sweak == Status::ConfirmedWithinBounds) {
            CHECK(strans == Status::ConfirmedWithinBounds);
        }
    }
}

TEST_CASE("dense periodicity on the base space") {
    // rational pair: the oracle fixes the least period at 4, uniformly
    const Verdict rational = track(rational_pair(),
                                   check_dense_periodicity_relation(rational_pair(),
                                                                    circle_bounds()));
    REQUIRE(rational.status == Status::ConfirmedWithinBounds);
    for (const auto& e : rational.witness.at("points")) {
        CHECK(e.at("n").get<int>() == 4);
    }

    // a family containing the identity returns at n = 1
    const Relation with_id = make_relation(kCircle, {Rotation{0.0}, Rotation{kTau / 8}});
    const Verdict vid = track(with_id,
                              check_dense_periodicity_relation(with_id, circle_bounds()));
    REQUIRE(vid.status == Status::ConfirmedWithinBounds);
    for (const auto& e : vid.witness.at("points")) CHECK(e.at("n").get<int>() == 1);

    Bounds b = circle_bounds();
    b.n_max = 50;
    const Verdict irrational = track(
        irrational_pair(), check_dense_periodicity_relation(irrational_pair(), b));
    CHECK(irrational.status == Status::RefutedWithinBounds);
    CHECK(irrational.witness.at("min_distance").get<double>() > b.tol);

    const Verdict shifts = track(shift_pair(),
                                 check_dense_periodicity_relation(shift_pair(), sigma_bounds()));
    CHECK(shifts.status == Status::RefutedWithinBounds);
    CHECK(shifts.witness.at("certificate") == "nonconstant-shift");

    const Verdict doubling = check_dense_periodicity_relation(
        doubling_family(), default_bounds_for(SpaceKind::Interval));
    CHECK(doubling.status == Status::Inconclusive);
}

TEST_CASE("dense periodicity of the induced map") {
    // singleton rational rotation: every singleton is periodic with n = 8
    const Relation single = make_relation(kCircle, {Rotation{kTau / 8}});
    Bounds b = circle_bounds();
    b.net_eps = 0.3;
    const auto seeds = default_seeds(single, b, 1, 16);
    const Verdict confirmed = track(single, check_dense_periodicity_induced(single, b, seeds));
    CHECK(confirmed.status == Status::ConfirmedWithinBounds);

    // identity: every set is fixed
    const Verdict id = track(identity_family(),
                             check_dense_periodicity_induced(
                                 identity_family(), b,
                                 default_seeds(identity_family(), b, 2, 8)));
    CHECK(id.status == Status::ConfirmedWithinBounds);

    // exact Z8 discretisation: exhaustive census refutes seed {0}
    const Relation z8 = z8_table_pair();
    const HSet seed0 = HSet::make(z8.space, {CircleAngle{0.0}});
    const Verdict refuted = track(z8, check_dense_periodicity_induced(z8, b, {seed0}));
    REQUIRE(refuted.status == Status::RefutedWithinBounds);

    // the census must match an independent bitmask brute force
    const auto oracle = oracles::z_m_census(8, 1, 3, b.n_max);
    REQUIRE(refuted.witness.at("census").size() == oracle.periodic.size());
    CHECK(oracle.periodic.size() == 3);
    std::vector<std::uint32_t> masks;
    for (const auto& e : refuted.witness.at("census")) {
        std::uint32_t mask = 0;
        for (const auto& idx : e.at("set")) mask |= 1u << idx.get<int>();
        masks.push_back(mask);
    }
    std::sort(masks.begin(), masks.end());
    std::vector<std::uint32_t> expect;
    for (const auto& [mask, period] : oracle.periodic) expect.push_back(mask);
    std::sort(expect.begin(), expect.end());
    CHECK(masks == expect);
    // evens, odds, everything
    CHECK(expect == std::vector<std::uint32_t>{0x55, 0xAA, 0xFF});

    const double min_d = refuted.witness.at("min_distance").get<double>();
    CHECK(min_d == doctest::Approx(3.0 * kTau / 8.0)); // 3*pi/4, to the odd coset
    CHECK(min_d > b.net_eps);
}

TEST_CASE("sensitivity of the induced map") {
    // {sigma, sigma^2} separates tail rewrites by at least 1
    Bounds sb = sigma_bounds();
    sb.net_eps = 0.3;
    sb.n_max = 24;
    const Relation shifts = shift_pair();
    std::vector<HSet> seeds{HSet::make(shifts.space, {constant_biseq(0)}),
                            HSet::make(shifts.space, {make_biseq(0, {1, 0, 1}, 0, -1),
                                                      make_biseq(1, {0}, 0, 2)})};
    const Verdict confirmed = track(shifts, check_sensitivity_induced(shifts, 1.0, sb, seeds));
    REQUIRE(confirmed.status == Status::ConfirmedWithinBounds);
    for (const auto& e : confirmed.witness.at("seeds")) {
        CHECK(e.at("separation").get<double>() >= 1.0);
        CHECK(e.at("initial_distance").get<double>() < sb.net_eps);
    }

    // a single rotation preserves hausdorff distance: certificate refutation
    const Relation rot = golden_rotation();
    const Verdict refuted = track(
        rot, check_sensitivity_induced(rot, 0.5, circle_bounds(),
                                       {HSet::make(kCircle, {CircleAngle{1.0}})}));
    CHECK(refuted.status == Status::RefutedWithinBounds);
    CHECK(refuted.witness.at("certificate") == "isometry-singleton");

    // doubling separates nearby singletons quickly
    Bounds db = default_bounds_for(SpaceKind::Interval);
    db.n_max = 30;
    const Relation dbl = doubling_family();
    const Verdict d = track(dbl, check_sensitivity_induced(
                                     dbl, 0.25, db,
                                     {HSet::make(dbl.space, {UnitReal{0.3}}),
                                      HSet::make(dbl.space, {UnitReal{0.7}})}));
    CHECK(d.status == Status::ConfirmedWithinBounds);

    CHECK_THROWS_AS(check_sensitivity_induced(dbl, 0.0, db, seeds), input_error);
    CHECK_THROWS_AS(check_sensitivity_induced(dbl, 0.5, db, {}), input_error);
}

TEST_CASE("staged convergence checker") {
    // single irrational rotation reaches any target at depth 3
    const Relation golden = golden_rotation();
    const Ball u{CircleAngle{1.0}, 0.5};
    const Verdict ok = track(golden,
                             check_singleton_convergence(golden, u, CircleAngle{4.0}, 3,
                                                      circle_bounds()));
    REQUIRE(ok.status == Status::ConfirmedWithinBounds);
    int prev_n = 0;
    for (const auto& st : ok.witness.at("stages")) {
        const int n = st.at("n").get<int>();
        CHECK(n > prev_n);
        prev_n = n;
        const int stage = st.at("stage").get<int>();
        CHECK(st.at("image_distance").get<double>() <= 1.0 / stage);
    }

    // the rational pair cannot squeeze its spread under radius 1/2
    const Ball placed{CircleAngle{normalize_angle(-kTau / 4)}, 0.5};
    const Verdict refuted = track(
        rational_pair(),
        check_singleton_convergence(rational_pair(), placed, CircleAngle{0.0}, 3, circle_bounds()));
    REQUIRE(refuted.status == Status::RefutedWithinBounds);
    CHECK(refuted.witness.at("failing_stage").get<int>() <= 2);
    CHECK(refuted.witness.at("certificate") == "image-spread");

    // identity family: confirmed exactly when the target is reachable inside U
    const Relation id = identity_family();
    const Verdict near = check_singleton_convergence(id, Ball{CircleAngle{0.0}, 0.5},
                                                  CircleAngle{0.1}, 3, circle_bounds());
    CHECK(near.status == Status::ConfirmedWithinBounds);
    const Verdict far = check_singleton_convergence(id, Ball{CircleAngle{0.0}, 0.3},
                                                 CircleAngle{kTau / 2}, 3, circle_bounds());
    CHECK(far.status != Status::ConfirmedWithinBounds);

    CHECK_THROWS_AS(check_singleton_convergence(id, u, CircleAngle{0.0}, 0, circle_bounds()),
                    input_error);
}

TEST_CASE("hyperspace transitivity consistency with super-transitivity") {
    // a confirmed singleton-seeded induced-transitivity search must never
    // coexist with a refuted super-transitivity at the same bounds
    for (const BuiltinFamily& fam : builtin_families()) {
        Bounds b = fam.bounds;
        if (fam.relation.space.kind == SpaceKind::Circle) b = coarse_circle_bounds();
        const Verdict induced = check_induced_transitivity_singletons(fam.relation, b);
        const Verdict super = check_super_transitivity(fam.relation, b);
        if (induced.status == Status::ConfirmedWithinBounds) {
            CHECK(super.status != Status::RefutedWithinBounds);
            replay_pool().emplace_back(fam.relation, induced);
        }
    }
}

TEST_CASE("proposition guards on commutative multi-map families") {
    for (const BuiltinFamily& fam : builtin_families()) {
        if (fam.relation.arity() < 2) continue;
        Relation probe = fam.relation;
        const auto comm = check_commutativity(probe, fam.bounds.cover_eps, 1e-9);
        if (!comm.ok) continue;

        for (int n_max : {50, 200}) {
            // the stock default cover is fine enough for the guard on every
            // space; a radius-2 cover nearly swallows the sequence space and
            // its containment claims say nothing about small open sets
            Bounds b;
            b.n_max = n_max;
            CHECK(check_super_transitivity(probe, b).status != Status::ConfirmedWithinBounds);
        }
        Bounds b = fam.bounds;
        b.net_eps = std::max(b.net_eps, 0.25);
        const auto seeds = default_seeds(probe, b, 5, 12);
        CHECK(check_dense_periodicity_induced(probe, b, seeds).status !=
              Status::ConfirmedWithinBounds);
    }
}

TEST_CASE("graph-engine weak mixing refutes the discrete table pair") {
    // balls holding no table point have no outgoing edges at all, so the
    // product reachability analysis certifies unreachable tuples
    const Relation z8 = z8_table_pair();
    const Verdict v = check_weak_mixing(z8, circle_bounds());
    CHECK(v.status == Status::RefutedWithinBounds);
    CHECK(v.witness.at("engine") == "sampled-graph");
    CHECK(v.witness.contains("tuple"));
}

TEST_CASE("weak mixing enforces the product cover cap") {
    Bounds b = default_bounds_for(SpaceKind::Interval);
    b.cover_eps = 0.004; // 501 centers, beyond the 128-node product cap
    try {
        check_weak_mixing(doubling_family(), b);
        FAIL("expected a resource error");
    } catch (const resource_error& e) {
        CHECK(std::string(e.what()).find("128") != std::string::npos);
    }
}

TEST_CASE("every confirmed or refuted verdict replays") {
    CHECK(replay_pool().size() > 10);
    for (const auto& [relation, verdict] : replay_pool()) {
        std::string why;
        const bool ok = replay_witness(relation, verdict, &why);
        INFO(verdict.checker, " [", to_string(verdict.status), "] ", why);
        CHECK(ok);
    }
}
