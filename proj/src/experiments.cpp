#include "hyperdyn/experiments.hpp"

#include "hyperdyn/json_io.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace hyperdyn {

namespace {

constexpr double kGolden = 0.61803398874989484820; // (sqrt 5 - 1) / 2
constexpr double kSqrt2Frac = 0.41421356237309504880; // sqrt 2 - 1

Space circle_space() { return Space{SpaceKind::Circle, 1e-9}; }
Space interval_space() { return Space{SpaceKind::Interval, 1e-9}; }
Space sigma2_space() { return Space{SpaceKind::Sigma2, 1e-9}; }

} // namespace

Relation rational_pair() {
    return make_relation(circle_space(), {Rotation{kTau / 8.0}, Rotation{3.0 * kTau / 8.0}});
}

Relation irrational_pair() {
    return make_relation(circle_space(), {Rotation{kTau * kGolden}, Rotation{kTau * kSqrt2Frac}});
}

Relation golden_rotation() {
    return make_relation(circle_space(), {Rotation{kTau * kGolden}});
}

Relation sqrt2_rotation() {
    return make_relation(circle_space(), {Rotation{kTau * kSqrt2Frac}});
}

Relation identity_family() { return make_relation(circle_space(), {Rotation{0.0}}); }

Relation shift_single() { return make_relation(sigma2_space(), {ShiftPower{1}}); }

Relation shift_pair() {
    return make_relation(sigma2_space(), {ShiftPower{1}, ShiftPower{2}});
}

Relation doubling_family() { return make_relation(interval_space(), {Doubling{}}); }

Relation z8_table_pair() {
    const Space space = circle_space();
    std::vector<Point> points;
    for (int j = 0; j < 8; ++j) {
        points.push_back(CircleAngle{normalize_angle(kTau * static_cast<double>(j) / 8.0)});
    }
    std::vector<std::size_t> plus_one(8), plus_three(8);
    for (std::size_t j = 0; j < 8; ++j) {
        plus_one[j] = (j + 1) % 8;
        plus_three[j] = (j + 3) % 8;
    }
    return make_relation(space, {TableMap{points, plus_one}, TableMap{points, plus_three}});
}

Bounds default_bounds_for(SpaceKind kind) {
    Bounds b; // circle/interval defaults
    if (kind == SpaceKind::Sigma2) {
        // a cover at eps 2 is the window-[-2,2] cylinder cover
        b.cover_eps = 2.0;
        b.net_eps = 0.5;
        b.n_max = 12;
    }
    return b;
}

std::vector<BuiltinFamily> builtin_families() {
    std::vector<BuiltinFamily> out;
    out.push_back({"rational-pair", rational_pair(), default_bounds_for(SpaceKind::Circle)});
    out.push_back({"irrational-pair", irrational_pair(), default_bounds_for(SpaceKind::Circle)});
    out.push_back({"golden-rotation", golden_rotation(), default_bounds_for(SpaceKind::Circle)});
    out.push_back({"sqrt2-rotation", sqrt2_rotation(), default_bounds_for(SpaceKind::Circle)});
    out.push_back({"identity", identity_family(), default_bounds_for(SpaceKind::Circle)});
    out.push_back({"shift", shift_single(), default_bounds_for(SpaceKind::Sigma2)});
    out.push_back({"shift-pair", shift_pair(), default_bounds_for(SpaceKind::Sigma2)});
    out.push_back({"doubling", doubling_family(), default_bounds_for(SpaceKind::Interval)});
    out.push_back({"z8-pair", z8_table_pair(), default_bounds_for(SpaceKind::Circle)});
    return out;
}

nlohmann::json ExperimentReport::to_json() const {
    nlohmann::json j;
    j["name"] = name;
    j["seed"] = seed;
    j["all_matched"] = all_matched;
    j["runs"] = nlohmann::json::array();
    for (const RunResult& r : runs) {
        j["runs"].push_back(nlohmann::json{{"checker", r.checker},
                                           {"expected", to_string(r.expected)},
                                           {"actual", to_string(r.verdict.status)},
                                           {"matched", r.matched},
                                           {"verdict", verdict_to_json(r.verdict)}});
    }
    j["extras"] = extras;
    return j;
}

namespace {

RunResult record(Status expected, Verdict verdict) {
    RunResult r;
    r.checker = verdict.checker;
    r.expected = expected;
    r.verdict = std::move(verdict);
    r.matched = r.verdict.status == expected;
    return r;
}

void finalize(ExperimentReport& report) {
    report.all_matched =
        std::all_of(report.runs.begin(), report.runs.end(),
                    [](const RunResult& r) { return r.matched; });
}

BiSeq random_eventually_constant(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> bit(0, 1);
    std::uniform_int_distribution<int> width(3, 9);
    const int w = width(rng);
    std::vector<std::uint8_t> core;
    core.reserve(static_cast<std::size_t>(w));
    for (int i = 0; i < w; ++i) core.push_back(static_cast<std::uint8_t>(bit(rng)));
    const auto left = static_cast<std::uint8_t>(bit(rng));
    const auto right = static_cast<std::uint8_t>(bit(rng));
    return make_biseq(left, std::move(core), right, -w / 2);
}

} // namespace

ExperimentReport run_rational_rotation_pair(std::uint64_t seed) {
    ExperimentReport report;
    report.name = "rational-rotations";
    report.seed = seed;

    Relation pair = rational_pair();
    const Bounds circle_bounds = default_bounds_for(SpaceKind::Circle);

    const CommutativityReport comm = check_commutativity(pair, 0.1, 1e-9);
    report.extras["commutativity"] = nlohmann::json{{"ok", comm.ok},
                                                    {"max_deviation", comm.max_deviation}};

    report.runs.push_back(record(Status::ConfirmedWithinBounds,
                                 check_dense_periodicity_relation(pair, circle_bounds)));

    // the induced refutation runs on the exact 8-point discretisation, where
    // exhaustive subset enumeration is a true oracle
    Relation z8 = z8_table_pair();
    Bounds z8_bounds = circle_bounds;
    z8_bounds.net_eps = 0.3;
    const HSet seed_zero = HSet::make(z8.space, {CircleAngle{0.0}});
    Verdict induced = check_dense_periodicity_induced(z8, z8_bounds, {seed_zero});
    if (induced.status == Status::RefutedWithinBounds) {
        report.extras["z8_census"] = induced.witness.at("census");
        report.extras["z8_min_hausdorff_to_seed"] = induced.witness.at("min_distance");
    }
    report.runs.push_back(record(Status::RefutedWithinBounds, std::move(induced)));

    report.runs.push_back(
        record(Status::RefutedWithinBounds, check_super_transitivity(pair, circle_bounds)));

    // swapping the two rotation angles must not change any verdict
    Relation swapped = make_relation(pair.space, {pair.maps[1], pair.maps[0]});
    const bool swap_same =
        check_super_transitivity(swapped, circle_bounds).status ==
            report.runs.back().verdict.status &&
        check_dense_periodicity_relation(swapped, circle_bounds).status ==
            report.runs.front().verdict.status;
    report.extras["swap_invariant"] = swap_same;

    // orbit trace of {0}; the cardinality sequence is a frozen regression value
    const HSet orbit_seed = HSet::make(pair.space, {CircleAngle{0.0}});
    const auto orbit = induced_orbit(pair, orbit_seed, 10);
    nlohmann::json cardinalities = nlohmann::json::array();
    for (const HSet& a : orbit) cardinalities.push_back(a.size());
    report.extras["orbit_cardinalities"] = cardinalities;

    finalize(report);
    return report;
}

ExperimentReport run_irrational_rotation_pair(std::uint64_t seed) {
    ExperimentReport report;
    report.name = "irrational-rotations";
    report.seed = seed;

    const Bounds bounds = default_bounds_for(SpaceKind::Circle);
    const Relation pair = irrational_pair();

    for (const Relation& component : {golden_rotation(), sqrt2_rotation()}) {
        Verdict v = check_transitivity(component, bounds);
        const OrbitCoverReport orbit =
            direct_orbit_cover_visits(component, bounds, CircleAngle{0.0});
        report.extras["component_orbit_all_visited"].push_back(orbit.all_visited);
        nlohmann::json visits = nlohmann::json::array();
        for (int n : orbit.first_visit) visits.push_back(n);
        report.extras["component_first_visits"].push_back(visits);
        report.runs.push_back(record(Status::ConfirmedWithinBounds, std::move(v)));
    }

    report.runs.push_back(
        record(Status::RefutedWithinBounds, check_super_transitivity(pair, bounds)));

    // word-image spread at n = 50 for a few sampled starting points
    nlohmann::json spreads = nlohmann::json::array();
    for (double theta : {0.0, 1.0, 2.5}) {
        const HSet img = n_fold_image(pair, 50, CircleAngle{normalize_angle(theta)});
        double diam = 0.0;
        for (std::size_t i = 0; i < img.size(); ++i) {
            for (std::size_t j = i + 1; j < img.size(); ++j) {
                diam = std::max(diam, distance(pair.space, img.points()[i], img.points()[j]));
            }
        }
        spreads.push_back(nlohmann::json{{"theta", theta}, {"diameter", diam}});
    }
    report.extras["spread_at_50"] = spreads;
    report.extras["spread_threshold"] = 2.0 * bounds.cover_eps;

    finalize(report);
    return report;
}

ExperimentReport run_shift_family_sensitivity(std::uint64_t seed) {
    ExperimentReport report;
    report.name = "shift-sensitivity";
    report.seed = seed;

    Relation family = shift_pair();
    const double epsilons[] = {0.5, 0.1, 0.02};
    nlohmann::json combos = nlohmann::json::array();

    int combo_index = 0;
    for (double eps : epsilons) {
        std::vector<HSet> seeds_for_eps;
        for (int k = 1; k <= 3; ++k, ++combo_index) {
            std::mt19937_64 rng(seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(combo_index + 1));
            std::vector<Point> members;
            for (int i = 0; i < k; ++i) members.push_back(random_eventually_constant(rng));
            const HSet a = HSet::make(family.space, members);
            seeds_for_eps.push_back(a);

            int r = 0;
            while (std::ldexp(1.0, -r) >= eps) ++r;

            std::vector<Point> b_pts, c_pts;
            for (const Point& p : a.points()) {
                b_pts.push_back(rewrite_right_tail(std::get<BiSeq>(p), r + 2, 0));
                c_pts.push_back(rewrite_right_tail(std::get<BiSeq>(p), r + 2, 1));
            }
            const HSet b = HSet::make(family.space, b_pts);
            const HSet c = HSet::make(family.space, c_pts);

            const double dab = hausdorff_distance(family.space, a, b);
            const double dac = hausdorff_distance(family.space, a, c);

            HSet bn = b;
            HSet cn = c;
            for (int i = 0; i < r + 2; ++i) {
                bn = induced_map(family, bn);
                cn = induced_map(family, cn);
            }
            const double separation = hausdorff_distance(family.space, bn, cn);

            bool window_preserved = true;
            for (std::size_t i = 0; i < a.size(); ++i) {
                const auto& xa = std::get<BiSeq>(a.points()[i]);
                for (const HSet* s : {&b, &c}) {
                    const auto& xs = std::get<BiSeq>(s->points()[i]);
                    for (std::int64_t idx = xa.begin_index() - 2; idx <= r + 1; ++idx) {
                        if (xa.at(idx) != xs.at(idx)) window_preserved = false;
                    }
                }
            }

            combos.push_back(nlohmann::json{{"eps", eps},
                                            {"k", k},
                                            {"r", r},
                                            {"d_A_B", dab},
                                            {"d_A_C", dac},
                                            {"separation", separation},
                                            {"close_ok", dab < eps && dac < eps},
                                            {"separated_ok", separation >= 1.0},
                                            {"window_preserved", window_preserved},
                                            {"seed_set", hset_to_json(a)}});
        }

        Bounds bounds = default_bounds_for(SpaceKind::Sigma2);
        bounds.net_eps = eps;
        bounds.n_max = 24;
        report.runs.push_back(record(
            Status::ConfirmedWithinBounds,
            check_sensitivity_induced(family, 1.0, bounds, seeds_for_eps)));
    }
    report.extras["combos"] = combos;

    bool all_inequalities = true;
    for (const auto& c : combos) {
        if (!c.at("close_ok").get<bool>() || !c.at("separated_ok").get<bool>()) {
            all_inequalities = false;
        }
    }
    report.extras["all_inequalities_hold"] = all_inequalities;

    finalize(report);
    report.all_matched = report.all_matched && all_inequalities;
    return report;
}

std::vector<std::string> experiment_names() {
    return {"rational-rotations", "irrational-rotations", "shift-sensitivity"};
}

ExperimentReport run_experiment(const std::string& name, std::uint64_t seed) {
    if (name == "rational-rotations") return run_rational_rotation_pair(seed);
    if (name == "irrational-rotations") return run_irrational_rotation_pair(seed);
    if (name == "shift-sensitivity") return run_shift_family_sensitivity(seed);
    throw input_error("unknown experiment '" + name + "'");
}

void write_experiment_files(const ExperimentReport& report,
                            const std::filesystem::path& out_dir) {
    const std::filesystem::path dir = out_dir / report.name;
    std::filesystem::create_directories(dir);
    write_file_atomic(dir / "report.json", report.to_json().dump(2) + "\n");

    std::ostringstream csv;
    csv << "checker,expected,actual,matched,elapsed_ms\n";
    for (const RunResult& r : report.runs) {
        csv << r.checker << ',' << to_string(r.expected) << ',' << to_string(r.verdict.status)
            << ',' << (r.matched ? "true" : "false") << ',' << r.verdict.elapsed_ms << '\n';
    }
    write_file_atomic(dir / "verdicts.csv", csv.str());

    if (report.extras.contains("orbit_cardinalities")) {
        const Relation pair = rational_pair();
        const HSet seed_set = HSet::make(pair.space, {CircleAngle{0.0}});
        const auto orbit = induced_orbit(pair, seed_set, 10);
        std::ostringstream orbit_csv;
        orbit_csv << "step,cardinality,hausdorff_to_seed,points\n";
        for (std::size_t n = 0; n < orbit.size(); ++n) {
            orbit_csv << n << ',' << orbit[n].size() << ','
                      << hausdorff_distance(pair.space, seed_set, orbit[n]) << ",\""
                      << hset_to_json(orbit[n]).dump() << "\"\n";
        }
        write_file_atomic(dir / "orbit.csv", orbit_csv.str());
    }
}

} // namespace hyperdyn
