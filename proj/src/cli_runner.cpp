#include "hyperdyn/experiments.hpp"
#include "hyperdyn/json_io.hpp"

#include <filesystem>
#include <ostream>
#include <sstream>

namespace hyperdyn {

namespace {

namespace fs = std::filesystem;

int status_exit_code(Status status) {
    switch (status) {
    case Status::ConfirmedWithinBounds: return kExitConfirmed;
    case Status::RefutedWithinBounds: return kExitRefuted;
    case Status::Inconclusive: return kExitInconclusive;
    }
    return kExitConfigError;
}

void write_json_report(const RunConfig& config, const std::string& name, const json& payload,
                       std::ostream& out) {
    out << payload.dump(2) << "\n";
    if (!config.out_dir.empty()) {
        write_file_atomic(fs::path(config.out_dir) / name, payload.dump(2) + "\n");
    }
}

int run_orbit(const RunConfig& config, std::ostream& out) {
    const Relation& f = *config.relation;
    const HSet& seed = *config.orbit_seed;
    const auto orbit = induced_orbit(f, seed, config.orbit_steps);

    std::ostringstream csv;
    csv << "step,cardinality,hausdorff_to_seed,points\n";
    json summary_steps = json::array();
    for (std::size_t n = 0; n < orbit.size(); ++n) {
        const double d = hausdorff_distance(f.space, seed, orbit[n]);
        csv << n << ',' << orbit[n].size() << ',' << d << ",\"" << hset_to_json(orbit[n]).dump()
            << "\"\n";
        summary_steps.push_back(json{{"step", n},
                                     {"cardinality", orbit[n].size()},
                                     {"hausdorff_to_seed", d}});
    }
    if (!config.out_dir.empty()) {
        write_file_atomic(fs::path(config.out_dir) / "orbit.csv", csv.str());
    }
    json summary{{"command", "orbit"},
                 {"steps", config.orbit_steps},
                 {"seed_set", hset_to_json(seed)},
                 {"trace", summary_steps},
                 {"rng_seed", config.rng_seed}};
    write_json_report(config, "orbit.json", summary, out);
    return kExitConfirmed;
}

int run_check(const RunConfig& config, std::ostream& out) {
    const Relation& f = *config.relation;
    const Bounds& bounds = config.bounds;
    const std::string& name = config.checker;

    std::vector<HSet> seeds = config.seeds;
    if (seeds.empty() &&
        (name == "dense_periodicity_induced" || name == "sensitivity_induced")) {
        seeds = default_seeds(f, bounds, config.rng_seed);
    }

    Verdict verdict;
    if (name == "transitivity") {
        verdict = check_transitivity(f, bounds);
    } else if (name == "super_transitivity") {
        verdict = check_super_transitivity(f, bounds);
    } else if (name == "weak_mixing") {
        verdict = check_weak_mixing(f, bounds);
    } else if (name == "super_weak_mixing") {
        verdict = check_super_weak_mixing(f, bounds);
    } else if (name == "topological_mixing") {
        verdict = check_topological_mixing(f, bounds);
    } else if (name == "super_topological_mixing") {
        verdict = check_super_topological_mixing(f, bounds);
    } else if (name == "dense_periodicity_relation") {
        verdict = check_dense_periodicity_relation(f, bounds);
    } else if (name == "dense_periodicity_induced") {
        verdict = check_dense_periodicity_induced(f, bounds, seeds);
    } else if (name == "sensitivity_induced") {
        if (!config.has_delta) throw input_error("config: sensitivity_induced needs 'delta'");
        verdict = check_sensitivity_induced(f, config.delta, bounds, seeds);
    } else if (name == "singleton_convergence") {
        if (!config.convergence_ball || !config.convergence_target) {
            throw input_error("config: singleton_convergence needs 'ball' and 'target'");
        }
        verdict = check_singleton_convergence(f, *config.convergence_ball, *config.convergence_target,
                                           config.depth, bounds);
    } else if (name == "induced_transitivity_singletons") {
        verdict = check_induced_transitivity_singletons(f, bounds);
    } else {
        throw input_error("config: unknown checker '" + name + "'");
    }

    write_json_report(config, "verdict.json", verdict_to_json(verdict), out);
    return status_exit_code(verdict.status);
}

int run_reproduce(const RunConfig& config, std::ostream& out, std::ostream& err) {
    std::vector<std::string> names;
    if (config.experiment == "all") {
        names = experiment_names();
    } else {
        const auto known = experiment_names();
        if (std::find(known.begin(), known.end(), config.experiment) == known.end()) {
            throw input_error("config: unknown experiment '" + config.experiment + "'");
        }
        names.push_back(config.experiment);
    }
    bool all_ok = true;
    for (const std::string& name : names) {
        const ExperimentReport report = run_experiment(name, config.rng_seed);
        if (!config.out_dir.empty()) {
            write_experiment_files(report, fs::path(config.out_dir));
        }
        out << report.to_json().dump(2) << "\n";
        if (!report.all_matched) {
            all_ok = false;
            for (const RunResult& r : report.runs) {
                if (!r.matched) {
                    err << "mismatch in " << name << ": " << r.checker << " expected "
                        << to_string(r.expected) << " got " << to_string(r.verdict.status)
                        << "\n";
                }
            }
        }
    }
    return all_ok ? kExitConfirmed : kExitRefuted;
}

int run_net(const RunConfig& config, std::ostream& out) {
    const Space space = config.space ? *config.space : config.relation->space;
    const double eps = config.bounds.net_eps;
    const std::size_t size = epsilon_net_size(space, eps);
    json report{{"command", "net"},
                {"space", space_to_json(space)},
                {"eps", eps},
                {"net_size", size}};
    const auto net = epsilon_net(space, eps);
    if (net.size() <= 4096) {
        json points = json::array();
        for (const Point& p : net) points.push_back(point_to_json(p));
        report["points"] = points;
    }
    const BallCover cover = ball_cover(space, config.bounds.cover_eps);
    report["cover"] = json{{"eps", config.bounds.cover_eps},
                           {"radius", cover.radius},
                           {"ball_count", cover.balls.size()}};
    write_json_report(config, "net.json", report, out);
    return kExitConfirmed;
}

} // namespace

int run_cli_config(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        if (config.command == "orbit") return run_orbit(config, out);
        if (config.command == "check") return run_check(config, out);
        if (config.command == "reproduce") return run_reproduce(config, out, err);
        if (config.command == "net") return run_net(config, out);
        err << "error: unknown command '" << config.command << "'\n";
        return kExitConfigError;
    } catch (const resource_error& e) {
        err << "resource error: " << e.what() << "\n";
        return kExitResourceError;
    } catch (const input_error& e) {
        err << "error: " << e.what() << "\n";
        return kExitConfigError;
    }
}

} // namespace hyperdyn
