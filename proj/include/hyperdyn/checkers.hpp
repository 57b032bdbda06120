#pragma once

#include "hyperdyn/hyperspace.hpp"
#include "hyperdyn/relation.hpp"
#include "hyperdyn/space.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace hyperdyn {

// Search bounds every checker runs under: iteration horizon, cover radius,
// sample spacing and metric tolerance. A verdict is only ever valid relative
// to these.
struct Bounds {
    int n_max = 200;
    double cover_eps = 0.1;
    double net_eps = 0.025;
    double tol = 1e-6;
};

void validate_bounds(const Bounds& bounds);

enum class Status { ConfirmedWithinBounds, RefutedWithinBounds, Inconclusive };

std::string to_string(Status status);

// Three-valued result. Confirmed and Refuted always carry a witness that can
// be replayed through the relation/hyperspace operations.
struct Verdict {
    std::string checker;
    Status status = Status::Inconclusive;
    nlohmann::json witness;
    Bounds bounds;
    double elapsed_ms = 0.0;
};

// Ball-level reachability structure: nodes are cover ball indices; per map i
// there is an edge u->v when f_i applied to ball u's net samples meets ball v.
struct ReachGraph {
    struct Edge {
        int from = 0;
        int to = 0;
        int map_index = 0;
        Point sample; // evidence: sample in ball `from` whose image lies in ball `to`
    };
    int nodes = 0;
    std::vector<Edge> edges;
    std::vector<std::vector<int>> adjacency; // combined over maps, deduplicated
};

ReachGraph build_reach_graph(const Relation& f, const BallCover& cover,
                             const std::vector<Point>& net);

inline constexpr int kProductCoverCap = 128;

Verdict check_transitivity(const Relation& f, const Bounds& bounds);
Verdict check_super_transitivity(const Relation& f, const Bounds& bounds);
Verdict check_weak_mixing(const Relation& f, const Bounds& bounds);
Verdict check_super_weak_mixing(const Relation& f, const Bounds& bounds);
Verdict check_topological_mixing(const Relation& f, const Bounds& bounds);
Verdict check_super_topological_mixing(const Relation& f, const Bounds& bounds);
Verdict check_dense_periodicity_relation(const Relation& f, const Bounds& bounds);
Verdict check_dense_periodicity_induced(const Relation& f, const Bounds& bounds,
                                        const std::vector<HSet>& seeds);
Verdict check_sensitivity_induced(const Relation& f, double delta, const Bounds& bounds,
                                  const std::vector<HSet>& seeds);
Verdict check_singleton_convergence(const Relation& f, const Ball& u, const Point& target,
                                 int depth, const Bounds& bounds);

// Hyperspace-level transitivity probe over singleton seeds: for cover pairs
// (U, V), search x in U and n with the induced orbit of {x} pushed inside V.
// Used as the cross-consistency counterpart of super-transitivity.
Verdict check_induced_transitivity_singletons(const Relation& f, const Bounds& bounds);

// Re-evaluates a Confirmed/Refuted witness through the public operations and
// reports whether every recorded claim still holds.
bool replay_witness(const Relation& f, const Verdict& verdict, std::string* why = nullptr);

// Singleton-family helper: iterate the single map from `start` and record the
// first step entering each cover ball.
struct OrbitCoverReport {
    bool all_visited = false;
    std::vector<int> first_visit; // -1 when never entered
};
OrbitCoverReport direct_orbit_cover_visits(const Relation& f, const Bounds& bounds,
                                           const Point& start);

// Net singletons plus a few seeded random small sets; TableMap families use
// their declared net. Deterministic in rng_seed.
std::vector<HSet> default_seeds(const Relation& f, const Bounds& bounds, std::uint64_t rng_seed,
                                std::size_t max_seeds = 64);

} // namespace hyperdyn
