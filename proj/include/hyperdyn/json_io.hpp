#pragma once

#include "hyperdyn/checkers.hpp"
#include "hyperdyn/hyperspace.hpp"
#include "hyperdyn/relation.hpp"
#include "hyperdyn/space.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace hyperdyn {

using json = nlohmann::json;

json point_to_json(const Point& p);
Point point_from_json(const json& j);

json space_to_json(const Space& s);
Space space_from_json(const json& j);

json ball_to_json(const Space& s, const Ball& b);
Ball ball_from_json(const json& j);

json map_to_json(const MapDescriptor& m, const Space& s);
MapDescriptor map_from_json(const json& j);

json relation_to_json(const Relation& f);
Relation relation_from_json(const json& j);

json hset_to_json(const HSet& a);
HSet hset_from_json(const Space& s, const json& j);

json bounds_to_json(const Bounds& b);
Bounds bounds_from_json(const json& j);

json verdict_to_json(const Verdict& v);
Verdict verdict_from_json(const json& j);

Status status_from_string(const std::string& s);

// One CLI invocation, parsed and structurally validated against the shipped
// config schema (docs/runconfig.schema.json mirrors these rules).
struct RunConfig {
    std::string command; // orbit | check | reproduce | net
    std::optional<Relation> relation;
    std::optional<Space> space;
    std::string checker;
    Bounds bounds;
    bool has_delta = false;
    double delta = 0.0;
    int depth = 3;
    std::optional<Ball> convergence_ball;
    std::optional<Point> convergence_target;
    std::vector<HSet> seeds;
    std::optional<HSet> orbit_seed;
    int orbit_steps = 0;
    std::string experiment;
    std::string out_dir;
    std::uint64_t rng_seed = 0;
};

RunConfig run_config_from_json(const json& j); // throws input_error with diagnostics

void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

// Exit-code table shared by the CLI and its tests.
inline constexpr int kExitConfirmed = 0;
inline constexpr int kExitRefuted = 1;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitResourceError = 3;
inline constexpr int kExitInconclusive = 4;

// Executes one parsed config; returns the process exit code.
int run_cli_config(const RunConfig& config, std::ostream& out, std::ostream& err);

} // namespace hyperdyn
