#pragma once

#include "hyperdyn/checkers.hpp"
#include "hyperdyn/relation.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace hyperdyn {

// Built-in systems used across experiments and the invariant suites.
Relation rational_pair();       // circle rotations by tau/8 and 3*tau/8
Relation irrational_pair();     // circle rotations by golden and sqrt(2)-1 multiples of tau
Relation golden_rotation();     // single irrational rotation
Relation sqrt2_rotation();      // the other single irrational rotation
Relation identity_family();     // {rotation by 0}
Relation shift_single();        // {sigma}
Relation shift_pair();          // {sigma, sigma^2}
Relation doubling_family();     // {2t mod 1}
Relation z8_table_pair();       // rational pair discretised on the 8-point circle net

struct BuiltinFamily {
    std::string name;
    Relation relation;
    Bounds bounds; // appropriate defaults for the family's space
};
std::vector<BuiltinFamily> builtin_families();

Bounds default_bounds_for(SpaceKind kind);

struct RunResult {
    std::string checker;
    Status expected = Status::Inconclusive;
    Verdict verdict;
    bool matched = false;
};

struct ExperimentReport {
    std::string name;
    std::uint64_t seed = 0;
    std::vector<RunResult> runs;
    nlohmann::json extras;
    bool all_matched = false;

    nlohmann::json to_json() const;
};

std::vector<std::string> experiment_names();
ExperimentReport run_experiment(const std::string& name, std::uint64_t seed);

ExperimentReport run_rational_rotation_pair(std::uint64_t seed);
ExperimentReport run_irrational_rotation_pair(std::uint64_t seed);
ExperimentReport run_shift_family_sensitivity(std::uint64_t seed);

// report JSON plus a CSV appendix of verdict rows / orbit traces
void write_experiment_files(const ExperimentReport& report,
                            const std::filesystem::path& out_dir);

} // namespace hyperdyn
