#pragma once

#include "hyperdyn/hyperspace.hpp"
#include "hyperdyn/space.hpp"

#include <cstddef>
#include <optional>
#include <variant>
#include <vector>

namespace hyperdyn {

// Continuous self-maps available per space kind.
struct Rotation {
    double angle = 0.0; // radians, Circle
};
struct ShiftPower {
    int power = 1; // sigma^power, Sigma2
};
struct Tent {
    double slope = 2.0; // t -> slope * min(t, 1-t), Interval, slope in (0, 2]
};
struct Doubling {}; // t -> 2t mod 1, Interval
// Total map on an explicit finite net, for exhaustive discrete experiments.
struct TableMap {
    std::vector<Point> points;
    std::vector<std::size_t> table; // index -> index
};
using MapDescriptor = std::variant<Rotation, ShiftPower, Tent, Doubling, TableMap>;

enum class CommutativityStatus { Unverified, VerifiedOnNet, AssertedByUser };
struct Commutativity {
    CommutativityStatus status = CommutativityStatus::Unverified;
    double eps = 0.0;
    double tol = 0.0;
};

// Ordered finite family F = {f_1, ..., f_k} acting on one space.
struct Relation {
    Space space;
    std::vector<MapDescriptor> maps;
    Commutativity commutativity;

    std::size_t arity() const { return maps.size(); }
    bool commutativity_known() const {
        return commutativity.status != CommutativityStatus::Unverified;
    }
};

Relation make_relation(Space space, std::vector<MapDescriptor> maps, Commutativity comm = {});

bool all_rotations(const Relation& f);
bool all_shift_powers(const Relation& f);
bool all_table_maps(const Relation& f);

Point apply_map(const Space& space, const MapDescriptor& map, const Point& x);

// F(x) = {f_i(x)}, deduplicated.
HSet image(const Relation& f, const Point& x);

// F^n(x) by frontier iteration (with exact fast paths for all-rotation and
// all-shift families that yield identical sets).
HSet n_fold_image(const Relation& f, int n, const Point& x,
                  std::size_t cap = kDefaultFrontierCap);

// A composition word f_{letters[0]} o f_{letters[1]} o ... ; the last letter
// is applied first. Indices are 0-based positions into Relation::maps.
struct Word {
    std::vector<int> letters;
};

Point apply_word(const Relation& f, const Word& w, const Point& x);
std::vector<int> word_exponents(const Word& w, int arity);

// All length-n words; canonical exponent-vector representatives (letters
// sorted) when commutativity is verified or asserted.
std::vector<Word> enumerate_words(const Relation& f, int n,
                                  std::size_t cap = kDefaultFrontierCap);

struct CommutativityReport {
    bool ok = false;
    double max_deviation = 0.0;
    std::optional<Point> witness;
};

// Max over net points and map pairs of d(f_i f_j x, f_j f_i x); upgrades the
// relation to VerifiedOnNet when the deviation stays within tol.
CommutativityReport check_commutativity(Relation& f, double eps, double tol,
                                        std::size_t cap = kDefaultNetCap);

// Smallest n <= n_max with min_{y in F^n(x)} d(x, y) <= tol (exact equality
// on Sigma2), or nullopt.
std::optional<int> is_periodic_point(const Relation& f, const Point& x, int n_max, double tol,
                                     std::size_t cap = kDefaultFrontierCap);

// Internal-but-reusable exact engines.
// Reachable rotation displacement sums per level n (sorted, deduplicated).
std::vector<std::vector<double>> rotation_sum_levels(const Relation& f, int n_max);
// Reachable total shift powers per level n.
std::vector<std::vector<std::int64_t>> shift_sum_levels(const Relation& f, int n_max);

} // namespace hyperdyn
