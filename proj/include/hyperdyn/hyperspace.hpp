#pragma once

#include "hyperdyn/space.hpp"

#include <cstddef>
#include <variant>
#include <vector>

namespace hyperdyn {

struct Relation;

inline constexpr std::size_t kDefaultFrontierCap = 1'000'000;

// Nonempty finite point set, deduplicated at the space tolerance and stored in
// canonical sorted order. Stands in for an element of the hyperspace K(X);
// finite sets are dense there under the Hausdorff metric.
class HSet {
public:
    static HSet make(const Space& space, std::vector<Point> pts);

    const std::vector<Point>& points() const { return points_; }
    std::size_t size() const { return points_.size(); }

private:
    std::vector<Point> points_;
};

bool hsets_equal(const Space& space, const HSet& a, const HSet& b, double tol);
bool hset_subset_of(const Space& space, const HSet& a, const HSet& b, double tol);

double hausdorff_distance(const Space& space, const HSet& a, const HSet& b);

// Open sets: a single open ball, or the complement of a finite union of
// closed balls (so the complement is itself open). Enough to express the
// hit / miss / far-miss membership predicates.
struct BallSpec {
    Ball ball;
};
struct ComplementOfBalls {
    std::vector<Ball> balls;
};
using OpenSetSpec = std::variant<BallSpec, ComplementOfBalls>;

bool point_in_open(const Space& space, const OpenSetSpec& set, const Point& p);
// Distance from p to the complement of the open set (0 when p is outside).
double distance_to_complement(const Space& space, const OpenSetSpec& set, const Point& p);

// <U1,...,Un> membership: A inside the union and meeting every U_i.
bool vietoris_member(const Space& space, const HSet& a, const std::vector<OpenSetSpec>& sets);
bool hit_member(const Space& space, const HSet& a, const OpenSetSpec& set);        // A meets E
bool plus_member(const Space& space, const HSet& a, const OpenSetSpec& set);       // A inside E
bool plusplus_member(const Space& space, const HSet& a, const OpenSetSpec& set);   // some eps-fattening of A inside E

// Induced map on finite sets: union of the per-map images, deduplicated.
HSet induced_map(const Relation& f, const HSet& a, std::size_t cap = kDefaultFrontierCap);
// [A, F(A), ..., F^n(A)], n+1 entries.
std::vector<HSet> induced_orbit(const Relation& f, const HSet& a, int steps,
                                std::size_t cap = kDefaultFrontierCap);

} // namespace hyperdyn
