#include "hyperdyn/hyperspace.hpp"

#include "hyperdyn/relation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace hyperdyn {

HSet HSet::make(const Space& space, std::vector<Point> pts) {
    if (pts.empty()) throw input_error("hset: must be nonempty");
    for (const Point& p : pts) {
        if (kind_of(p) != space.kind) throw input_error("hset: point kind mismatch");
    }
    std::sort(pts.begin(), pts.end(), point_less);
    std::vector<Point> kept;
    kept.reserve(pts.size());
    for (const Point& p : pts) {
        if (kept.empty() || !points_equal(space, kept.back(), p)) kept.push_back(p);
    }
    // circle order wraps: first and last can still collide
    if (space.kind == SpaceKind::Circle && kept.size() > 1 &&
        points_equal(space, kept.front(), kept.back())) {
        kept.pop_back();
    }
    HSet h;
    h.points_ = std::move(kept);
    return h;
}

bool hset_subset_of(const Space& space, const HSet& a, const HSet& b, double tol) {
    for (const Point& p : a.points()) {
        bool found = false;
        for (const Point& q : b.points()) {
            if (distance(space, p, q) <= tol) {
                found = true;
                break;
            }
        }
        if (!found) return false;
    }
    return true;
}

bool hsets_equal(const Space& space, const HSet& a, const HSet& b, double tol) {
    return hset_subset_of(space, a, b, tol) && hset_subset_of(space, b, a, tol);
}

double hausdorff_distance(const Space& space, const HSet& a, const HSet& b) {
    double forward = 0.0;
    for (const Point& p : a.points()) {
        double best = std::numeric_limits<double>::infinity();
        for (const Point& q : b.points()) best = std::min(best, distance(space, p, q));
        forward = std::max(forward, best);
    }
    double backward = 0.0;
    for (const Point& q : b.points()) {
        double best = std::numeric_limits<double>::infinity();
        for (const Point& p : a.points()) best = std::min(best, distance(space, q, p));
        backward = std::max(backward, best);
    }
    return std::max(forward, backward);
}

bool point_in_open(const Space& space, const OpenSetSpec& set, const Point& p) {
    if (const auto* b = std::get_if<BallSpec>(&set)) {
        return distance(space, b->ball.center, p) < b->ball.radius;
    }
    const auto& c = std::get<ComplementOfBalls>(set);
    for (const Ball& ball : c.balls) {
        if (distance(space, ball.center, p) <= ball.radius) return false;
    }
    return true;
}

double distance_to_complement(const Space& space, const OpenSetSpec& set, const Point& p) {
    if (const auto* b = std::get_if<BallSpec>(&set)) {
        const double margin = b->ball.radius - distance(space, b->ball.center, p);
        // the complement may be empty when the ball swallows the whole space
        if (b->ball.radius > space_diameter(space)) {
            return std::numeric_limits<double>::infinity();
        }
        return std::max(0.0, margin);
    }
    const auto& c = std::get<ComplementOfBalls>(set);
    double best = std::numeric_limits<double>::infinity();
    for (const Ball& ball : c.balls) {
        best = std::min(best, std::max(0.0, distance(space, ball.center, p) - ball.radius));
    }
    return best;
}

bool vietoris_member(const Space& space, const HSet& a, const std::vector<OpenSetSpec>& sets) {
    if (sets.empty()) throw input_error("vietoris_member: need at least one open set");
    for (const Point& p : a.points()) {
        bool covered = false;
        for (const OpenSetSpec& s : sets) {
            if (point_in_open(space, s, p)) {
                covered = true;
                break;
            }
        }
        if (!covered) return false;
    }
    for (const OpenSetSpec& s : sets) {
        if (!hit_member(space, a, s)) return false;
    }
    return true;
}

bool hit_member(const Space& space, const HSet& a, const OpenSetSpec& set) {
    for (const Point& p : a.points()) {
        if (point_in_open(space, set, p)) return true;
    }
    return false;
}

bool plus_member(const Space& space, const HSet& a, const OpenSetSpec& set) {
    for (const Point& p : a.points()) {
        if (!point_in_open(space, set, p)) return false;
    }
    return true;
}

bool plusplus_member(const Space& space, const HSet& a, const OpenSetSpec& set) {
    double margin = std::numeric_limits<double>::infinity();
    for (const Point& p : a.points()) {
        margin = std::min(margin, distance_to_complement(space, set, p));
    }
    return margin > 0.0;
}

HSet induced_map(const Relation& f, const HSet& a, std::size_t cap) {
    std::vector<Point> pts;
    pts.reserve(a.size() * f.arity());
    for (const Point& p : a.points()) {
        for (const MapDescriptor& m : f.maps) pts.push_back(apply_map(f.space, m, p));
    }
    if (pts.size() > cap) {
        throw resource_error("induced_map: image of " + std::to_string(pts.size()) +
                             " points exceeds cap " + std::to_string(cap));
    }
    return HSet::make(f.space, std::move(pts));
}

std::vector<HSet> induced_orbit(const Relation& f, const HSet& a, int steps, std::size_t cap) {
    if (steps < 0) throw input_error("induced_orbit: steps must be >= 0");
    std::vector<HSet> orbit;
    orbit.reserve(static_cast<std::size_t>(steps) + 1);
    orbit.push_back(a);
    for (int n = 1; n <= steps; ++n) {
        orbit.push_back(induced_map(f, orbit.back(), cap));
    }
    return orbit;
}

} // namespace hyperdyn
