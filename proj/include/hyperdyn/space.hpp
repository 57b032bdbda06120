#pragma once

#include "hyperdyn/errors.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace hyperdyn {

inline constexpr double kTau = 6.283185307179586476925286766559; // full turn

enum class SpaceKind { Circle, Interval, Sigma2 };

std::string to_string(SpaceKind kind);

// Angle on the unit circle, kept in [0, tau).
struct CircleAngle {
    double theta = 0.0;
};

// Real in [0, 1].
struct UnitReal {
    double t = 0.0;
};

// Eventually-constant bi-infinite 0/1 sequence. The sequence equals `left` at
// every index < offset, core[i - offset] on the core window, and `right` at
// every index >= offset + core.size().
//
// Canonical form: the first core symbol differs from `left` and the last from
// `right`. An empty core encodes either a constant sequence (left == right,
// offset normalised to 0) or a single step ...LLLRRR... with the step at
// `offset` (left != right); the step shape has no nonempty canonical core, so
// it must be representable this way.
struct BiSeq {
    std::uint8_t left = 0;
    std::uint8_t right = 0;
    std::int64_t offset = 0;
    std::vector<std::uint8_t> core;

    void canonicalize();
    std::uint8_t at(std::int64_t index) const;
    std::int64_t begin_index() const { return offset; }
    std::int64_t end_index() const { return offset + static_cast<std::int64_t>(core.size()); }
    bool is_constant() const { return core.empty() && left == right; }
};

BiSeq make_biseq(std::uint8_t left, std::vector<std::uint8_t> core, std::uint8_t right,
                 std::int64_t offset);
BiSeq constant_biseq(std::uint8_t symbol);
// y with y_i = x_{i+p}; p may be negative.
BiSeq shift_biseq(const BiSeq& x, std::int64_t p);
// Symbols at indices >= from become `symbol`; lower indices unchanged.
BiSeq rewrite_right_tail(const BiSeq& x, std::int64_t from, std::uint8_t symbol);

bool operator==(const BiSeq& a, const BiSeq& b);
bool biseq_less(const BiSeq& a, const BiSeq& b); // lexicographic from the left

using Point = std::variant<CircleAngle, UnitReal, BiSeq>;

SpaceKind kind_of(const Point& p);
bool point_less(const Point& a, const Point& b); // canonical total order per kind

struct Space {
    SpaceKind kind = SpaceKind::Circle;
    double dedup_tolerance = 1e-9; // ignored for Sigma2 (exact equality there)
};

struct Ball {
    Point center;
    double radius = 0.0;
};

// Finite ball cover of the space; all balls share one radius and the cover
// property is verified at construction against an eps/4 net.
struct BallCover {
    std::vector<Ball> balls;
    double radius = 0.0;
};

inline constexpr std::size_t kDefaultNetCap = 1'000'000;

double normalize_angle(double theta);
double circle_distance(double a, double b);
double space_diameter(const Space& space);

double distance(const Space& space, const Point& a, const Point& b);
bool points_equal(const Space& space, const Point& a, const Point& b);

std::size_t epsilon_net_size(const Space& space, double eps);
std::vector<Point> epsilon_net(const Space& space, double eps, std::size_t cap = kDefaultNetCap);
// The canonical net point nearest to p (round to grid / truncate the window).
Point nearest_net_point(const Space& space, double eps, const Point& p);

BallCover ball_cover(const Space& space, double eps, std::size_t cap = kDefaultNetCap);
bool ball_contains(const Space& space, const Ball& ball, const Point& p);

} // namespace hyperdyn
