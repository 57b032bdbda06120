#include "hyperdyn/space.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hyperdyn {

std::string to_string(SpaceKind kind) {
    switch (kind) {
    case SpaceKind::Circle: return "circle";
    case SpaceKind::Interval: return "interval";
    case SpaceKind::Sigma2: return "sigma2";
    }
    return "?";
}

void BiSeq::canonicalize() {
    std::size_t front = 0;
    while (front < core.size() && core[front] == left) ++front;
    if (front > 0) {
        core.erase(core.begin(), core.begin() + static_cast<std::ptrdiff_t>(front));
        offset += static_cast<std::int64_t>(front);
    }
    while (!core.empty() && core.back() == right) core.pop_back();
    if (core.empty() && left == right) offset = 0;
}

std::uint8_t BiSeq::at(std::int64_t index) const {
    if (index < offset) return left;
    const std::int64_t rel = index - offset;
    if (rel < static_cast<std::int64_t>(core.size())) return core[static_cast<std::size_t>(rel)];
    return right;
}

BiSeq make_biseq(std::uint8_t left, std::vector<std::uint8_t> core, std::uint8_t right,
                 std::int64_t offset) {
    for (std::uint8_t s : core) {
        if (s > 1) throw input_error("biseq symbols must be 0 or 1");
    }
    if (left > 1 || right > 1) throw input_error("biseq tail symbols must be 0 or 1");
    BiSeq x{left, right, offset, std::move(core)};
    x.canonicalize();
    return x;
}

BiSeq constant_biseq(std::uint8_t symbol) { return make_biseq(symbol, {}, symbol, 0); }

BiSeq shift_biseq(const BiSeq& x, std::int64_t p) {
    BiSeq y = x;
    y.offset -= p;
    if (y.core.empty() && y.left == y.right) y.offset = 0;
    return y;
}

BiSeq rewrite_right_tail(const BiSeq& x, std::int64_t from, std::uint8_t symbol) {
    std::vector<std::uint8_t> core;
    const std::int64_t lo = std::min(x.begin_index(), from);
    core.reserve(static_cast<std::size_t>(from - lo));
    for (std::int64_t i = lo; i < from; ++i) core.push_back(x.at(i));
    return make_biseq(x.left, std::move(core), symbol, lo);
}

bool operator==(const BiSeq& a, const BiSeq& b) {
    return a.left == b.left && a.right == b.right && a.offset == b.offset && a.core == b.core;
}

bool biseq_less(const BiSeq& a, const BiSeq& b) {
    if (a.left != b.left) return a.left < b.left;
    const std::int64_t lo = std::min(a.begin_index(), b.begin_index());
    const std::int64_t hi = std::max(a.end_index(), b.end_index());
    for (std::int64_t i = lo; i < hi; ++i) {
        const std::uint8_t sa = a.at(i);
        const std::uint8_t sb = b.at(i);
        if (sa != sb) return sa < sb;
    }
    return a.right < b.right;
}

SpaceKind kind_of(const Point& p) {
    if (std::holds_alternative<CircleAngle>(p)) return SpaceKind::Circle;
    if (std::holds_alternative<UnitReal>(p)) return SpaceKind::Interval;
    return SpaceKind::Sigma2;
}

bool point_less(const Point& a, const Point& b) {
    const SpaceKind ka = kind_of(a);
    const SpaceKind kb = kind_of(b);
    if (ka != kb) return static_cast<int>(ka) < static_cast<int>(kb);
    switch (ka) {
    case SpaceKind::Circle: return std::get<CircleAngle>(a).theta < std::get<CircleAngle>(b).theta;
    case SpaceKind::Interval: return std::get<UnitReal>(a).t < std::get<UnitReal>(b).t;
    case SpaceKind::Sigma2: return biseq_less(std::get<BiSeq>(a), std::get<BiSeq>(b));
    }
    return false;
}

double normalize_angle(double theta) {
    double r = std::fmod(theta, kTau);
    if (r < 0.0) r += kTau;
    if (r >= kTau) r = 0.0;
    return r;
}

double circle_distance(double a, double b) {
    double d = std::fabs(normalize_angle(a) - normalize_angle(b));
    if (d > kTau / 2.0) d = kTau - d;
    return d;
}

double space_diameter(const Space& space) {
    switch (space.kind) {
    case SpaceKind::Circle: return kTau / 2.0;
    case SpaceKind::Interval: return 1.0;
    case SpaceKind::Sigma2: return 3.0;
    }
    return 0.0;
}

namespace {

void require_kind(const Space& space, const Point& p, const char* who) {
    if (kind_of(p) != space.kind) {
        throw input_error(std::string(who) + ": point kind " + to_string(kind_of(p)) +
                          " does not match space kind " + to_string(space.kind));
    }
}

// Sum of 2^{-|i|} over integer i in [lo, hi). Closed form, exact for dyadics.
double weight_sum(std::int64_t lo, std::int64_t hi) {
    if (lo >= hi) return 0.0;
    if (hi <= 0) {
        // all indices negative: sum of 2^i for i in [lo, hi)
        return std::ldexp(1.0, static_cast<int>(std::max<std::int64_t>(hi, -1060))) -
               std::ldexp(1.0, static_cast<int>(std::max<std::int64_t>(lo, -1060)));
    }
    if (lo >= 0) {
        // sum of 2^-i for i in [lo, hi) = 2^{1-lo} - 2^{1-hi}
        return std::ldexp(1.0, static_cast<int>(std::max<std::int64_t>(1 - lo, -1060))) -
               std::ldexp(1.0, static_cast<int>(std::max<std::int64_t>(1 - hi, -1060)));
    }
    return weight_sum(lo, 0) + weight_sum(0, hi);
}

double weight_at(std::int64_t i) {
    const std::int64_t a = i < 0 ? i : -i;
    return std::ldexp(1.0, static_cast<int>(std::max<std::int64_t>(a, -1060)));
}

// d(x,y) = sum over i of |x_i - y_i| / 2^{|i|}, evaluated as a finite sum over
// the union of the two core windows plus closed-form tail terms.
double sigma2_distance(const BiSeq& a, const BiSeq& b) {
    const std::int64_t lo = std::min(a.begin_index(), b.begin_index());
    const std::int64_t hi = std::max(a.end_index(), b.end_index());
    double d = 0.0;
    if (a.left != b.left) d += weight_sum(std::numeric_limits<std::int64_t>::min() / 4, lo);
    if (a.right != b.right) d += weight_sum(hi, std::numeric_limits<std::int64_t>::max() / 4);
    for (std::int64_t i = lo; i < hi; ++i) {
        if (a.at(i) != b.at(i)) d += weight_at(i);
    }
    return d;
}

int sigma2_window_halfwidth(double eps) {
    if (!(eps > 0.0)) throw input_error("epsilon_net: eps must be > 0");
    const double raw = std::ceil(std::log2(2.0 / eps)) + 1.0;
    return raw < 0.0 ? 0 : static_cast<int>(raw);
}

} // namespace

double distance(const Space& space, const Point& a, const Point& b) {
    require_kind(space, a, "distance");
    require_kind(space, b, "distance");
    switch (space.kind) {
    case SpaceKind::Circle:
        return circle_distance(std::get<CircleAngle>(a).theta, std::get<CircleAngle>(b).theta);
    case SpaceKind::Interval:
        return std::fabs(std::get<UnitReal>(a).t - std::get<UnitReal>(b).t);
    case SpaceKind::Sigma2:
        return sigma2_distance(std::get<BiSeq>(a), std::get<BiSeq>(b));
    }
    return 0.0;
}

bool points_equal(const Space& space, const Point& a, const Point& b) {
    if (space.kind == SpaceKind::Sigma2) {
        return std::get<BiSeq>(a) == std::get<BiSeq>(b);
    }
    return distance(space, a, b) <= space.dedup_tolerance;
}

std::size_t epsilon_net_size(const Space& space, double eps) {
    if (!(eps > 0.0)) throw input_error("epsilon_net: eps must be > 0");
    switch (space.kind) {
    case SpaceKind::Circle:
        return static_cast<std::size_t>(std::ceil(kTau / eps));
    case SpaceKind::Interval:
        return static_cast<std::size_t>(std::ceil(1.0 / eps)) + 1;
    case SpaceKind::Sigma2: {
        const int half = sigma2_window_halfwidth(eps);
        const int bits = 2 * half + 1;
        if (bits >= 62) return std::numeric_limits<std::size_t>::max();
        return std::size_t{1} << bits;
    }
    }
    return 0;
}

std::vector<Point> epsilon_net(const Space& space, double eps, std::size_t cap) {
    const std::size_t size = epsilon_net_size(space, eps);
    if (size > cap) {
        throw resource_error("epsilon_net: net of " + std::to_string(size) +
                             " points exceeds cap " + std::to_string(cap));
    }
    std::vector<Point> net;
    net.reserve(size);
    switch (space.kind) {
    case SpaceKind::Circle: {
        const double step = kTau / static_cast<double>(size);
        for (std::size_t j = 0; j < size; ++j) {
            net.push_back(CircleAngle{normalize_angle(step * static_cast<double>(j))});
        }
        break;
    }
    case SpaceKind::Interval: {
        const std::size_t m = size - 1;
        for (std::size_t j = 0; j <= m; ++j) {
            net.push_back(UnitReal{static_cast<double>(j) / static_cast<double>(m)});
        }
        break;
    }
    case SpaceKind::Sigma2: {
        const int half = sigma2_window_halfwidth(eps);
        const int bits = 2 * half + 1;
        for (std::size_t assignment = 0; assignment < size; ++assignment) {
            std::vector<std::uint8_t> core(static_cast<std::size_t>(bits));
            for (int b = 0; b < bits; ++b) {
                core[static_cast<std::size_t>(b)] =
                    static_cast<std::uint8_t>((assignment >> b) & 1u);
            }
            const std::uint8_t left = core.front();
            const std::uint8_t right = core.back();
            net.push_back(make_biseq(left, std::move(core), right, -half));
        }
        break;
    }
    }
    return net;
}

Point nearest_net_point(const Space& space, double eps, const Point& p) {
    require_kind(space, p, "nearest_net_point");
    switch (space.kind) {
    case SpaceKind::Circle: {
        const std::size_t m = epsilon_net_size(space, eps);
        const double step = kTau / static_cast<double>(m);
        const auto j = static_cast<std::size_t>(
            std::llround(std::get<CircleAngle>(p).theta / step) % static_cast<long long>(m));
        return CircleAngle{normalize_angle(step * static_cast<double>(j))};
    }
    case SpaceKind::Interval: {
        const std::size_t m = epsilon_net_size(space, eps) - 1;
        const double t = std::get<UnitReal>(p).t;
        const auto j = static_cast<double>(std::llround(t * static_cast<double>(m)));
        return UnitReal{std::clamp(j / static_cast<double>(m), 0.0, 1.0)};
    }
    case SpaceKind::Sigma2: {
        const int half = sigma2_window_halfwidth(eps);
        const auto& x = std::get<BiSeq>(p);
        std::vector<std::uint8_t> core;
        core.reserve(static_cast<std::size_t>(2 * half + 1));
        for (std::int64_t i = -half; i <= half; ++i) core.push_back(x.at(i));
        const std::uint8_t left = core.front();
        const std::uint8_t right = core.back();
        return make_biseq(left, std::move(core), right, -half);
    }
    }
    return p;
}

bool ball_contains(const Space& space, const Ball& ball, const Point& p) {
    return distance(space, ball.center, p) < ball.radius;
}

BallCover ball_cover(const Space& space, double eps, std::size_t cap) {
    if (!(eps > 0.0)) throw input_error("ball_cover: eps must be > 0");
    BallCover cover;
    cover.radius = eps;
    for (const Point& c : epsilon_net(space, eps / 2.0, cap)) {
        cover.balls.push_back(Ball{c, eps});
    }
    // Cover invariant: every point of the eps/4 net lies strictly inside some
    // ball. Checked against the analytically nearest center.
    for (const Point& p : epsilon_net(space, eps / 4.0, cap)) {
        const Point c = nearest_net_point(space, eps / 2.0, p);
        if (!(distance(space, c, p) < eps)) {
            throw input_error("ball_cover: cover invariant failed");
        }
    }
    return cover;
}

} // namespace hyperdyn
