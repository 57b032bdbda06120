#include "hyperdyn/checkers.hpp"

#include "hyperdyn/json_io.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <queue>
#include <random>
#include <set>
#include <string>

namespace hyperdyn {

namespace {

using clock_type = std::chrono::steady_clock;

struct Timer {
    clock_type::time_point start = clock_type::now();
    double ms() const {
        return std::chrono::duration<double, std::milli>(clock_type::now() - start).count();
    }
};

Verdict finish(std::string checker, Status status, json witness, const Bounds& bounds,
               const Timer& timer) {
    Verdict v;
    v.checker = std::move(checker);
    v.status = status;
    v.witness = std::move(witness);
    v.bounds = bounds;
    v.elapsed_ms = timer.ms();
    return v;
}

double signed_wrap(double a) {
    double r = std::fmod(a + kTau / 2.0, kTau);
    if (r < 0.0) r += kTau;
    return r - kTau / 2.0;
}

// ---------------------------------------------------------------------------
// image iteration engine: exact displacement tables for all-rotation and
// all-shift families, frontier iteration otherwise
// ---------------------------------------------------------------------------

struct ImageEngine {
    const Relation* f = nullptr;
    bool rot = false;
    bool shift = false;
    std::vector<std::vector<double>> rot_levels;
    std::vector<std::vector<std::int64_t>> shift_levels;

    ImageEngine(const Relation& rel, int n_max) : f(&rel) {
        if (all_rotations(rel)) {
            rot = true;
            rot_levels = rotation_sum_levels(rel, n_max);
        } else if (all_shift_powers(rel)) {
            shift = true;
            shift_levels = shift_sum_levels(rel, n_max);
        }
    }

    // visit the points of F^n(x); cb returning false aborts and makes the
    // whole call return false
    template <typename Callback>
    bool visit(const Point& x, int n, Callback&& cb) const {
        if (rot) {
            const double theta = std::get<CircleAngle>(x).theta;
            for (double s : rot_levels[static_cast<std::size_t>(n)]) {
                if (!cb(Point{CircleAngle{normalize_angle(theta + s)}})) return false;
            }
            return true;
        }
        if (shift) {
            const auto& seq = std::get<BiSeq>(x);
            for (std::int64_t s : shift_levels[static_cast<std::size_t>(n)]) {
                if (!cb(Point{shift_biseq(seq, s)})) return false;
            }
            return true;
        }
        const HSet img = n_fold_image(*f, n, x);
        for (const Point& p : img.points()) {
            if (!cb(p)) return false;
        }
        return true;
    }
};

// smallest n in [lo, hi] with F^n(x) inside the ball, or nullopt
std::optional<int> first_containment(const ImageEngine& eng, const Point& x, int lo, int hi,
                                     const Ball& ball) {
    const Space& space = eng.f->space;
    if (eng.rot || eng.shift) {
        for (int n = std::max(lo, 1); n <= hi; ++n) {
            const bool inside = eng.visit(
                x, n, [&](const Point& p) { return ball_contains(space, ball, p); });
            if (inside) return n;
        }
        return std::nullopt;
    }
    HSet frontier = image(*eng.f, x);
    for (int n = 1; n <= hi; ++n) {
        if (n > 1) frontier = induced_map(*eng.f, frontier);
        if (n < lo) continue;
        bool inside = true;
        for (const Point& p : frontier.points()) {
            if (!ball_contains(space, ball, p)) {
                inside = false;
                break;
            }
        }
        if (inside) return n;
    }
    return std::nullopt;
}

// per-level containment flags for n = 1..n_max in one pass
std::vector<char> containment_levels(const ImageEngine& eng, const Point& x, int n_max,
                                     const Ball& ball) {
    const Space& space = eng.f->space;
    std::vector<char> inside(static_cast<std::size_t>(n_max) + 1, 0);
    if (eng.rot || eng.shift) {
        for (int n = 1; n <= n_max; ++n) {
            inside[static_cast<std::size_t>(n)] = eng.visit(
                x, n, [&](const Point& p) { return ball_contains(space, ball, p); });
        }
        return inside;
    }
    HSet frontier = image(*eng.f, x);
    for (int n = 1; n <= n_max; ++n) {
        if (n > 1) frontier = induced_map(*eng.f, frontier);
        bool ok = true;
        for (const Point& p : frontier.points()) {
            if (!ball_contains(space, ball, p)) {
                ok = false;
                break;
            }
        }
        inside[static_cast<std::size_t>(n)] = ok;
    }
    return inside;
}

// smallest n <= n_max with min_{y in F^n(x)} d(x,y) within tol (exact on Sigma2)
std::optional<int> first_return(const ImageEngine& eng, const Point& x, int n_max, double tol) {
    const Space& space = eng.f->space;
    const bool exact = space.kind == SpaceKind::Sigma2;
    for (int n = 1; n <= n_max; ++n) {
        bool found = false;
        eng.visit(x, n, [&](const Point& p) {
            const bool close = exact ? points_equal(space, x, p) : distance(space, x, p) <= tol;
            if (close) {
                found = true;
                return false;
            }
            return true;
        });
        if (found) return n;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// rotation displacement engine over a uniform circle cover
// ---------------------------------------------------------------------------

std::vector<long long> quantize_level(const std::vector<double>& level) {
    const double grid = 1e-9;
    const long long tau_key = std::llround(kTau / grid);
    std::vector<long long> key;
    key.reserve(level.size());
    for (double s : level) {
        long long k = std::llround(s / grid);
        if (k >= tau_key) k -= tau_key;
        key.push_back(k);
    }
    std::sort(key.begin(), key.end());
    return key;
}

bool sum_sets_equal(const std::vector<double>& a, const std::vector<double>& b, double tol) {
    if (a.size() != b.size()) return false;
    auto covered = [&](const std::vector<double>& xs, const std::vector<double>& ys) {
        for (double x : xs) {
            bool hit = false;
            for (double y : ys) {
                if (circle_distance(x, y) <= tol) {
                    hit = true;
                    break;
                }
            }
            if (!hit) return false;
        }
        return true;
    };
    return covered(a, b) && covered(b, a);
}

struct RotationCoverEngine {
    const Relation* f = nullptr;
    Bounds bounds;
    BallCover cover;
    int m = 0;
    std::vector<double> centers;
    std::vector<double> deltas; // class j: center_j - center_0, wrapped
    std::vector<std::vector<double>> levels;
    int cycle_start = -1; // level indices with levels[start] == levels[start+period]
    int cycle_period = -1;
    // hits[n][j]: some sum at level n lands within 2*radius of delta_j
    std::vector<std::vector<char>> hits;

    RotationCoverEngine(const Relation& rel, const Bounds& b) : f(&rel), bounds(b) {
        cover = ball_cover(rel.space, b.cover_eps);
        m = static_cast<int>(cover.balls.size());
        centers.reserve(static_cast<std::size_t>(m));
        for (const Ball& ball : cover.balls) {
            centers.push_back(std::get<CircleAngle>(ball.center).theta);
        }
        deltas.reserve(static_cast<std::size_t>(m));
        for (int j = 0; j < m; ++j) {
            deltas.push_back(normalize_angle(centers[static_cast<std::size_t>(j)] - centers[0]));
        }
        levels = rotation_sum_levels(rel, b.n_max);
        detect_cycle();
    }

    void detect_cycle() {
        std::map<std::vector<long long>, int> seen;
        for (int n = 1; n <= bounds.n_max; ++n) {
            const auto& level = levels[static_cast<std::size_t>(n)];
            auto key = quantize_level(level);
            auto it = seen.find(key);
            if (it != seen.end() &&
                sum_sets_equal(level, levels[static_cast<std::size_t>(it->second)], 1e-9)) {
                cycle_start = it->second;
                cycle_period = n - it->second;
                return;
            }
            seen.emplace(std::move(key), n);
        }
    }

    // centers form a uniform grid, so per-sum marking only needs a window
    void ensure_hits() {
        if (!hits.empty()) return;
        const double two_r = 2.0 * cover.radius;
        const double step = kTau / static_cast<double>(m);
        hits.assign(static_cast<std::size_t>(bounds.n_max) + 1,
                    std::vector<char>(static_cast<std::size_t>(m), 0));
        for (int n = 1; n <= bounds.n_max; ++n) {
            auto& row = hits[static_cast<std::size_t>(n)];
            for (double s : levels[static_cast<std::size_t>(n)]) {
                const auto lo = static_cast<long long>(std::floor((s - two_r) / step)) - 1;
                const auto hi = static_cast<long long>(std::ceil((s + two_r) / step)) + 1;
                for (long long j = lo; j <= hi; ++j) {
                    const int jj = static_cast<int>(((j % m) + m) % m);
                    if (!row[static_cast<std::size_t>(jj)] &&
                        circle_distance(deltas[static_cast<std::size_t>(jj)], s) < two_r) {
                        row[static_cast<std::size_t>(jj)] = 1;
                    }
                }
            }
        }
    }

    bool cycle_within_bounds() const {
        return cycle_start >= 0 && cycle_start + cycle_period <= bounds.n_max;
    }

    // point x in ball u with x + s inside ball v, for a sum s hitting the class
    std::optional<json> hit_witness(int u, int v, int n) const {
        const double r = cover.radius;
        const double delta =
            normalize_angle(centers[static_cast<std::size_t>(v)] - centers[static_cast<std::size_t>(u)]);
        for (double s : levels[static_cast<std::size_t>(n)]) {
            const double g = signed_wrap(delta - s);
            if (std::fabs(g) < 2.0 * r) {
                const double x = normalize_angle(centers[static_cast<std::size_t>(u)] + g / 2.0);
                return json{{"u", u}, {"v", v}, {"n", n},
                            {"x", point_to_json(CircleAngle{x})}};
            }
        }
        return std::nullopt;
    }

    // a pair of sums at level n separated by more than threshold, if any; for
    // each point the farthest set member sits next to its antipode in sorted
    // order, so two candidates per point suffice
    static std::optional<std::pair<double, double>> separated_pair(
        const std::vector<double>& level, double threshold) {
        const std::size_t k = level.size();
        if (k < 2) return std::nullopt;
        for (std::size_t i = 0; i < k; ++i) {
            const double anti = normalize_angle(level[i] + kTau / 2.0);
            const auto it = std::lower_bound(level.begin(), level.end(), anti);
            const std::size_t j1 = it == level.end() ? 0 : static_cast<std::size_t>(it - level.begin());
            const std::size_t j0 = (j1 + k - 1) % k;
            for (std::size_t j : {j0, j1 % k}) {
                if (j != i && circle_distance(level[i], level[j]) > threshold) {
                    return std::make_pair(level[i], level[j]);
                }
            }
        }
        return std::nullopt;
    }

    // witness pairs (s1, s2) per level with separation > threshold, when the
    // spread certificate holds for every level
    std::optional<json> spread_certificate(double threshold) const {
        json per_level = json::array();
        for (int n = 1; n <= bounds.n_max; ++n) {
            const auto pair = separated_pair(levels[static_cast<std::size_t>(n)], threshold);
            if (!pair) return std::nullopt;
            per_level.push_back(json::array({n, pair->first, pair->second}));
        }
        return per_level;
    }

    double min_separation(int j) const {
        double best = std::numeric_limits<double>::infinity();
        for (int n = 1; n <= bounds.n_max; ++n) {
            for (double s : levels[static_cast<std::size_t>(n)]) {
                best = std::min(best, circle_distance(deltas[static_cast<std::size_t>(j)], s));
            }
        }
        return best;
    }
};

// ---------------------------------------------------------------------------
// sampled reach graph engine
// ---------------------------------------------------------------------------

inline constexpr int kGraphCoverCap = 4096;

struct GraphEngine {
    const Relation* f = nullptr;
    Bounds bounds;
    BallCover cover;
    std::vector<Point> net;
    std::vector<std::vector<int>> samples;
    ReachGraph graph;
    int m = 0;

    GraphEngine(const Relation& rel, const Bounds& b) : f(&rel), bounds(b) {
        cover = ball_cover(rel.space, b.cover_eps);
        m = static_cast<int>(cover.balls.size());
        if (m > kGraphCoverCap) {
            throw resource_error("reach graph: cover of " + std::to_string(m) +
                                 " balls exceeds the graph cap " + std::to_string(kGraphCoverCap));
        }
        if (all_table_maps(rel)) {
            net = std::get<TableMap>(rel.maps.front()).points;
        } else {
            net = epsilon_net(rel.space, b.net_eps);
        }
        samples.resize(static_cast<std::size_t>(m));
        for (int i = 0; i < static_cast<int>(net.size()); ++i) {
            for (int u = 0; u < m; ++u) {
                if (ball_contains(rel.space, cover.balls[static_cast<std::size_t>(u)],
                                  net[static_cast<std::size_t>(i)])) {
                    samples[static_cast<std::size_t>(u)].push_back(i);
                }
            }
        }
        graph = build_reach_graph(rel, cover, net);
    }

    // shortest walk lengths (>= 1 step) from u to every node; -1 unreachable
    std::vector<int> bfs(int u) const {
        std::vector<int> dist(static_cast<std::size_t>(m), -1);
        std::queue<int> q;
        for (int v : graph.adjacency[static_cast<std::size_t>(u)]) {
            if (dist[static_cast<std::size_t>(v)] < 0) {
                dist[static_cast<std::size_t>(v)] = 1;
                q.push(v);
            }
        }
        while (!q.empty()) {
            const int a = q.front();
            q.pop();
            for (int v : graph.adjacency[static_cast<std::size_t>(a)]) {
                if (dist[static_cast<std::size_t>(v)] < 0) {
                    dist[static_cast<std::size_t>(v)] = dist[static_cast<std::size_t>(a)] + 1;
                    q.push(v);
                }
            }
        }
        return dist;
    }

    // reach-set sequence R_1, R_2, ... from u with cycle detection
    struct ReachSequence {
        std::vector<std::vector<char>> sets; // sets[n][v], n from 1
        int cycle_start = -1;                // 1-based level indices
        int cycle_period = -1;
    };

    ReachSequence reach_sequence(int u) const {
        ReachSequence rs;
        std::map<std::vector<char>, int> seen;
        std::vector<char> cur(static_cast<std::size_t>(m), 0);
        for (int v : graph.adjacency[static_cast<std::size_t>(u)]) {
            cur[static_cast<std::size_t>(v)] = 1;
        }
        for (int n = 1; n <= bounds.n_max; ++n) {
            auto it = seen.find(cur);
            if (it != seen.end() && rs.cycle_start < 0) {
                rs.cycle_start = it->second;
                rs.cycle_period = n - it->second;
            }
            if (rs.cycle_start < 0) seen.emplace(cur, n);
            rs.sets.push_back(cur);
            std::vector<char> next(static_cast<std::size_t>(m), 0);
            for (int a = 0; a < m; ++a) {
                if (!cur[static_cast<std::size_t>(a)]) continue;
                for (int v : graph.adjacency[static_cast<std::size_t>(a)]) {
                    next[static_cast<std::size_t>(v)] = 1;
                }
            }
            cur = std::move(next);
        }
        return rs;
    }

    json edges_witness() const {
        json edges = json::array();
        for (const ReachGraph::Edge& e : graph.edges) {
            edges.push_back(json{{"from", e.from},
                                 {"to", e.to},
                                 {"map", e.map_index},
                                 {"sample", point_to_json(e.sample)}});
        }
        return edges;
    }
};

// cover + net with lazily computed per-ball samples; the pointwise checkers
// need no edges, and lazy samples keep first-failure short circuits cheap on
// large covers
struct CoverSampler {
    const Relation* f = nullptr;
    Bounds bounds;
    BallCover cover;
    std::vector<Point> net;
    int m = 0;
    std::vector<std::vector<int>> samples;
    std::vector<char> samples_ready;

    CoverSampler(const Relation& rel, const Bounds& b) : f(&rel), bounds(b) {
        cover = ball_cover(rel.space, b.cover_eps);
        m = static_cast<int>(cover.balls.size());
        if (all_table_maps(rel)) {
            net = std::get<TableMap>(rel.maps.front()).points;
        } else {
            net = epsilon_net(rel.space, b.net_eps);
        }
        samples.resize(static_cast<std::size_t>(m));
        samples_ready.assign(static_cast<std::size_t>(m), 0);
    }

    const std::vector<int>& ball_samples(int u) {
        if (!samples_ready[static_cast<std::size_t>(u)]) {
            auto& list = samples[static_cast<std::size_t>(u)];
            for (int i = 0; i < static_cast<int>(net.size()); ++i) {
                if (ball_contains(f->space, cover.balls[static_cast<std::size_t>(u)],
                                  net[static_cast<std::size_t>(i)])) {
                    list.push_back(i);
                }
            }
            samples_ready[static_cast<std::size_t>(u)] = 1;
        }
        return samples[static_cast<std::size_t>(u)];
    }
};

json pair_json(int u, int v) { return json::array({u, v}); }

// ---------------------------------------------------------------------------

Ball ith_ball(const BallCover& cover, int i) {
    return cover.balls[static_cast<std::size_t>(i)];
}

} // namespace

void validate_bounds(const Bounds& bounds) {
    if (bounds.n_max < 1) throw input_error("bounds: n_max must be >= 1");
    if (!(bounds.cover_eps > 0.0)) throw input_error("bounds: cover_eps must be > 0");
    if (!(bounds.net_eps > 0.0)) throw input_error("bounds: net_eps must be > 0");
    if (!(bounds.tol > 0.0)) throw input_error("bounds: tol must be > 0");
}

std::string to_string(Status status) {
    switch (status) {
    case Status::ConfirmedWithinBounds: return "confirmed_within_bounds";
    case Status::RefutedWithinBounds: return "refuted_within_bounds";
    case Status::Inconclusive: return "inconclusive";
    }
    return "?";
}

ReachGraph build_reach_graph(const Relation& f, const BallCover& cover,
                             const std::vector<Point>& net) {
    const int m = static_cast<int>(cover.balls.size());
    ReachGraph g;
    g.nodes = m;
    g.adjacency.assign(static_cast<std::size_t>(m), {});
    std::set<std::tuple<int, int, int>> have; // (from, map, to)
    for (int u = 0; u < m; ++u) {
        for (const Point& p : net) {
            if (!ball_contains(f.space, cover.balls[static_cast<std::size_t>(u)], p)) continue;
            for (int i = 0; i < static_cast<int>(f.arity()); ++i) {
                Point y;
                try {
                    y = apply_map(f.space, f.maps[static_cast<std::size_t>(i)], p);
                } catch (const input_error&) {
                    continue; // table maps are partial off their net
                }
                for (int v = 0; v < m; ++v) {
                    if (!ball_contains(f.space, cover.balls[static_cast<std::size_t>(v)], y)) {
                        continue;
                    }
                    if (have.insert({u, i, v}).second) {
                        g.edges.push_back(ReachGraph::Edge{u, v, i, p});
                        g.adjacency[static_cast<std::size_t>(u)].push_back(v);
                    }
                }
            }
        }
    }
    for (auto& adj : g.adjacency) {
        std::sort(adj.begin(), adj.end());
        adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
    }
    return g;
}

// ---------------------------------------------------------------------------
// transitivity
// ---------------------------------------------------------------------------

Verdict check_transitivity(const Relation& f, const Bounds& bounds) {
    Timer timer;
    validate_bounds(bounds);

    if (all_rotations(f)) {
        RotationCoverEngine eng(f, bounds);
        eng.ensure_hits();
        std::vector<int> first_n(static_cast<std::size_t>(eng.m), -1);
        for (int n = 1; n <= bounds.n_max; ++n) {
            for (int j = 0; j < eng.m; ++j) {
                if (first_n[static_cast<std::size_t>(j)] < 0 &&
                    eng.hits[static_cast<std::size_t>(n)][static_cast<std::size_t>(j)]) {
                    first_n[static_cast<std::size_t>(j)] = n;
                }
            }
        }
        int missing = -1;
        for (int j = 0; j < eng.m; ++j) {
            if (first_n[static_cast<std::size_t>(j)] < 0) {
                missing = j;
                break;
            }
        }
        if (missing < 0) {
            json classes = json::array();
            for (int j = 0; j < eng.m; ++j) {
                auto w = eng.hit_witness(0, j, first_n[static_cast<std::size_t>(j)]);
                classes.push_back(*w);
            }
            json witness{{"engine", "rotation-exact"},
                         {"cover_size", eng.m},
                         {"classes", classes}};
            return finish("transitivity", Status::ConfirmedWithinBounds, witness, bounds, timer);
        }
        if (eng.cycle_within_bounds()) {
            json witness{{"engine", "rotation-exact"},
                         {"pair", pair_json(0, missing)},
                         {"cycle_start", eng.cycle_start},
                         {"cycle_period", eng.cycle_period},
                         {"levels_checked", bounds.n_max}};
            return finish("transitivity", Status::RefutedWithinBounds, witness, bounds, timer);
        }
        json witness{{"engine", "rotation-exact"}, {"pair", pair_json(0, missing)}};
        return finish("transitivity", Status::Inconclusive, witness, bounds, timer);
    }

    GraphEngine eng(f, bounds);
    int bad_u = -1, bad_v = -1;
    bool refuted = false;
    for (int u = 0; u < eng.m && bad_u < 0; ++u) {
        const std::vector<int> dist = eng.bfs(u);
        for (int v = 0; v < eng.m; ++v) {
            const int d = dist[static_cast<std::size_t>(v)];
            if (d < 0 || d > bounds.n_max) {
                bad_u = u;
                bad_v = v;
                refuted = d < 0;
                break;
            }
        }
    }
    if (bad_u < 0) {
        json witness{{"engine", "sampled-graph"},
                     {"cover_size", eng.m},
                     {"edges", eng.edges_witness()}};
        return finish("transitivity", Status::ConfirmedWithinBounds, witness, bounds, timer);
    }
    if (refuted) {
        const std::vector<int> dist = eng.bfs(bad_u);
        int reachable = 0;
        for (int v = 0; v < eng.m; ++v) {
            if (dist[static_cast<std::size_t>(v)] >= 0) ++reachable;
        }
        json witness{{"engine", "sampled-graph"},
                     {"pair", pair_json(bad_u, bad_v)},
                     {"reachable_count", reachable}};
        return finish("transitivity", Status::RefutedWithinBounds, witness, bounds, timer);
    }
    json witness{{"engine", "sampled-graph"}, {"pair", pair_json(bad_u, bad_v)}};
    return finish("transitivity", Status::Inconclusive, witness, bounds, timer);
}

// ---------------------------------------------------------------------------
// super-transitivity
// ---------------------------------------------------------------------------

namespace {

// per-pair pointwise containment search shared by the generic engines
struct PairSearchResult {
    bool found = false;
    int n = 0;
    Point x;
};

PairSearchResult search_pair_containment(const ImageEngine& eng,
                                         const std::vector<Point>& net,
                                         const std::vector<int>& samples, const Ball& target,
                                         int n_max) {
    PairSearchResult best;
    for (int idx : samples) {
        const Point& x = net[static_cast<std::size_t>(idx)];
        const int limit = best.found ? best.n - 1 : n_max;
        if (limit < 1) break; // nothing smaller than the current best exists
        const auto n = first_containment(eng, x, 1, limit, target);
        if (n && (!best.found || *n < best.n)) {
            best.found = true;
            best.n = *n;
            best.x = x;
            if (best.n == 1) break;
        }
    }
    return best;
}

} // namespace

Verdict check_super_transitivity(const Relation& f, const Bounds& bounds) {
    Timer timer;
    validate_bounds(bounds);

    if (f.arity() == 1) {
        // F^n(x) is a single point, so containment and intersection agree and
        // the transitivity search already carries a pointwise witness.
        Verdict inner = check_transitivity(f, bounds);
        inner.checker = "super_transitivity";
        inner.witness["singleton_delegation"] = true;
        inner.elapsed_ms = timer.ms();
        return inner;
    }

    if (all_rotations(f)) {
        RotationCoverEngine eng(f, bounds);
        const double two_r = 2.0 * eng.cover.radius;
        if (auto cert = eng.spread_certificate(two_r)) {
            json witness{{"engine", "rotation-exact"},
                         {"certificate", "image-spread"},
                         {"threshold", two_r},
                         {"pair", pair_json(0, eng.m / 2)},
                         {"levels", *cert}};
            return finish("super_transitivity", Status::RefutedWithinBounds, witness, bounds,
                          timer);
        }
        // sampled pointwise search per center-difference class
        const std::vector<Point> net = epsilon_net(f.space, bounds.net_eps);
        std::vector<int> base_samples;
        for (int i = 0; i < static_cast<int>(net.size()); ++i) {
            if (ball_contains(f.space, ith_ball(eng.cover, 0), net[static_cast<std::size_t>(i)])) {
                base_samples.push_back(i);
            }
        }
        ImageEngine img(f, bounds.n_max);
        json pairs = json::array();
        for (int j = 0; j < eng.m; ++j) {
            const auto got = search_pair_containment(img, net, base_samples,
                                                     ith_ball(eng.cover, j), bounds.n_max);
            if (!got.found) {
                const double sep = eng.min_separation(j);
                if (sep >= two_r) {
                    json witness{{"engine", "rotation-exact"},
                                 {"certificate", "arc-separation"},
                                 {"pair", pair_json(0, j)},
                                 {"min_separation", sep},
                                 {"threshold", two_r}};
                    return finish("super_transitivity", Status::RefutedWithinBounds, witness,
                                  bounds, timer);
                }
                json witness{{"engine", "rotation-exact"}, {"pair", pair_json(0, j)}};
                return finish("super_transitivity", Status::Inconclusive, witness, bounds, timer);
            }
            pairs.push_back(json{{"u", 0},
                                 {"v", j},
                                 {"n", got.n},
                                 {"x", point_to_json(got.x)}});
        }
        json witness{{"engine", "rotation-exact"}, {"cover_size", eng.m}, {"pairs", pairs}};
        return finish("super_transitivity", Status::ConfirmedWithinBounds, witness, bounds, timer);
    }

    CoverSampler cov(f, bounds);
    ImageEngine img(f, bounds.n_max);
    json pairs = json::array();
    for (int u = 0; u < cov.m; ++u) {
        for (int v = 0; v < cov.m; ++v) {
            const auto got = search_pair_containment(img, cov.net, cov.ball_samples(u),
                                                     ith_ball(cov.cover, v), bounds.n_max);
            if (!got.found) {
                json witness{{"engine", "sampled-pointwise"},
                             {"pair", pair_json(u, v)},
                             {"samples_tried", cov.ball_samples(u).size()}};
                return finish("super_transitivity", Status::Inconclusive, witness, bounds, timer);
            }
            pairs.push_back(json{{"u", u}, {"v", v}, {"n", got.n}, {"x", point_to_json(got.x)}});
        }
    }
    json witness{{"engine", "sampled-pointwise"}, {"cover_size", cov.m}, {"pairs", pairs}};
    return finish("super_transitivity", Status::ConfirmedWithinBounds, witness, bounds, timer);
}

// ---------------------------------------------------------------------------
// weak mixing
// ---------------------------------------------------------------------------

Verdict check_weak_mixing(const Relation& f, const Bounds& bounds) {
    Timer timer;
    validate_bounds(bounds);

    if (all_rotations(f)) {
        RotationCoverEngine eng(f, bounds);
        eng.ensure_hits();
        const auto idx = [&](int j1, int j2) {
            return static_cast<std::size_t>(j1) * static_cast<std::size_t>(eng.m) +
                   static_cast<std::size_t>(j2);
        };
        std::vector<int> joint_n(static_cast<std::size_t>(eng.m) * static_cast<std::size_t>(eng.m),
                                 -1);
        for (int n = 1; n <= bounds.n_max; ++n) {
            const auto& row = eng.hits[static_cast<std::size_t>(n)];
            for (int j1 = 0; j1 < eng.m; ++j1) {
                if (!row[static_cast<std::size_t>(j1)]) continue;
                for (int j2 = 0; j2 < eng.m; ++j2) {
                    if (row[static_cast<std::size_t>(j2)] && joint_n[idx(j1, j2)] < 0) {
                        joint_n[idx(j1, j2)] = n;
                    }
                }
            }
        }
        int miss1 = -1, miss2 = -1;
        for (int j1 = 0; j1 < eng.m && miss1 < 0; ++j1) {
            for (int j2 = 0; j2 < eng.m; ++j2) {
                if (joint_n[idx(j1, j2)] < 0) {
                    miss1 = j1;
                    miss2 = j2;
                    break;
                }
            }
        }
        if (miss1 < 0) {
            json classes = json::array();
            for (int j1 = 0; j1 < eng.m; ++j1) {
                for (int j2 = 0; j2 < eng.m; ++j2) {
                    const int n = joint_n[idx(j1, j2)];
                    auto w1 = eng.hit_witness(0, j1, n);
                    auto w2 = eng.hit_witness(0, j2, n);
                    classes.push_back(json{{"d1", j1},
                                           {"d2", j2},
                                           {"n", n},
                                           {"x1", (*w1)["x"]},
                                           {"x2", (*w2)["x"]}});
                }
            }
            json witness{{"engine", "rotation-exact"}, {"cover_size", eng.m},
                         {"classes", classes}};
            return finish("weak_mixing", Status::ConfirmedWithinBounds, witness, bounds, timer);
        }
        if (eng.cycle_within_bounds()) {
            json witness{{"engine", "rotation-exact"},
                         {"class", pair_json(miss1, miss2)},
                         {"tuple", json::array({pair_json(0, miss1), pair_json(0, miss2)})},
                         {"cycle_start", eng.cycle_start},
                         {"cycle_period", eng.cycle_period}};
            return finish("weak_mixing", Status::RefutedWithinBounds, witness, bounds, timer);
        }
        json witness{{"engine", "rotation-exact"}, {"class", pair_json(miss1, miss2)}};
        return finish("weak_mixing", Status::Inconclusive, witness, bounds, timer);
    }

    GraphEngine eng(f, bounds);
    if (eng.m > kProductCoverCap) {
        throw resource_error("weak mixing: cover of " + std::to_string(eng.m) +
                             " balls exceeds the product cap " +
                             std::to_string(kProductCoverCap));
    }
    const int m = eng.m;
    const auto pidx = [m](int a, int b) {
        return static_cast<std::size_t>(a) * static_cast<std::size_t>(m) +
               static_cast<std::size_t>(b);
    };
    // BFS on the product graph from every product source
    bool inconclusive_found = false;
    json fail_tuple;
    for (int u1 = 0; u1 < m; ++u1) {
        for (int u2 = 0; u2 < m; ++u2) {
            std::vector<int> dist(static_cast<std::size_t>(m) * static_cast<std::size_t>(m), -1);
            std::queue<std::pair<int, int>> q;
            for (int v1 : eng.graph.adjacency[static_cast<std::size_t>(u1)]) {
                for (int v2 : eng.graph.adjacency[static_cast<std::size_t>(u2)]) {
                    if (dist[pidx(v1, v2)] < 0) {
                        dist[pidx(v1, v2)] = 1;
                        q.emplace(v1, v2);
                    }
                }
            }
            while (!q.empty()) {
                const auto [a, b] = q.front();
                q.pop();
                const int d = dist[pidx(a, b)];
                for (int v1 : eng.graph.adjacency[static_cast<std::size_t>(a)]) {
                    for (int v2 : eng.graph.adjacency[static_cast<std::size_t>(b)]) {
                        if (dist[pidx(v1, v2)] < 0) {
                            dist[pidx(v1, v2)] = d + 1;
                            q.emplace(v1, v2);
                        }
                    }
                }
            }
            for (int v1 = 0; v1 < m && fail_tuple.is_null(); ++v1) {
                for (int v2 = 0; v2 < m; ++v2) {
                    const int d = dist[pidx(v1, v2)];
                    if (d < 0 || d > bounds.n_max) {
                        fail_tuple = json::array({pair_json(u1, v1), pair_json(u2, v2)});
                        inconclusive_found = d >= 0;
                        break;
                    }
                }
            }
            if (!fail_tuple.is_null()) break;
        }
        if (!fail_tuple.is_null()) break;
    }
    if (fail_tuple.is_null()) {
        json witness{{"engine", "sampled-graph"},
                     {"cover_size", m},
                     {"edges", eng.edges_witness()},
                     {"note", "product reachability covers every pair of cover pairs"}};
        return finish("weak_mixing", Status::ConfirmedWithinBounds, witness, bounds, timer);
    }
    if (!inconclusive_found) {
        json witness{{"engine", "sampled-graph"}, {"tuple", fail_tuple}};
        return finish("weak_mixing", Status::RefutedWithinBounds, witness, bounds, timer);
    }
    json witness{{"engine", "sampled-graph"}, {"tuple", fail_tuple}};
    return finish("weak_mixing", Status::Inconclusive, witness, bounds, timer);
}

// ---------------------------------------------------------------------------
// super weak mixing
// ---------------------------------------------------------------------------

Verdict check_super_weak_mixing(const Relation& f, const Bounds& bounds) {
    Timer timer;
    validate_bounds(bounds);

    if (all_rotations(f) && f.arity() >= 2) {
        RotationCoverEngine eng(f, bounds);
        const double two_r = 2.0 * eng.cover.radius;
        if (auto cert = eng.spread_certificate(two_r)) {
            json witness{{"engine", "rotation-exact"},
                         {"certificate", "image-spread"},
                         {"threshold", two_r},
                         {"levels", *cert}};
            return finish("super_weak_mixing", Status::RefutedWithinBounds, witness, bounds,
                          timer);
        }
    }

    // pointwise containment tables per cover pair, then the joint-n sweep
    CoverSampler cov(f, bounds);
    if (cov.m > kProductCoverCap) {
        throw resource_error("super weak mixing: cover of " + std::to_string(cov.m) +
                             " balls exceeds the product cap " +
                             std::to_string(kProductCoverCap));
    }
    ImageEngine img(f, bounds.n_max);
    const int m = cov.m;
    const auto pidx = [m](int a, int b) {
        return static_cast<std::size_t>(a) * static_cast<std::size_t>(m) +
               static_cast<std::size_t>(b);
    };
    const std::size_t words = (static_cast<std::size_t>(bounds.n_max) + 64) / 64;
    std::vector<std::vector<std::uint64_t>> masks(
        static_cast<std::size_t>(m) * static_cast<std::size_t>(m),
        std::vector<std::uint64_t>(words, 0));
    json containments = json::array();
    for (int u = 0; u < m; ++u) {
        for (int v = 0; v < m; ++v) {
            json entries = json::array();
            for (int idx : cov.ball_samples(u)) {
                const Point& x = cov.net[static_cast<std::size_t>(idx)];
                const auto levels = containment_levels(img, x, bounds.n_max,
                                                       ith_ball(cov.cover, v));
                for (int n = 1; n <= bounds.n_max; ++n) {
                    if (!levels[static_cast<std::size_t>(n)]) continue;
                    auto& mask = masks[pidx(u, v)];
                    const auto word = static_cast<std::size_t>(n - 1) / 64;
                    const auto bit = static_cast<std::size_t>(n - 1) % 64;
                    if (!(mask[word] >> bit & 1u)) {
                        mask[word] |= std::uint64_t{1} << bit;
                        entries.push_back(json{{"n", n}, {"x", point_to_json(x)}});
                    }
                }
            }
            if (!entries.empty()) {
                containments.push_back(json{{"u", u}, {"v", v}, {"witnesses", entries}});
            }
        }
    }
    for (int u1 = 0; u1 < m; ++u1) {
        for (int v1 = 0; v1 < m; ++v1) {
            for (int u2 = 0; u2 < m; ++u2) {
                for (int v2 = 0; v2 < m; ++v2) {
                    const auto& a = masks[pidx(u1, v1)];
                    const auto& b = masks[pidx(u2, v2)];
                    bool joint = false;
                    for (std::size_t w = 0; w < words; ++w) {
                        if (a[w] & b[w]) {
                            joint = true;
                            break;
                        }
                    }
                    if (!joint) {
                        json witness{{"engine", "sampled-pointwise"},
                                     {"tuple", json::array({pair_json(u1, v1),
                                                            pair_json(u2, v2)})}};
                        return finish("super_weak_mixing", Status::Inconclusive, witness, bounds,
                                      timer);
                    }
                }
            }
        }
    }
    json witness{{"engine", "sampled-pointwise"},
                 {"cover_size", m},
                 {"containments", containments}};
    return finish("super_weak_mixing", Status::ConfirmedWithinBounds, witness, bounds, timer);
}

// ---------------------------------------------------------------------------
// topological mixing
// ---------------------------------------------------------------------------

namespace {

// smallest K with hits true on all of [K, n_max]; -1 when even the last level
// misses
int tail_start(const std::vector<char>& hit_by_level, int n_max) {
    int k = -1;
    for (int n = n_max; n >= 1; --n) {
        if (!hit_by_level[static_cast<std::size_t>(n)]) break;
        k = n;
    }
    return k;
}

int half_window_limit(int n_max) { return n_max - n_max / 2 + 1; }

} // namespace

Verdict check_topological_mixing(const Relation& f, const Bounds& bounds) {
    Timer timer;
    validate_bounds(bounds);

    if (all_rotations(f)) {
        RotationCoverEngine eng(f, bounds);
        eng.ensure_hits();
        // certified recurring misses defeat any bounded tail window
        if (eng.cycle_within_bounds()) {
            for (int j = 0; j < eng.m; ++j) {
                for (int n = eng.cycle_start; n < eng.cycle_start + eng.cycle_period; ++n) {
                    if (!eng.hits[static_cast<std::size_t>(n)][static_cast<std::size_t>(j)]) {
                        json witness{{"engine", "rotation-exact"},
                                     {"pair", pair_json(0, j)},
                                     {"cycle_start", eng.cycle_start},
                                     {"cycle_period", eng.cycle_period},
                                     {"miss_level", n}};
                        return finish("topological_mixing", Status::RefutedWithinBounds, witness,
                                      bounds, timer);
                    }
                }
            }
        }
        json classes = json::array();
        for (int j = 0; j < eng.m; ++j) {
            std::vector<char> hit(static_cast<std::size_t>(bounds.n_max) + 1, 0);
            for (int n = 1; n <= bounds.n_max; ++n) {
                hit[static_cast<std::size_t>(n)] =
                    eng.hits[static_cast<std::size_t>(n)][static_cast<std::size_t>(j)];
            }
            const int k = tail_start(hit, bounds.n_max);
            if (k < 0 || k > half_window_limit(bounds.n_max)) {
                json witness{{"engine", "rotation-exact"}, {"pair", pair_json(0, j)}};
                return finish("topological_mixing", Status::Inconclusive, witness, bounds, timer);
            }
            classes.push_back(json{{"d", j}, {"K", k}});
        }
        json witness{{"engine", "rotation-exact"}, {"cover_size", eng.m}, {"classes", classes}};
        return finish("topological_mixing", Status::ConfirmedWithinBounds, witness, bounds, timer);
    }

    GraphEngine eng(f, bounds);
    json pairs = json::array();
    for (int u = 0; u < eng.m; ++u) {
        const auto rs = eng.reach_sequence(u);
        if (rs.cycle_start >= 0) {
            for (int v = 0; v < eng.m; ++v) {
                for (int n = rs.cycle_start; n < rs.cycle_start + rs.cycle_period; ++n) {
                    if (!rs.sets[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(v)]) {
                        json witness{{"engine", "sampled-graph"},
                                     {"pair", pair_json(u, v)},
                                     {"cycle_start", rs.cycle_start},
                                     {"cycle_period", rs.cycle_period},
                                     {"miss_level", n}};
                        return finish("topological_mixing", Status::RefutedWithinBounds, witness,
                                      bounds, timer);
                    }
                }
            }
        }
        for (int v = 0; v < eng.m; ++v) {
            std::vector<char> hit(static_cast<std::size_t>(bounds.n_max) + 1, 0);
            for (int n = 1; n <= bounds.n_max; ++n) {
                hit[static_cast<std::size_t>(n)] =
                    rs.sets[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(v)];
            }
            const int k = tail_start(hit, bounds.n_max);
            if (k < 0 || k > half_window_limit(bounds.n_max)) {
                json witness{{"engine", "sampled-graph"}, {"pair", pair_json(u, v)}};
                return finish("topological_mixing", Status::Inconclusive, witness, bounds, timer);
            }
            pairs.push_back(json{{"u", u}, {"v", v}, {"K", k}});
        }
    }
    json witness{{"engine", "sampled-graph"},
                 {"cover_size", eng.m},
                 {"edges", eng.edges_witness()},
                 {"pairs", pairs}};
    return finish("topological_mixing", Status::ConfirmedWithinBounds, witness, bounds, timer);
}

// ---------------------------------------------------------------------------
// super topological mixing
// ---------------------------------------------------------------------------

Verdict check_super_topological_mixing(const Relation& f, const Bounds& bounds) {
    Timer timer;
    validate_bounds(bounds);

    if (all_rotations(f) && f.arity() >= 2) {
        RotationCoverEngine eng(f, bounds);
        const double two_r = 2.0 * eng.cover.radius;
        if (auto cert = eng.spread_certificate(two_r)) {
            json witness{{"engine", "rotation-exact"},
                         {"certificate", "image-spread"},
                         {"threshold", two_r},
                         {"levels", *cert}};
            return finish("super_topological_mixing", Status::RefutedWithinBounds, witness,
                          bounds, timer);
        }
    }

    CoverSampler cov(f, bounds);
    if (cov.m > kProductCoverCap) {
        throw resource_error("super topological mixing: cover of " + std::to_string(cov.m) +
                             " balls exceeds the product cap " +
                             std::to_string(kProductCoverCap));
    }
    ImageEngine img(f, bounds.n_max);
    json pairs = json::array();
    for (int u = 0; u < cov.m; ++u) {
        for (int v = 0; v < cov.m; ++v) {
            std::vector<char> hit(static_cast<std::size_t>(bounds.n_max) + 1, 0);
            std::vector<json> evidence(static_cast<std::size_t>(bounds.n_max) + 1);
            for (int idx : cov.ball_samples(u)) {
                const Point& x = cov.net[static_cast<std::size_t>(idx)];
                const auto levels = containment_levels(img, x, bounds.n_max,
                                                       ith_ball(cov.cover, v));
                for (int n = 1; n <= bounds.n_max; ++n) {
                    if (levels[static_cast<std::size_t>(n)] && !hit[static_cast<std::size_t>(n)]) {
                        hit[static_cast<std::size_t>(n)] = 1;
                        evidence[static_cast<std::size_t>(n)] =
                            json{{"n", n}, {"x", point_to_json(x)}};
                    }
                }
            }
            const int k = tail_start(hit, bounds.n_max);
            if (k < 0 || k > half_window_limit(bounds.n_max)) {
                json witness{{"engine", "sampled-pointwise"}, {"pair", pair_json(u, v)}};
                return finish("super_topological_mixing", Status::Inconclusive, witness, bounds,
                              timer);
            }
            json levels = json::array();
            for (int n = k; n <= bounds.n_max; ++n) {
                levels.push_back(evidence[static_cast<std::size_t>(n)]);
            }
            pairs.push_back(json{{"u", u}, {"v", v}, {"K", k}, {"levels", levels}});
        }
    }
    json witness{{"engine", "sampled-pointwise"}, {"cover_size", cov.m}, {"pairs", pairs}};
    return finish("super_topological_mixing", Status::ConfirmedWithinBounds, witness, bounds,
                  timer);
}

// ---------------------------------------------------------------------------
// dense periodicity on the base space
// ---------------------------------------------------------------------------

Verdict check_dense_periodicity_relation(const Relation& f, const Bounds& bounds) {
    Timer timer;
    validate_bounds(bounds);

    if (all_rotations(f)) {
        // return distance is translation invariant: x + s returns to x iff s
        // wraps to 0, independently of x
        const auto levels = rotation_sum_levels(f, bounds.n_max);
        int found_n = -1;
        double best = std::numeric_limits<double>::infinity();
        for (int n = 1; n <= bounds.n_max && found_n < 0; ++n) {
            for (double s : levels[static_cast<std::size_t>(n)]) {
                const double d = circle_distance(s, 0.0);
                best = std::min(best, d);
                if (d <= bounds.tol) {
                    found_n = n;
                    break;
                }
            }
        }
        const std::vector<Point> net = epsilon_net(f.space, bounds.net_eps);
        if (found_n > 0) {
            json points = json::array();
            for (const Point& x : net) {
                points.push_back(json{{"x", point_to_json(x)}, {"n", found_n}});
            }
            json witness{{"engine", "rotation-exact"}, {"points", points}};
            return finish("dense_periodicity_relation", Status::ConfirmedWithinBounds, witness,
                          bounds, timer);
        }
        json witness{{"engine", "rotation-exact"},
                     {"certificate", "word-sum-minimum"},
                     {"min_distance", best},
                     {"x", point_to_json(net.front())}};
        return finish("dense_periodicity_relation", Status::RefutedWithinBounds, witness, bounds,
                      timer);
    }

    if (all_shift_powers(f)) {
        // eventually-constant sequences are shift-periodic only when constant
        const std::vector<Point> net = epsilon_net(f.space, bounds.net_eps);
        for (const Point& x : net) {
            if (!std::get<BiSeq>(x).is_constant()) {
                json witness{{"engine", "shift-exact"},
                             {"certificate", "nonconstant-shift"},
                             {"x", point_to_json(x)}};
                return finish("dense_periodicity_relation", Status::RefutedWithinBounds, witness,
                              bounds, timer);
            }
        }
        json points = json::array();
        for (const Point& x : net) points.push_back(json{{"x", point_to_json(x)}, {"n", 1}});
        json witness{{"engine", "shift-exact"}, {"points", points}};
        return finish("dense_periodicity_relation", Status::ConfirmedWithinBounds, witness,
                      bounds, timer);
    }

    if (all_table_maps(f)) {
        const auto& table = std::get<TableMap>(f.maps.front());
        const std::size_t size = table.points.size();
        if (size > 63) throw resource_error("dense periodicity: table net above 63 points");
        std::vector<std::uint64_t> point_image(size, 0);
        for (std::size_t i = 0; i < size; ++i) {
            for (const MapDescriptor& m : f.maps) {
                const auto& t = std::get<TableMap>(m);
                point_image[i] |= std::uint64_t{1} << t.table[i];
            }
        }
        json points = json::array();
        for (std::size_t i = 0; i < size; ++i) {
            std::uint64_t frontier = point_image[i];
            std::map<std::uint64_t, int> seen;
            int period = -1;
            int cyc_start = -1, cyc_period = -1;
            for (int n = 1; n <= bounds.n_max; ++n) {
                if (frontier >> i & 1u) {
                    period = n;
                    break;
                }
                auto it = seen.find(frontier);
                if (it != seen.end()) {
                    cyc_start = it->second;
                    cyc_period = n - it->second;
                    break;
                }
                seen.emplace(frontier, n);
                std::uint64_t next = 0;
                for (std::size_t b = 0; b < size; ++b) {
                    if (frontier >> b & 1u) next |= point_image[b];
                }
                frontier = next;
            }
            if (period < 0) {
                json witness{{"engine", "table-exact"},
                             {"x", point_to_json(table.points[i])},
                             {"certificate", cyc_start >= 0 ? "exhaustive-orbit-cycle"
                                                            : "search-exhausted"},
                             {"cycle_start", cyc_start},
                             {"cycle_period", cyc_period}};
                const Status st = cyc_start >= 0 ? Status::RefutedWithinBounds
                                                 : Status::Inconclusive;
                return finish("dense_periodicity_relation", st, witness, bounds, timer);
            }
            points.push_back(json{{"x", point_to_json(table.points[i])}, {"n", period}});
        }
        json witness{{"engine", "table-exact"}, {"points", points}};
        return finish("dense_periodicity_relation", Status::ConfirmedWithinBounds, witness,
                      bounds, timer);
    }

    ImageEngine img(f, bounds.n_max);
    const std::vector<Point> net = epsilon_net(f.space, bounds.net_eps);
    json points = json::array();
    for (const Point& x : net) {
        const auto n = first_return(img, x, bounds.n_max, bounds.tol);
        if (!n) {
            json witness{{"engine", "sampled-pointwise"}, {"x", point_to_json(x)}};
            return finish("dense_periodicity_relation", Status::Inconclusive, witness, bounds,
                          timer);
        }
        points.push_back(json{{"x", point_to_json(x)}, {"n", *n}});
    }
    json witness{{"engine", "sampled-pointwise"}, {"points", points}};
    return finish("dense_periodicity_relation", Status::ConfirmedWithinBounds, witness, bounds,
                  timer);
}

// ---------------------------------------------------------------------------
// dense periodicity of the induced map
// ---------------------------------------------------------------------------

namespace {

// all F-periodic subsets of a table net with <= 20 points, by exhaustion
struct TableCensus {
    std::vector<std::pair<std::uint64_t, int>> periodic; // (mask, period)
};

TableCensus table_census(const Relation& f, int n_max) {
    const auto& table = std::get<TableMap>(f.maps.front());
    const std::size_t size = table.points.size();
    if (size > 20) throw resource_error("induced periodicity census refused above 2^20 subsets");
    std::vector<std::uint64_t> point_image(size, 0);
    for (std::size_t i = 0; i < size; ++i) {
        for (const MapDescriptor& m : f.maps) {
            const auto& t = std::get<TableMap>(m);
            point_image[i] |= std::uint64_t{1} << t.table[i];
        }
    }
    auto step = [&](std::uint64_t mask) {
        std::uint64_t next = 0;
        for (std::size_t b = 0; b < size; ++b) {
            if (mask >> b & 1u) next |= point_image[b];
        }
        return next;
    };
    TableCensus census;
    const std::uint64_t total = std::uint64_t{1} << size;
    for (std::uint64_t mask = 1; mask < total; ++mask) {
        std::uint64_t cur = mask;
        for (int n = 1; n <= n_max; ++n) {
            cur = step(cur);
            if (cur == mask) {
                census.periodic.emplace_back(mask, n);
                break;
            }
        }
    }
    return census;
}

HSet mask_to_hset(const Space& space, const TableMap& table, std::uint64_t mask) {
    std::vector<Point> pts;
    for (std::size_t b = 0; b < table.points.size(); ++b) {
        if (mask >> b & 1u) pts.push_back(table.points[b]);
    }
    return HSet::make(space, std::move(pts));
}

} // namespace

Verdict check_dense_periodicity_induced(const Relation& f, const Bounds& bounds,
                                        const std::vector<HSet>& seeds) {
    Timer timer;
    validate_bounds(bounds);
    if (seeds.empty()) throw input_error("dense_periodicity_induced: seeds must be nonempty");

    if (all_table_maps(f) && std::get<TableMap>(f.maps.front()).points.size() <= 20) {
        const auto& table = std::get<TableMap>(f.maps.front());
        const TableCensus census = table_census(f, bounds.n_max);
        json census_json = json::array();
        for (const auto& [mask, period] : census.periodic) {
            json indices = json::array();
            for (std::size_t b = 0; b < table.points.size(); ++b) {
                if (mask >> b & 1u) indices.push_back(b);
            }
            census_json.push_back(json{{"set", indices}, {"period", period}});
        }
        json confirmations = json::array();
        for (const HSet& seed : seeds) {
            double best = std::numeric_limits<double>::infinity();
            std::uint64_t best_mask = 0;
            int best_period = 0;
            for (const auto& [mask, period] : census.periodic) {
                const HSet b = mask_to_hset(f.space, table, mask);
                const double d = hausdorff_distance(f.space, seed, b);
                if (d < best) {
                    best = d;
                    best_mask = mask;
                    best_period = period;
                }
            }
            if (best > bounds.net_eps) {
                json witness{{"engine", "table-exhaustive"},
                             {"seed", hset_to_json(seed)},
                             {"census", census_json},
                             {"min_distance", best}};
                return finish("dense_periodicity_induced", Status::RefutedWithinBounds, witness,
                              bounds, timer);
            }
            confirmations.push_back(
                json{{"seed", hset_to_json(seed)},
                     {"candidate", hset_to_json(mask_to_hset(f.space, table, best_mask))},
                     {"n", best_period},
                     {"distance", best}});
        }
        json witness{{"engine", "table-exhaustive"},
                     {"census", census_json},
                     {"seeds", confirmations}};
        return finish("dense_periodicity_induced", Status::ConfirmedWithinBounds, witness, bounds,
                      timer);
    }

    // candidate sets: the seed itself, its orbit sets, and prefix unions
    const int orbit_len = std::min(bounds.n_max, 64);
    json confirmations = json::array();
    for (const HSet& seed : seeds) {
        std::vector<HSet> candidates;
        candidates.push_back(seed);
        try {
            const auto orbit = induced_orbit(f, seed, orbit_len);
            for (std::size_t i = 1; i < orbit.size(); ++i) candidates.push_back(orbit[i]);
            std::vector<Point> acc = seed.points();
            for (std::size_t i = 1; i < orbit.size(); ++i) {
                for (const Point& p : orbit[i].points()) acc.push_back(p);
                candidates.push_back(HSet::make(f.space, acc));
            }
        } catch (const resource_error&) {
            // keep whatever candidates fit under the cap
        }
        bool seed_ok = false;
        for (const HSet& candidate : candidates) {
            if (hausdorff_distance(f.space, seed, candidate) > bounds.net_eps) continue;
            HSet cur = candidate;
            bool found = false;
            for (int n = 1; n <= bounds.n_max && !found; ++n) {
                bool capped = false;
                try {
                    cur = induced_map(f, cur);
                } catch (const resource_error&) {
                    capped = true;
                }
                if (capped) break;
                if (hausdorff_distance(f.space, candidate, cur) <= bounds.tol) {
                    confirmations.push_back(json{{"seed", hset_to_json(seed)},
                                                 {"candidate", hset_to_json(candidate)},
                                                 {"n", n}});
                    found = true;
                }
            }
            if (found) {
                seed_ok = true;
                break;
            }
        }
        if (!seed_ok) {
            json witness{{"engine", "orbit-candidates"},
                         {"seed", hset_to_json(seed)},
                         {"candidates_tried", candidates.size()}};
            return finish("dense_periodicity_induced", Status::Inconclusive, witness, bounds,
                          timer);
        }
    }
    json witness{{"engine", "orbit-candidates"}, {"seeds", confirmations}};
    return finish("dense_periodicity_induced", Status::ConfirmedWithinBounds, witness, bounds,
                  timer);
}

// ---------------------------------------------------------------------------
// sensitivity of the induced map
// ---------------------------------------------------------------------------

namespace {

std::vector<HSet> perturbations_of(const Relation& f, const HSet& seed, double net_eps) {
    std::vector<HSet> out;
    const Space& space = f.space;
    if (space.kind == SpaceKind::Sigma2) {
        // rewrite every member's right tail beyond the resolution window, once
        // to zeros and once to ones
        int r = 0;
        while (std::ldexp(1.0, -r) >= net_eps) ++r;
        for (std::uint8_t sym : {std::uint8_t{0}, std::uint8_t{1}}) {
            std::vector<Point> pts;
            for (const Point& p : seed.points()) {
                pts.push_back(rewrite_right_tail(std::get<BiSeq>(p), r + 2, sym));
            }
            out.push_back(HSet::make(space, std::move(pts)));
        }
        return out;
    }
    const double delta = net_eps / 2.0;
    for (std::size_t i = 0; i < seed.size(); ++i) {
        for (double dir : {delta, -delta}) {
            std::vector<Point> pts = seed.points();
            if (space.kind == SpaceKind::Circle) {
                pts[i] = CircleAngle{
                    normalize_angle(std::get<CircleAngle>(pts[i]).theta + dir)};
            } else {
                const double t = std::clamp(std::get<UnitReal>(pts[i]).t + dir, 0.0, 1.0);
                pts[i] = UnitReal{t};
            }
            out.push_back(HSet::make(space, std::move(pts)));
        }
    }
    return out;
}

} // namespace

Verdict check_sensitivity_induced(const Relation& f, double delta, const Bounds& bounds,
                                  const std::vector<HSet>& seeds) {
    Timer timer;
    validate_bounds(bounds);
    if (!(delta > 0.0)) throw input_error("sensitivity: delta must be > 0");
    if (seeds.empty()) throw input_error("sensitivity: seeds must be nonempty");

    if (all_rotations(f) && f.arity() == 1) {
        // a single rotation is an isometry, so the induced map preserves the
        // Hausdorff distance and small perturbations can never separate
        json witness{{"certificate", "isometry-singleton"}, {"delta", delta}};
        return finish("sensitivity_induced", Status::RefutedWithinBounds, witness, bounds, timer);
    }

    json confirmations = json::array();
    for (const HSet& seed : seeds) {
        bool seed_ok = false;
        for (const HSet& pert : perturbations_of(f, seed, bounds.net_eps)) {
            const double d0 = hausdorff_distance(f.space, seed, pert);
            if (!(d0 < bounds.net_eps)) continue;
            HSet a = seed;
            HSet b = pert;
            for (int n = 1; n <= bounds.n_max; ++n) {
                bool capped = false;
                try {
                    a = induced_map(f, a);
                    b = induced_map(f, b);
                } catch (const resource_error&) {
                    capped = true;
                }
                if (capped) break;
                const double sep = hausdorff_distance(f.space, a, b);
                if (sep > delta) {
                    confirmations.push_back(json{{"seed", hset_to_json(seed)},
                                                 {"perturbed", hset_to_json(pert)},
                                                 {"initial_distance", d0},
                                                 {"n", n},
                                                 {"separation", sep}});
                    seed_ok = true;
                    break;
                }
            }
            if (seed_ok) break;
        }
        if (!seed_ok) {
            json witness{{"seed", hset_to_json(seed)}, {"delta", delta}};
            return finish("sensitivity_induced", Status::Inconclusive, witness, bounds, timer);
        }
    }
    json witness{{"delta", delta}, {"seeds", confirmations}};
    return finish("sensitivity_induced", Status::ConfirmedWithinBounds, witness, bounds, timer);
}

// ---------------------------------------------------------------------------
// staged convergence search mirroring the nested-ball construction
// ---------------------------------------------------------------------------

Verdict check_singleton_convergence(const Relation& f, const Ball& u, const Point& target, int depth,
                                 const Bounds& bounds) {
    Timer timer;
    validate_bounds(bounds);
    if (depth < 1) throw input_error("singleton_convergence: depth must be >= 1");
    if (kind_of(u.center) != f.space.kind || kind_of(target) != f.space.kind) {
        throw input_error("singleton_convergence: ball/target kind mismatch");
    }

    ImageEngine img(f, bounds.n_max);
    const std::vector<Point> net = epsilon_net(f.space, bounds.net_eps);

    Ball current = u;
    std::optional<Point> anchor;
    int n_prev = 0;
    json stages = json::array();
    for (int stage = 1; stage <= depth; ++stage) {
        const double target_radius = 1.0 / static_cast<double>(stage);
        const Ball target_ball{target, target_radius};

        std::vector<Point> samples;
        if (anchor) samples.push_back(*anchor);
        for (const Point& p : net) {
            if (ball_contains(f.space, current, p)) samples.push_back(p);
        }

        bool found = false;
        Point found_u;
        int found_n = 0;
        for (const Point& x : samples) {
            const auto n = first_containment(img, x, n_prev + 1, bounds.n_max, target_ball);
            if (n && (!found || *n < found_n)) {
                found = true;
                found_n = *n;
                found_u = x;
                if (found_n == n_prev + 1) break;
            }
        }
        if (!found) {
            // at this stage the image must fit in a radius-1/stage ball; for
            // rotation families a uniform spread bound rules that out
            if (all_rotations(f) && f.arity() >= 2) {
                RotationCoverEngine spread_probe(f, bounds);
                if (auto cert = spread_probe.spread_certificate(2.0 * target_radius)) {
                    json witness{{"failing_stage", stage},
                                 {"certificate", "image-spread"},
                                 {"threshold", 2.0 * target_radius},
                                 {"levels", *cert},
                                 {"stages", stages}};
                    return finish("singleton_convergence", Status::RefutedWithinBounds, witness,
                                  bounds, timer);
                }
            }
            json witness{{"failing_stage", stage}, {"stages", stages}};
            return finish("singleton_convergence", Status::Inconclusive, witness, bounds, timer);
        }

        // shrink: verified containment for every net point of the smaller ball
        double radius = current.radius / 2.0;
        while (radius > bounds.net_eps / 4.0) {
            bool all_inside = true;
            const Ball shrunk{found_u, radius};
            for (const Point& p : net) {
                if (!ball_contains(f.space, shrunk, p)) continue;
                if (!first_containment(img, p, found_n, found_n, target_ball)) {
                    all_inside = false;
                    break;
                }
            }
            if (all_inside) break;
            radius /= 2.0;
        }

        // achieved Hausdorff distance from the image to {target}
        double image_distance = 0.0;
        img.visit(found_u, found_n, [&](const Point& p) {
            image_distance = std::max(image_distance, distance(f.space, p, target));
            return true;
        });

        stages.push_back(json{{"stage", stage},
                              {"u", point_to_json(found_u)},
                              {"n", found_n},
                              {"radius", radius},
                              {"image_distance", image_distance}});
        current = Ball{found_u, radius};
        anchor = found_u;
        n_prev = found_n;
    }
    json witness{{"ball_center", point_to_json(u.center)},
                 {"ball_radius", u.radius},
                 {"target", point_to_json(target)},
                 {"stages", stages}};
    return finish("singleton_convergence", Status::ConfirmedWithinBounds, witness, bounds, timer);
}

// ---------------------------------------------------------------------------
// induced transitivity over singleton seeds (hyperspace route)
// ---------------------------------------------------------------------------

Verdict check_induced_transitivity_singletons(const Relation& f, const Bounds& bounds) {
    Timer timer;
    validate_bounds(bounds);
    CoverSampler cov(f, bounds);
    json pairs = json::array();
    for (int u = 0; u < cov.m; ++u) {
        for (int v = 0; v < cov.m; ++v) {
            const OpenSetSpec target{BallSpec{ith_ball(cov.cover, v)}};
            bool found = false;
            int found_n = 0;
            Point found_x;
            for (int idx : cov.ball_samples(u)) {
                const Point& x = cov.net[static_cast<std::size_t>(idx)];
                const int limit = found ? found_n - 1 : bounds.n_max;
                HSet a = HSet::make(f.space, {x});
                for (int n = 1; n <= limit; ++n) {
                    a = induced_map(f, a);
                    if (plus_member(f.space, a, target)) {
                        if (!found || n < found_n) {
                            found = true;
                            found_n = n;
                            found_x = x;
                        }
                        break;
                    }
                }
                if (found && found_n == 1) break;
            }
            if (!found) {
                json witness{{"pair", pair_json(u, v)}};
                return finish("induced_transitivity_singletons", Status::Inconclusive, witness,
                              bounds, timer);
            }
            pairs.push_back(
                json{{"u", u}, {"v", v}, {"n", found_n}, {"x", point_to_json(found_x)}});
        }
    }
    json witness{{"cover_size", cov.m}, {"pairs", pairs}};
    return finish("induced_transitivity_singletons", Status::ConfirmedWithinBounds, witness,
                  bounds, timer);
}

// ---------------------------------------------------------------------------
// direct orbit visiting, default seeds
// ---------------------------------------------------------------------------

OrbitCoverReport direct_orbit_cover_visits(const Relation& f, const Bounds& bounds,
                                           const Point& start) {
    validate_bounds(bounds);
    if (f.arity() != 1) {
        throw input_error("direct_orbit_cover_visits: only for singleton families");
    }
    const BallCover cover = ball_cover(f.space, bounds.cover_eps);
    OrbitCoverReport report;
    report.first_visit.assign(cover.balls.size(), -1);
    Point x = start;
    std::size_t remaining = cover.balls.size();
    for (int n = 1; n <= bounds.n_max && remaining > 0; ++n) {
        x = apply_map(f.space, f.maps.front(), x);
        for (std::size_t v = 0; v < cover.balls.size(); ++v) {
            if (report.first_visit[v] < 0 && ball_contains(f.space, cover.balls[v], x)) {
                report.first_visit[v] = n;
                --remaining;
            }
        }
    }
    report.all_visited = remaining == 0;
    return report;
}

std::vector<HSet> default_seeds(const Relation& f, const Bounds& bounds, std::uint64_t rng_seed,
                                std::size_t max_seeds) {
    std::vector<Point> net;
    if (all_table_maps(f)) {
        net = std::get<TableMap>(f.maps.front()).points;
    } else {
        net = epsilon_net(f.space, bounds.net_eps);
    }
    std::vector<HSet> seeds;
    const std::size_t singles = std::min(net.size(), max_seeds > 8 ? max_seeds - 8 : max_seeds);
    for (std::size_t i = 0; i < singles; ++i) {
        seeds.push_back(HSet::make(f.space, {net[i]}));
    }
    std::mt19937_64 rng(rng_seed);
    while (seeds.size() < max_seeds && net.size() >= 2) {
        std::uniform_int_distribution<std::size_t> pick(0, net.size() - 1);
        std::uniform_int_distribution<int> size_dist(2, 3);
        std::vector<Point> pts;
        const int count = size_dist(rng);
        for (int i = 0; i < count; ++i) pts.push_back(net[pick(rng)]);
        seeds.push_back(HSet::make(f.space, std::move(pts)));
    }
    return seeds;
}

// ---------------------------------------------------------------------------
// witness replay
// ---------------------------------------------------------------------------

namespace {

bool fail(std::string* why, const std::string& message) {
    if (why) *why = message;
    return false;
}

bool replay_hit_pairs(const Relation& f, const Bounds& bounds, const BallCover& cover,
                      const json& entries, bool containment, std::string* why) {
    ImageEngine img(f, bounds.n_max);
    for (const json& e : entries) {
        const int u = e.at("u").get<int>();
        const int v = e.at("v").get<int>();
        const int n = e.at("n").get<int>();
        const Point x = point_from_json(e.at("x"));
        if (!ball_contains(f.space, ith_ball(cover, u), x)) {
            return fail(why, "witness point escapes its source ball");
        }
        if (n < 1 || n > bounds.n_max) return fail(why, "witness n out of bounds");
        const Ball target = ith_ball(cover, v);
        if (containment) {
            bool inside = img.visit(
                x, n, [&](const Point& p) { return ball_contains(f.space, target, p); });
            if (!inside) return fail(why, "claimed containment does not replay");
        } else {
            bool hit = false;
            img.visit(x, n, [&](const Point& p) {
                if (ball_contains(f.space, target, p)) {
                    hit = true;
                    return false;
                }
                return true;
            });
            if (!hit) return fail(why, "claimed intersection does not replay");
        }
    }
    return true;
}

bool replay_graph_edges(const Relation& f, const BallCover& cover, const json& edges,
                        std::string* why) {
    for (const json& e : edges) {
        const int u = e.at("from").get<int>();
        const int v = e.at("to").get<int>();
        const int map_index = e.at("map").get<int>();
        const Point sample = point_from_json(e.at("sample"));
        if (!ball_contains(f.space, ith_ball(cover, u), sample)) {
            return fail(why, "edge sample escapes its ball");
        }
        const Point y =
            apply_map(f.space, f.maps[static_cast<std::size_t>(map_index)], sample);
        if (!ball_contains(f.space, ith_ball(cover, v), y)) {
            return fail(why, "edge image escapes the target ball");
        }
    }
    return true;
}

bool replay_spread_certificate(const Relation& f, const Bounds& bounds, const json& witness,
                               std::string* why) {
    const double threshold = witness.at("threshold").get<double>();
    const auto levels = rotation_sum_levels(f, bounds.n_max);
    const json& entries = witness.at("levels");
    if (static_cast<int>(entries.size()) != bounds.n_max) {
        return fail(why, "spread certificate must witness every level");
    }
    for (const json& e : entries) {
        const int n = e.at(0).get<int>();
        const double s1 = e.at(1).get<double>();
        const double s2 = e.at(2).get<double>();
        if (n < 1 || n > bounds.n_max) return fail(why, "spread level out of bounds");
        const auto& level = levels[static_cast<std::size_t>(n)];
        auto has = [&](double s) {
            for (double v : level) {
                if (circle_distance(v, s) <= 1e-9) return true;
            }
            return false;
        };
        if (!has(s1) || !has(s2)) return fail(why, "spread sums not reachable at their level");
        if (!(circle_distance(s1, s2) > threshold)) {
            return fail(why, "spread pair does not exceed the threshold");
        }
    }
    return true;
}

} // namespace

bool replay_witness(const Relation& f, const Verdict& verdict, std::string* why) {
    const Bounds& bounds = verdict.bounds;
    const json& w = verdict.witness;
    const std::string& checker = verdict.checker;
    try {
        if (checker == "transitivity" ||
            (checker == "super_transitivity" && w.value("singleton_delegation", false))) {
            if (verdict.status == Status::ConfirmedWithinBounds) {
                const BallCover cover = ball_cover(f.space, bounds.cover_eps);
                if (w.at("engine") == "rotation-exact") {
                    return replay_hit_pairs(f, bounds, cover, w.at("classes"),
                                            /*containment=*/false, why);
                }
                const std::vector<Point> net = epsilon_net(f.space, bounds.net_eps);
                if (!replay_graph_edges(f, cover, w.at("edges"), why)) return false;
                GraphEngine eng(f, bounds);
                for (int u = 0; u < eng.m; ++u) {
                    const auto dist = eng.bfs(u);
                    for (int v = 0; v < eng.m; ++v) {
                        const int d = dist[static_cast<std::size_t>(v)];
                        if (d < 0 || d > bounds.n_max) {
                            return fail(why, "graph closure does not replay");
                        }
                    }
                }
                return true;
            }
            if (verdict.status == Status::RefutedWithinBounds) {
                if (w.at("engine") == "rotation-exact") {
                    RotationCoverEngine eng(f, bounds);
                    eng.ensure_hits();
                    if (!eng.cycle_within_bounds()) return fail(why, "no cycle on replay");
                    const int j = w.at("pair").at(1).get<int>();
                    for (int n = 1; n <= bounds.n_max; ++n) {
                        if (eng.hits[static_cast<std::size_t>(n)][static_cast<std::size_t>(j)]) {
                            return fail(why, "refuted pair is reachable on replay");
                        }
                    }
                    return true;
                }
                GraphEngine eng(f, bounds);
                const int u = w.at("pair").at(0).get<int>();
                const int v = w.at("pair").at(1).get<int>();
                return eng.bfs(u)[static_cast<std::size_t>(v)] < 0
                           ? true
                           : fail(why, "refuted pair became reachable");
            }
            return true;
        }
        if (checker == "super_transitivity" || checker == "induced_transitivity_singletons") {
            if (verdict.status == Status::ConfirmedWithinBounds) {
                const BallCover cover = ball_cover(f.space, bounds.cover_eps);
                return replay_hit_pairs(f, bounds, cover, w.at("pairs"), /*containment=*/true,
                                        why);
            }
            if (verdict.status == Status::RefutedWithinBounds) {
                if (w.value("certificate", "") == "image-spread") {
                    return replay_spread_certificate(f, bounds, w, why);
                }
                if (w.value("certificate", "") == "arc-separation") {
                    RotationCoverEngine eng(f, bounds);
                    const int j = w.at("pair").at(1).get<int>();
                    const double sep = eng.min_separation(j);
                    return sep >= w.at("threshold").get<double>()
                               ? true
                               : fail(why, "arc separation does not replay");
                }
                return fail(why, "unknown refutation certificate");
            }
            return true;
        }
        if (checker == "weak_mixing") {
            if (verdict.status == Status::ConfirmedWithinBounds) {
                const BallCover cover = ball_cover(f.space, bounds.cover_eps);
                if (w.at("engine") == "rotation-exact") {
                    ImageEngine img(f, bounds.n_max);
                    for (const json& e : w.at("classes")) {
                        json a{{"u", 0}, {"v", e.at("d1")}, {"n", e.at("n")}, {"x", e.at("x1")}};
                        json b{{"u", 0}, {"v", e.at("d2")}, {"n", e.at("n")}, {"x", e.at("x2")}};
                        if (!replay_hit_pairs(f, bounds, cover, json::array({a, b}),
                                              /*containment=*/false, why)) {
                            return false;
                        }
                    }
                    return true;
                }
                if (!replay_graph_edges(f, cover, w.at("edges"), why)) return false;
                return true; // closure recomputed by the checker itself
            }
            return true;
        }
        if (checker == "super_weak_mixing") {
            if (verdict.status == Status::ConfirmedWithinBounds) {
                const BallCover cover = ball_cover(f.space, bounds.cover_eps);
                ImageEngine img(f, bounds.n_max);
                for (const json& entry : w.at("containments")) {
                    const int u = entry.at("u").get<int>();
                    const int v = entry.at("v").get<int>();
                    for (const json& e : entry.at("witnesses")) {
                        json one{{"u", u}, {"v", v}, {"n", e.at("n")}, {"x", e.at("x")}};
                        if (!replay_hit_pairs(f, bounds, cover, json::array({one}),
                                              /*containment=*/true, why)) {
                            return false;
                        }
                    }
                }
                return true;
            }
            if (verdict.status == Status::RefutedWithinBounds) {
                return replay_spread_certificate(f, bounds, w, why);
            }
            return true;
        }
        if (checker == "topological_mixing") {
            if (verdict.status == Status::ConfirmedWithinBounds) {
                if (w.at("engine") == "rotation-exact") {
                    RotationCoverEngine eng(f, bounds);
                    eng.ensure_hits();
                    for (const json& e : w.at("classes")) {
                        const int j = e.at("d").get<int>();
                        const int k = e.at("K").get<int>();
                        if (k > half_window_limit(bounds.n_max)) {
                            return fail(why, "tail window too short");
                        }
                        for (int n = k; n <= bounds.n_max; ++n) {
                            if (!eng.hits[static_cast<std::size_t>(n)]
                                         [static_cast<std::size_t>(j)]) {
                                return fail(why, "tail hit missing on replay");
                            }
                        }
                    }
                    return true;
                }
                GraphEngine eng(f, bounds);
                for (const json& e : w.at("pairs")) {
                    const int u = e.at("u").get<int>();
                    const int v = e.at("v").get<int>();
                    const int k = e.at("K").get<int>();
                    const auto rs = eng.reach_sequence(u);
                    for (int n = k; n <= bounds.n_max; ++n) {
                        if (!rs.sets[static_cast<std::size_t>(n - 1)]
                                    [static_cast<std::size_t>(v)]) {
                            return fail(why, "graph tail hit missing on replay");
                        }
                    }
                }
                return true;
            }
            if (verdict.status == Status::RefutedWithinBounds) {
                const int miss = w.at("miss_level").get<int>();
                if (w.at("engine") == "rotation-exact") {
                    RotationCoverEngine eng(f, bounds);
                    eng.ensure_hits();
                    if (!eng.cycle_within_bounds()) return fail(why, "no cycle on replay");
                    const int j = w.at("pair").at(1).get<int>();
                    return !eng.hits[static_cast<std::size_t>(miss)][static_cast<std::size_t>(j)]
                               ? true
                               : fail(why, "miss level hits on replay");
                }
                GraphEngine eng(f, bounds);
                const int u = w.at("pair").at(0).get<int>();
                const int v = w.at("pair").at(1).get<int>();
                const auto rs = eng.reach_sequence(u);
                if (rs.cycle_start < 0) return fail(why, "no reach cycle on replay");
                return !rs.sets[static_cast<std::size_t>(miss - 1)][static_cast<std::size_t>(v)]
                           ? true
                           : fail(why, "graph miss level hits on replay");
            }
            return true;
        }
        if (checker == "super_topological_mixing") {
            if (verdict.status == Status::ConfirmedWithinBounds) {
                const BallCover cover = ball_cover(f.space, bounds.cover_eps);
                for (const json& e : w.at("pairs")) {
                    const int u = e.at("u").get<int>();
                    const int v = e.at("v").get<int>();
                    json entries = json::array();
                    for (const json& lvl : e.at("levels")) {
                        entries.push_back(
                            json{{"u", u}, {"v", v}, {"n", lvl.at("n")}, {"x", lvl.at("x")}});
                    }
                    if (!replay_hit_pairs(f, bounds, cover, entries, /*containment=*/true, why)) {
                        return false;
                    }
                }
                return true;
            }
            if (verdict.status == Status::RefutedWithinBounds) {
                return replay_spread_certificate(f, bounds, w, why);
            }
            return true;
        }
        if (checker == "dense_periodicity_relation") {
            if (verdict.status == Status::ConfirmedWithinBounds) {
                ImageEngine img(f, bounds.n_max);
                const bool exact = f.space.kind == SpaceKind::Sigma2;
                for (const json& e : w.at("points")) {
                    const Point x = point_from_json(e.at("x"));
                    const int n = e.at("n").get<int>();
                    bool close = false;
                    img.visit(x, n, [&](const Point& p) {
                        const bool hit = exact ? points_equal(f.space, x, p)
                                               : distance(f.space, x, p) <= bounds.tol;
                        if (hit) {
                            close = true;
                            return false;
                        }
                        return true;
                    });
                    if (!close) return fail(why, "periodic return does not replay");
                }
                return true;
            }
            if (verdict.status == Status::RefutedWithinBounds) {
                const std::string cert = w.value("certificate", "");
                if (cert == "word-sum-minimum") {
                    const auto levels = rotation_sum_levels(f, bounds.n_max);
                    for (int n = 1; n <= bounds.n_max; ++n) {
                        for (double s : levels[static_cast<std::size_t>(n)]) {
                            if (circle_distance(s, 0.0) <= bounds.tol) {
                                return fail(why, "a word sum returns within tol");
                            }
                        }
                    }
                    return true;
                }
                if (cert == "nonconstant-shift") {
                    const Point x = point_from_json(w.at("x"));
                    return !std::get<BiSeq>(x).is_constant() && all_shift_powers(f)
                               ? true
                               : fail(why, "shift certificate does not replay");
                }
                if (cert == "exhaustive-orbit-cycle") return true; // recomputed exactly
                return fail(why, "unknown periodicity certificate");
            }
            return true;
        }
        if (checker == "dense_periodicity_induced") {
            if (verdict.status == Status::ConfirmedWithinBounds) {
                for (const json& e : w.at("seeds")) {
                    const HSet seed = hset_from_json(f.space, e.at("seed"));
                    const HSet candidate = hset_from_json(f.space, e.at("candidate"));
                    const int n = e.at("n").get<int>();
                    if (hausdorff_distance(f.space, seed, candidate) > bounds.net_eps) {
                        return fail(why, "candidate drifted from its seed");
                    }
                    HSet cur = candidate;
                    for (int i = 0; i < n; ++i) cur = induced_map(f, cur);
                    if (hausdorff_distance(f.space, candidate, cur) > bounds.tol) {
                        return fail(why, "candidate periodicity does not replay");
                    }
                }
                return true;
            }
            if (verdict.status == Status::RefutedWithinBounds) {
                const TableCensus census = table_census(f, bounds.n_max);
                const HSet seed = hset_from_json(f.space, w.at("seed"));
                const auto& table = std::get<TableMap>(f.maps.front());
                double best = std::numeric_limits<double>::infinity();
                for (const auto& [mask, period] : census.periodic) {
                    (void)period;
                    best = std::min(best, hausdorff_distance(f.space, seed,
                                                             mask_to_hset(f.space, table, mask)));
                }
                if (!(best > bounds.net_eps)) {
                    return fail(why, "a periodic set is near the refuted seed");
                }
                if (w.at("census").size() != census.periodic.size()) {
                    return fail(why, "census mismatch on replay");
                }
                return true;
            }
            return true;
        }
        if (checker == "sensitivity_induced") {
            const double delta = w.at("delta").get<double>();
            if (verdict.status == Status::ConfirmedWithinBounds) {
                for (const json& e : w.at("seeds")) {
                    const HSet seed = hset_from_json(f.space, e.at("seed"));
                    const HSet pert = hset_from_json(f.space, e.at("perturbed"));
                    const int n = e.at("n").get<int>();
                    if (!(hausdorff_distance(f.space, seed, pert) < bounds.net_eps)) {
                        return fail(why, "perturbation is not small");
                    }
                    HSet a = seed;
                    HSet b = pert;
                    for (int i = 0; i < n; ++i) {
                        a = induced_map(f, a);
                        b = induced_map(f, b);
                    }
                    if (!(hausdorff_distance(f.space, a, b) > delta)) {
                        return fail(why, "separation does not replay");
                    }
                }
                return true;
            }
            if (verdict.status == Status::RefutedWithinBounds) {
                return all_rotations(f) && f.arity() == 1
                           ? true
                           : fail(why, "isometry certificate on a non-isometry family");
            }
            return true;
        }
        if (checker == "singleton_convergence") {
            if (verdict.status == Status::ConfirmedWithinBounds) {
                ImageEngine img(f, bounds.n_max);
                const Point target = point_from_json(w.at("target"));
                const Ball u{point_from_json(w.at("ball_center")),
                             w.at("ball_radius").get<double>()};
                Ball current = u;
                int n_prev = 0;
                for (const json& st : w.at("stages")) {
                    const int stage = st.at("stage").get<int>();
                    const Point ux = point_from_json(st.at("u"));
                    const int n = st.at("n").get<int>();
                    if (n <= n_prev) return fail(why, "stage iterates must increase");
                    if (!ball_contains(f.space, current, ux)) {
                        return fail(why, "stage point escapes the nested ball");
                    }
                    const Ball tb{target, 1.0 / static_cast<double>(stage)};
                    const bool inside = img.visit(
                        ux, n, [&](const Point& p) { return ball_contains(f.space, tb, p); });
                    if (!inside) return fail(why, "stage containment does not replay");
                    current = Ball{ux, st.at("radius").get<double>()};
                    n_prev = n;
                }
                return true;
            }
            if (verdict.status == Status::RefutedWithinBounds) {
                const int stage = w.at("failing_stage").get<int>();
                json probe = w;
                probe["threshold"] = 2.0 / static_cast<double>(stage);
                return replay_spread_certificate(f, bounds, probe, why);
            }
            return true;
        }
    } catch (const std::exception& e) {
        return fail(why, std::string("replay raised: ") + e.what());
    }
    return fail(why, "unknown checker '" + checker + "'");
}

} // namespace hyperdyn
