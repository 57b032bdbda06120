#include "hyperdyn/relation.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

namespace hyperdyn {

namespace {

SpaceKind map_space_kind(const MapDescriptor& map, const Space& space) {
    if (std::holds_alternative<Rotation>(map)) return SpaceKind::Circle;
    if (std::holds_alternative<ShiftPower>(map)) return SpaceKind::Sigma2;
    if (std::holds_alternative<Tent>(map) || std::holds_alternative<Doubling>(map)) {
        return SpaceKind::Interval;
    }
    // TableMap acts on whatever space its declared points live in.
    const auto& t = std::get<TableMap>(map);
    if (t.points.empty()) throw input_error("table map: empty net");
    return kind_of(t.points.front()) == space.kind ? space.kind : kind_of(t.points.front());
}

void validate_map(const MapDescriptor& map, const Space& space) {
    if (map_space_kind(map, space) != space.kind) {
        throw input_error("relation: map does not act on space kind " + to_string(space.kind));
    }
    if (const auto* s = std::get_if<ShiftPower>(&map)) {
        if (s->power < 1) throw input_error("shift power must be >= 1");
    }
    if (const auto* t = std::get_if<Tent>(&map)) {
        if (!(t->slope > 0.0) || t->slope > 2.0) {
            throw input_error("tent slope must lie in (0, 2]");
        }
    }
    if (const auto* t = std::get_if<TableMap>(&map)) {
        if (t->table.size() != t->points.size()) {
            throw input_error("table map: table size must match net size");
        }
        for (std::size_t v : t->table) {
            if (v >= t->points.size()) throw input_error("table map: target index out of range");
        }
        for (const Point& p : t->points) {
            if (kind_of(p) != space.kind) throw input_error("table map: net point kind mismatch");
        }
    }
}

std::size_t table_lookup(const Space& space, const TableMap& t, const Point& x) {
    for (std::size_t i = 0; i < t.points.size(); ++i) {
        if (points_equal(space, t.points[i], x)) return i;
    }
    throw input_error("table map: point is not on the declared net");
}

double binomial_cap(std::size_t n, std::size_t k, std::size_t cap) {
    // C(n, k) clipped at cap to avoid overflow.
    double c = 1.0;
    for (std::size_t i = 1; i <= k; ++i) {
        c *= static_cast<double>(n - k + i) / static_cast<double>(i);
        if (c > static_cast<double>(cap) * 2.0) return c;
    }
    return c;
}

} // namespace

Relation make_relation(Space space, std::vector<MapDescriptor> maps, Commutativity comm) {
    if (maps.empty()) throw input_error("relation: family must be nonempty");
    for (const MapDescriptor& m : maps) validate_map(m, space);
    return Relation{space, std::move(maps), comm};
}

bool all_rotations(const Relation& f) {
    return std::all_of(f.maps.begin(), f.maps.end(), [](const MapDescriptor& m) {
        return std::holds_alternative<Rotation>(m);
    });
}

bool all_shift_powers(const Relation& f) {
    return std::all_of(f.maps.begin(), f.maps.end(), [](const MapDescriptor& m) {
        return std::holds_alternative<ShiftPower>(m);
    });
}

bool all_table_maps(const Relation& f) {
    return std::all_of(f.maps.begin(), f.maps.end(), [](const MapDescriptor& m) {
        return std::holds_alternative<TableMap>(m);
    });
}

Point apply_map(const Space& space, const MapDescriptor& map, const Point& x) {
    if (kind_of(x) != space.kind) throw input_error("apply_map: point kind mismatch");
    if (const auto* r = std::get_if<Rotation>(&map)) {
        return CircleAngle{normalize_angle(std::get<CircleAngle>(x).theta + r->angle)};
    }
    if (const auto* s = std::get_if<ShiftPower>(&map)) {
        return shift_biseq(std::get<BiSeq>(x), s->power);
    }
    if (const auto* t = std::get_if<Tent>(&map)) {
        const double u = std::get<UnitReal>(x).t;
        return UnitReal{t->slope * std::min(u, 1.0 - u)};
    }
    if (std::holds_alternative<Doubling>(map)) {
        const double u = 2.0 * std::get<UnitReal>(x).t;
        return UnitReal{u - std::floor(u)};
    }
    const auto& t = std::get<TableMap>(map);
    return t.points[t.table[table_lookup(space, t, x)]];
}

HSet image(const Relation& f, const Point& x) {
    std::vector<Point> pts;
    pts.reserve(f.arity());
    for (const MapDescriptor& m : f.maps) pts.push_back(apply_map(f.space, m, x));
    return HSet::make(f.space, std::move(pts));
}

std::vector<std::vector<double>> rotation_sum_levels(const Relation& f, int n_max) {
    if (!all_rotations(f)) throw input_error("rotation_sum_levels: family is not all rotations");
    std::vector<double> angles;
    for (const MapDescriptor& m : f.maps) {
        angles.push_back(normalize_angle(std::get<Rotation>(m).angle));
    }
    const double tol = f.space.dedup_tolerance;
    std::vector<std::vector<double>> levels;
    levels.reserve(static_cast<std::size_t>(n_max) + 1);
    levels.push_back({0.0}); // level 0: empty word
    for (int n = 1; n <= n_max; ++n) {
        std::vector<double> next;
        next.reserve(levels.back().size() * angles.size());
        for (double s : levels.back()) {
            for (double a : angles) next.push_back(normalize_angle(s + a));
        }
        std::sort(next.begin(), next.end());
        std::vector<double> dedup;
        for (double v : next) {
            if (dedup.empty() || circle_distance(dedup.back(), v) > tol) {
                dedup.push_back(v);
            }
        }
        // wrap-around duplicate between last and first
        if (dedup.size() > 1 && circle_distance(dedup.front(), dedup.back()) <= tol) {
            dedup.pop_back();
        }
        levels.push_back(std::move(dedup));
    }
    return levels;
}

std::vector<std::vector<std::int64_t>> shift_sum_levels(const Relation& f, int n_max) {
    if (!all_shift_powers(f)) throw input_error("shift_sum_levels: family is not all shifts");
    std::vector<std::int64_t> powers;
    for (const MapDescriptor& m : f.maps) powers.push_back(std::get<ShiftPower>(m).power);
    std::vector<std::vector<std::int64_t>> levels;
    levels.push_back({0});
    for (int n = 1; n <= n_max; ++n) {
        std::set<std::int64_t> next;
        for (std::int64_t s : levels.back()) {
            for (std::int64_t p : powers) next.insert(s + p);
        }
        levels.emplace_back(next.begin(), next.end());
    }
    return levels;
}

HSet n_fold_image(const Relation& f, int n, const Point& x, std::size_t cap) {
    if (n < 1) throw input_error("n_fold_image: n must be >= 1");
    if (kind_of(x) != f.space.kind) throw input_error("n_fold_image: point kind mismatch");

    if (all_rotations(f)) {
        const auto levels = rotation_sum_levels(f, n);
        const double theta = std::get<CircleAngle>(x).theta;
        std::vector<Point> pts;
        pts.reserve(levels.back().size());
        for (double s : levels[static_cast<std::size_t>(n)]) {
            pts.push_back(CircleAngle{normalize_angle(theta + s)});
        }
        return HSet::make(f.space, std::move(pts));
    }
    if (all_shift_powers(f)) {
        const auto levels = shift_sum_levels(f, n);
        const auto& seq = std::get<BiSeq>(x);
        std::vector<Point> pts;
        pts.reserve(levels.back().size());
        for (std::int64_t s : levels[static_cast<std::size_t>(n)]) {
            pts.push_back(shift_biseq(seq, s));
        }
        return HSet::make(f.space, std::move(pts));
    }

    HSet frontier = image(f, x);
    for (int step = 2; step <= n; ++step) {
        std::vector<Point> next;
        next.reserve(frontier.size() * f.arity());
        for (const Point& y : frontier.points()) {
            for (const MapDescriptor& m : f.maps) next.push_back(apply_map(f.space, m, y));
        }
        if (next.size() > cap) {
            throw resource_error("n_fold_image: frontier of " + std::to_string(next.size()) +
                                 " points exceeds cap " + std::to_string(cap));
        }
        frontier = HSet::make(f.space, std::move(next));
    }
    return frontier;
}

Point apply_word(const Relation& f, const Word& w, const Point& x) {
    Point y = x;
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) {
        const int i = *it;
        if (i < 0 || static_cast<std::size_t>(i) >= f.arity()) {
            throw input_error("apply_word: letter out of range");
        }
        y = apply_map(f.space, f.maps[static_cast<std::size_t>(i)], y);
    }
    return y;
}

std::vector<int> word_exponents(const Word& w, int arity) {
    std::vector<int> e(static_cast<std::size_t>(arity), 0);
    for (int l : w.letters) {
        if (l < 0 || l >= arity) throw input_error("word_exponents: letter out of range");
        ++e[static_cast<std::size_t>(l)];
    }
    return e;
}

std::vector<Word> enumerate_words(const Relation& f, int n, std::size_t cap) {
    if (n < 1) throw input_error("enumerate_words: n must be >= 1");
    const auto k = static_cast<int>(f.arity());
    std::vector<Word> words;
    if (f.commutativity_known()) {
        const double count =
            binomial_cap(static_cast<std::size_t>(n + k - 1), static_cast<std::size_t>(k - 1), cap);
        if (count > static_cast<double>(cap)) {
            throw resource_error("enumerate_words: exponent-vector count exceeds cap " +
                                 std::to_string(cap));
        }
        // Non-decreasing letter sequences, one per exponent vector.
        std::vector<int> letters(static_cast<std::size_t>(n), 0);
        while (true) {
            words.push_back(Word{letters});
            int pos = n - 1;
            while (pos >= 0 && letters[static_cast<std::size_t>(pos)] == k - 1) --pos;
            if (pos < 0) break;
            const int v = letters[static_cast<std::size_t>(pos)] + 1;
            for (int j = pos; j < n; ++j) letters[static_cast<std::size_t>(j)] = v;
        }
        return words;
    }
    double total = 1.0;
    for (int i = 0; i < n; ++i) {
        total *= static_cast<double>(k);
        if (total > static_cast<double>(cap)) {
            throw resource_error("enumerate_words: k^n exceeds cap " + std::to_string(cap));
        }
    }
    std::vector<int> letters(static_cast<std::size_t>(n), 0);
    while (true) {
        words.push_back(Word{letters});
        int pos = n - 1;
        while (pos >= 0 && letters[static_cast<std::size_t>(pos)] == k - 1) {
            letters[static_cast<std::size_t>(pos)] = 0;
            --pos;
        }
        if (pos < 0) break;
        ++letters[static_cast<std::size_t>(pos)];
    }
    return words;
}

CommutativityReport check_commutativity(Relation& f, double eps, double tol, std::size_t cap) {
    std::vector<Point> net;
    if (all_table_maps(f)) {
        net = std::get<TableMap>(f.maps.front()).points;
    } else {
        net = epsilon_net(f.space, eps, cap);
    }
    CommutativityReport report;
    report.ok = true;
    for (const Point& x : net) {
        for (std::size_t i = 0; i + 1 < f.arity(); ++i) {
            for (std::size_t j = i + 1; j < f.arity(); ++j) {
                const Point a = apply_map(f.space, f.maps[i], apply_map(f.space, f.maps[j], x));
                const Point b = apply_map(f.space, f.maps[j], apply_map(f.space, f.maps[i], x));
                const double d = distance(f.space, a, b);
                if (d > report.max_deviation) {
                    report.max_deviation = d;
                    if (d > tol) report.witness = x;
                }
            }
        }
    }
    report.ok = report.max_deviation <= tol;
    if (report.ok) {
        f.commutativity = Commutativity{CommutativityStatus::VerifiedOnNet, eps, tol};
    }
    return report;
}

std::optional<int> is_periodic_point(const Relation& f, const Point& x, int n_max, double tol,
                                     std::size_t cap) {
    if (n_max < 1) throw input_error("is_periodic_point: n_max must be >= 1");
    const bool exact = f.space.kind == SpaceKind::Sigma2;
    for (int n = 1; n <= n_max; ++n) {
        const HSet img = n_fold_image(f, n, x, cap);
        for (const Point& y : img.points()) {
            if (exact ? points_equal(f.space, x, y) : distance(f.space, x, y) <= tol) {
                return n;
            }
        }
    }
    return std::nullopt;
}

} // namespace hyperdyn
