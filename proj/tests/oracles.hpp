#pragma once

// Test-side oracles, deliberately independent of the engine code paths they
// check: truncated metric sums, exhaustive word enumeration, and bitmask
// brute force over subsets of a finite net.

#include "hyperdyn/hyperspace.hpp"
#include "hyperdyn/relation.hpp"
#include "hyperdyn/space.hpp"

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

namespace oracles {

using namespace hyperdyn;

// direct summation of |x_i - y_i| / 2^{|i|} over |i| <= window
inline double truncated_sigma2_distance(const BiSeq& a, const BiSeq& b, int window = 60) {
    double d = 0.0;
    for (int i = -window; i <= window; ++i) {
        if (a.at(i) != b.at(i)) d += std::ldexp(1.0, -std::abs(i));
    }
    return d;
}

// every letter sequence of length n over k maps
inline std::vector<std::vector<int>> all_letter_sequences(int k, int n) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(static_cast<std::size_t>(n), 0);
    while (true) {
        out.push_back(cur);
        int pos = n - 1;
        while (pos >= 0 && cur[static_cast<std::size_t>(pos)] == k - 1) {
            cur[static_cast<std::size_t>(pos)] = 0;
            --pos;
        }
        if (pos < 0) break;
        ++cur[static_cast<std::size_t>(pos)];
    }
    return out;
}

// F^n(x) as the set of all length-n composition values, via repeated
// apply_map only (no frontier iteration, no displacement tables)
inline std::vector<Point> word_image_oracle(const Relation& f, int n, const Point& x) {
    std::vector<Point> out;
    for (const auto& letters : all_letter_sequences(static_cast<int>(f.arity()), n)) {
        Point y = x;
        for (auto it = letters.rbegin(); it != letters.rend(); ++it) {
            y = apply_map(f.space, f.maps[static_cast<std::size_t>(*it)], y);
        }
        out.push_back(y);
    }
    return out;
}

inline bool set_equals(const Space& space, const std::vector<Point>& a,
                       const std::vector<Point>& b, double tol) {
    auto covered = [&](const std::vector<Point>& xs, const std::vector<Point>& ys) {
        for (const Point& x : xs) {
            bool hit = false;
            for (const Point& y : ys) {
                if (distance(space, x, y) <= tol) {
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

inline std::optional<int> brute_force_period(const Relation& f, const Point& x, int n_max,
                                             double tol) {
    const bool exact = f.space.kind == SpaceKind::Sigma2;
    for (int n = 1; n <= n_max; ++n) {
        for (const Point& y : word_image_oracle(f, n, x)) {
            if (exact ? points_equal(f.space, x, y) : distance(f.space, x, y) <= tol) {
                return n;
            }
        }
    }
    return std::nullopt;
}

// exhaustive induced-periodicity census on Z_m under j -> j+a and j -> j+b,
// by bitmask iteration
struct CensusOracle {
    std::vector<std::pair<std::uint32_t, int>> periodic; // (mask, least period)
};

inline CensusOracle z_m_census(int m, int a, int b, int n_max) {
    auto step = [&](std::uint32_t mask) {
        std::uint32_t next = 0;
        for (int j = 0; j < m; ++j) {
            if (mask >> j & 1u) {
                next |= 1u << ((j + a) % m);
                next |= 1u << ((j + b) % m);
            }
        }
        return next;
    };
    CensusOracle out;
    for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
        std::uint32_t cur = mask;
        for (int n = 1; n <= n_max; ++n) {
            cur = step(cur);
            if (cur == mask) {
                out.periodic.emplace_back(mask, n);
                break;
            }
        }
    }
    return out;
}

// seeded random points
inline Point random_point(const Space& space, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    switch (space.kind) {
    case SpaceKind::Circle: return CircleAngle{normalize_angle(unit(rng) * kTau)};
    case SpaceKind::Interval: return UnitReal{unit(rng)};
    case SpaceKind::Sigma2: {
        std::uniform_int_distribution<int> bit(0, 1);
        std::uniform_int_distribution<int> width(0, 8);
        std::uniform_int_distribution<int> off(-4, 4);
        const int w = width(rng);
        std::vector<std::uint8_t> core;
        for (int i = 0; i < w; ++i) core.push_back(static_cast<std::uint8_t>(bit(rng)));
        return make_biseq(static_cast<std::uint8_t>(bit(rng)), std::move(core),
                          static_cast<std::uint8_t>(bit(rng)), off(rng));
    }
    }
    return CircleAngle{0.0};
}

} // namespace oracles
