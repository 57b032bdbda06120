#include "hyperdyn/json_io.hpp"

#include <fstream>
#include <random>

namespace hyperdyn {

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& what) {
    throw input_error("config: " + where + ": " + what);
}

const json& need(const json& j, const char* key, const char* where) {
    if (!j.is_object() || !j.contains(key)) {
        bad(where, std::string("missing required field '") + key + "'");
    }
    return j.at(key);
}

double need_number(const json& j, const char* key, const char* where) {
    const json& v = need(j, key, where);
    if (!v.is_number()) bad(where, std::string("field '") + key + "' must be a number");
    return v.get<double>();
}

std::string need_string(const json& j, const char* key, const char* where) {
    const json& v = need(j, key, where);
    if (!v.is_string()) bad(where, std::string("field '") + key + "' must be a string");
    return v.get<std::string>();
}

} // namespace

json point_to_json(const Point& p) {
    json j;
    switch (kind_of(p)) {
    case SpaceKind::Circle:
        j["kind"] = "circle";
        j["theta"] = std::get<CircleAngle>(p).theta;
        break;
    case SpaceKind::Interval:
        j["kind"] = "interval";
        j["t"] = std::get<UnitReal>(p).t;
        break;
    case SpaceKind::Sigma2: {
        const auto& x = std::get<BiSeq>(p);
        j["kind"] = "sigma2";
        j["left"] = static_cast<int>(x.left);
        j["right"] = static_cast<int>(x.right);
        j["offset"] = x.offset;
        j["core"] = json::array();
        for (std::uint8_t s : x.core) j["core"].push_back(static_cast<int>(s));
        break;
    }
    }
    return j;
}

Point point_from_json(const json& j) {
    const std::string kind = need_string(j, "kind", "point");
    if (kind == "circle") return CircleAngle{normalize_angle(need_number(j, "theta", "point"))};
    if (kind == "interval") {
        const double t = need_number(j, "t", "point");
        if (t < 0.0 || t > 1.0) bad("point", "interval coordinate must lie in [0,1]");
        return UnitReal{t};
    }
    if (kind == "sigma2") {
        std::vector<std::uint8_t> core;
        const json& c = need(j, "core", "point");
        if (!c.is_array()) bad("point", "'core' must be an array of 0/1");
        for (const json& s : c) core.push_back(static_cast<std::uint8_t>(s.get<int>()));
        return make_biseq(static_cast<std::uint8_t>(need(j, "left", "point").get<int>()),
                          std::move(core),
                          static_cast<std::uint8_t>(need(j, "right", "point").get<int>()),
                          need(j, "offset", "point").get<std::int64_t>());
    }
    bad("point", "unknown kind '" + kind + "'");
}

json space_to_json(const Space& s) {
    return json{{"kind", to_string(s.kind)}, {"dedup_tolerance", s.dedup_tolerance}};
}

Space space_from_json(const json& j) {
    const std::string kind = need_string(j, "kind", "space");
    Space s;
    if (kind == "circle") s.kind = SpaceKind::Circle;
    else if (kind == "interval") s.kind = SpaceKind::Interval;
    else if (kind == "sigma2") s.kind = SpaceKind::Sigma2;
    else bad("space", "unknown kind '" + kind + "'");
    if (j.contains("dedup_tolerance")) {
        s.dedup_tolerance = j.at("dedup_tolerance").get<double>();
        if (!(s.dedup_tolerance > 0.0)) bad("space", "dedup_tolerance must be > 0");
    }
    return s;
}

json ball_to_json(const Space&, const Ball& b) {
    return json{{"center", point_to_json(b.center)}, {"radius", b.radius}};
}

Ball ball_from_json(const json& j) {
    Ball b;
    b.center = point_from_json(need(j, "center", "ball"));
    b.radius = need_number(j, "radius", "ball");
    if (!(b.radius > 0.0)) bad("ball", "radius must be > 0");
    return b;
}

json map_to_json(const MapDescriptor& m, const Space&) {
    if (const auto* r = std::get_if<Rotation>(&m)) {
        return json{{"type", "rotation"}, {"angle", r->angle}};
    }
    if (const auto* s = std::get_if<ShiftPower>(&m)) {
        return json{{"type", "shift_power"}, {"p", s->power}};
    }
    if (const auto* t = std::get_if<Tent>(&m)) {
        return json{{"type", "tent"}, {"slope", t->slope}};
    }
    if (std::holds_alternative<Doubling>(m)) {
        return json{{"type", "doubling"}};
    }
    const auto& t = std::get<TableMap>(m);
    json j{{"type", "table"}};
    j["points"] = json::array();
    for (const Point& p : t.points) j["points"].push_back(point_to_json(p));
    j["table"] = t.table;
    return j;
}

MapDescriptor map_from_json(const json& j) {
    const std::string type = need_string(j, "type", "map");
    if (type == "rotation") return Rotation{need_number(j, "angle", "map")};
    if (type == "shift_power") return ShiftPower{need(j, "p", "map").get<int>()};
    if (type == "tent") return Tent{need_number(j, "slope", "map")};
    if (type == "doubling") return Doubling{};
    if (type == "table") {
        TableMap t;
        for (const json& p : need(j, "points", "map")) t.points.push_back(point_from_json(p));
        t.table = need(j, "table", "map").get<std::vector<std::size_t>>();
        return t;
    }
    bad("map", "unknown type '" + type + "'");
}

json relation_to_json(const Relation& f) {
    json j;
    j["space"] = space_to_json(f.space);
    j["maps"] = json::array();
    for (const MapDescriptor& m : f.maps) j["maps"].push_back(map_to_json(m, f.space));
    switch (f.commutativity.status) {
    case CommutativityStatus::Unverified: j["commutativity"] = "unverified"; break;
    case CommutativityStatus::AssertedByUser: j["commutativity"] = "asserted_by_user"; break;
    case CommutativityStatus::VerifiedOnNet:
        j["commutativity"] = json{{"verified_on_net",
                                   json{{"eps", f.commutativity.eps},
                                        {"tol", f.commutativity.tol}}}};
        break;
    }
    return j;
}

Relation relation_from_json(const json& j) {
    const Space space = space_from_json(need(j, "space", "relation"));
    const json& maps_json = need(j, "maps", "relation");
    if (!maps_json.is_array() || maps_json.empty()) {
        bad("relation", "'maps' must be a nonempty array");
    }
    std::vector<MapDescriptor> maps;
    for (const json& m : maps_json) maps.push_back(map_from_json(m));
    Commutativity comm;
    if (j.contains("commutativity")) {
        const json& c = j.at("commutativity");
        if (c.is_string()) {
            const std::string s = c.get<std::string>();
            if (s == "unverified") comm.status = CommutativityStatus::Unverified;
            else if (s == "asserted_by_user") comm.status = CommutativityStatus::AssertedByUser;
            else bad("relation", "unknown commutativity '" + s + "'");
        } else if (c.is_object() && c.contains("verified_on_net")) {
            comm.status = CommutativityStatus::VerifiedOnNet;
            comm.eps = need_number(c.at("verified_on_net"), "eps", "commutativity");
            comm.tol = need_number(c.at("verified_on_net"), "tol", "commutativity");
        } else {
            bad("relation", "malformed commutativity field");
        }
    }
    return make_relation(space, std::move(maps), comm);
}

json hset_to_json(const HSet& a) {
    json j;
    j["points"] = json::array();
    for (const Point& p : a.points()) j["points"].push_back(point_to_json(p));
    return j;
}

HSet hset_from_json(const Space& s, const json& j) {
    const json& pts = need(j, "points", "hset");
    if (!pts.is_array() || pts.empty()) bad("hset", "'points' must be a nonempty array");
    std::vector<Point> points;
    for (const json& p : pts) points.push_back(point_from_json(p));
    return HSet::make(s, std::move(points));
}

json bounds_to_json(const Bounds& b) {
    return json{{"n_max", b.n_max},
                {"cover_eps", b.cover_eps},
                {"net_eps", b.net_eps},
                {"tol", b.tol}};
}

Bounds bounds_from_json(const json& j) {
    Bounds b;
    if (j.contains("n_max")) b.n_max = j.at("n_max").get<int>();
    if (j.contains("cover_eps")) b.cover_eps = j.at("cover_eps").get<double>();
    if (j.contains("net_eps")) b.net_eps = j.at("net_eps").get<double>();
    if (j.contains("tol")) b.tol = j.at("tol").get<double>();
    validate_bounds(b);
    return b;
}

json verdict_to_json(const Verdict& v) {
    return json{{"checker", v.checker},
                {"status", to_string(v.status)},
                {"witness", v.witness},
                {"bounds", bounds_to_json(v.bounds)},
                {"elapsed_ms", v.elapsed_ms}};
}

Status status_from_string(const std::string& s) {
    if (s == "confirmed_within_bounds") return Status::ConfirmedWithinBounds;
    if (s == "refuted_within_bounds") return Status::RefutedWithinBounds;
    if (s == "inconclusive") return Status::Inconclusive;
    throw input_error("unknown verdict status '" + s + "'");
}

Verdict verdict_from_json(const json& j) {
    Verdict v;
    v.checker = need_string(j, "checker", "verdict");
    v.status = status_from_string(need_string(j, "status", "verdict"));
    v.witness = need(j, "witness", "verdict");
    v.bounds = bounds_from_json(need(j, "bounds", "verdict"));
    if (j.contains("elapsed_ms")) v.elapsed_ms = j.at("elapsed_ms").get<double>();
    return v;
}

RunConfig run_config_from_json(const json& j) {
    if (!j.is_object()) bad("root", "config must be a JSON object");
    RunConfig c;
    c.command = need_string(j, "command", "root");
    if (c.command != "orbit" && c.command != "check" && c.command != "reproduce" &&
        c.command != "net") {
        bad("command", "must be one of orbit|check|reproduce|net");
    }
    if (j.contains("relation")) c.relation = relation_from_json(j.at("relation"));
    if (j.contains("space")) c.space = space_from_json(j.at("space"));
    if (j.contains("bounds")) c.bounds = bounds_from_json(j.at("bounds"));
    if (j.contains("checker")) c.checker = j.at("checker").get<std::string>();
    if (j.contains("delta")) {
        c.has_delta = true;
        c.delta = j.at("delta").get<double>();
    }
    if (j.contains("depth")) c.depth = j.at("depth").get<int>();
    if (j.contains("ball")) c.convergence_ball = ball_from_json(j.at("ball"));
    if (j.contains("target")) c.convergence_target = point_from_json(j.at("target"));
    if (j.contains("experiment")) c.experiment = j.at("experiment").get<std::string>();
    if (j.contains("out_dir")) c.out_dir = j.at("out_dir").get<std::string>();
    if (j.contains("seed")) c.rng_seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("orbit")) {
        const json& o = j.at("orbit");
        if (!c.relation) bad("orbit", "an orbit run needs a 'relation'");
        c.orbit_seed = hset_from_json(c.relation->space, need(o, "seed", "orbit"));
        c.orbit_steps = need(o, "steps", "orbit").get<int>();
        if (c.orbit_steps < 0) bad("orbit", "'steps' must be >= 0");
    }
    if (j.contains("seeds")) {
        if (!c.relation) bad("seeds", "seed sets need a 'relation'");
        for (const json& s : j.at("seeds")) {
            c.seeds.push_back(hset_from_json(c.relation->space, s));
        }
    }

    if (c.command == "orbit" && !c.orbit_seed) bad("orbit", "missing 'orbit' section");
    if (c.command == "check") {
        if (!c.relation) bad("check", "missing 'relation'");
        if (c.checker.empty()) bad("check", "missing 'checker'");
    }
    if (c.command == "reproduce" && c.experiment.empty()) {
        bad("reproduce", "missing 'experiment'");
    }
    if (c.command == "net" && !c.space && !c.relation) {
        bad("net", "needs a 'space' or a 'relation'");
    }
    return c;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw input_error("cannot open " + tmp.string() + " for writing");
        out << contents;
    }
    std::filesystem::rename(tmp, path);
}

} // namespace hyperdyn
