#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "capax/errors.hpp"
#include "capax/graph.hpp"

namespace capax {

// The three movement rules: strong = each player may move or stay,
// direct = every player moves, cartesian = exactly one player moves.
enum class MovementRule { strong, direct, cartesian };

inline const char* to_string(MovementRule r) {
    switch (r) {
        case MovementRule::strong: return "strong";
        case MovementRule::direct: return "direct";
        case MovementRule::cartesian: return "cartesian";
    }
    return "?";
}

inline std::optional<MovementRule> movement_rule_from_string(std::string_view s) {
    if (s == "strong") return MovementRule::strong;
    if (s == "direct") return MovementRule::direct;
    if (s == "cartesian") return MovementRule::cartesian;
    return std::nullopt;
}

inline constexpr MovementRule kAllRules[] = {MovementRule::strong, MovementRule::direct,
                                             MovementRule::cartesian};

// A fixed-length family of per-player vertex sequences.  tracks[s][t] is
// the position of player s at time t; all tracks share one length.
// Whether the march is valid under a rule is decided by validate_march,
// never assumed.
struct March {
    std::vector<std::vector<int>> tracks;

    int players() const { return static_cast<int>(tracks.size()); }
    long length() const {
        return tracks.empty() ? 0 : static_cast<long>(tracks[0].size()) - 1;
    }
    std::vector<int> stage(long t) const {
        std::vector<int> s;
        s.reserve(tracks.size());
        for (const auto& tr : tracks) s.push_back(tr[static_cast<std::size_t>(t)]);
        return s;
    }
    bool operator==(const March& other) const { return tracks == other.tracks; }
};

inline March march_from_tracks(std::vector<std::vector<int>> tracks) {
    if (tracks.empty()) throw PreconditionError("march needs at least one track");
    for (const auto& tr : tracks) {
        if (tr.empty()) throw PreconditionError("tracks must contain the starting position");
        if (tr.size() != tracks[0].size())
            throw PreconditionError("tracks must all have equal length");
    }
    return March{std::move(tracks)};
}

namespace detail {
inline bool positions_in_range(const Graph& g, const March& f) {
    for (const auto& tr : f.tracks)
        for (int v : tr)
            if (v < 0 || v >= g.n) return false;
    return true;
}
}  // namespace detail

// Minimum over all stages and unordered player pairs of the hop distance
// between two players; nullopt encodes infinity (single player).
inline std::optional<int> march_min_distance(const DistanceMatrix& dm, const March& f) {
    for (const auto& tr : f.tracks)
        for (int v : tr)
            if (v < 0 || v >= dm.size())
                throw PreconditionError("march vertex out of range: " + std::to_string(v));
    if (f.players() == 1) return std::nullopt;
    int best = -1;
    const long steps = f.length();
    for (long t = 0; t <= steps; ++t) {
        for (int a = 0; a < f.players(); ++a) {
            for (int b = a + 1; b < f.players(); ++b) {
                int u = f.tracks[a][static_cast<std::size_t>(t)];
                int v = f.tracks[b][static_cast<std::size_t>(t)];
                if (!dm.reachable(u, v))
                    throw PreconditionError("march spans disconnected vertices");
                int d = dm.at(u, v);
                if (best == -1 || d < best) best = d;
            }
        }
    }
    return best;
}

inline std::optional<int> march_min_distance(const Graph& g, const March& f) {
    return march_min_distance(all_pairs_distances(g), f);
}

struct StepViolation {
    long step = 0;  // stage index the offending step leaves from
    std::string description;
};

// Result of checking a march against a movement rule.  min_distance is
// only computed when positions_well_formed; nullopt then means infinite
// (single player).
struct ValidationReport {
    bool positions_well_formed = false;
    bool is_valid_for_rule = false;
    bool is_collision_free = false;
    std::optional<int> min_distance;
    bool is_tour = false;
    std::optional<StepViolation> first_violation;
    std::optional<int> required_min;
    bool meets_required_min = true;

    bool ok() const {
        return positions_well_formed && is_valid_for_rule && is_collision_free &&
               meets_required_min;
    }
};

// Checks rule conformance, collision-freeness, tour-ness, and optionally
// a minimum-distance requirement.  Violations are reported, not thrown.
inline ValidationReport validate_march(const Graph& g, const March& f, MovementRule rule,
                                       std::optional<int> require_min = std::nullopt) {
    ValidationReport rep;
    rep.required_min = require_min;

    if (f.players() == 0 || f.tracks[0].empty()) {
        rep.first_violation = StepViolation{0, "march has no tracks or empty tracks"};
        return rep;
    }
    for (const auto& tr : f.tracks) {
        if (tr.size() != f.tracks[0].size()) {
            rep.first_violation = StepViolation{0, "tracks have unequal lengths"};
            return rep;
        }
    }
    if (!detail::positions_in_range(g, f)) {
        rep.first_violation = StepViolation{0, "track vertex out of range"};
        return rep;
    }
    rep.positions_well_formed = true;

    const long steps = f.length();
    rep.is_valid_for_rule = true;
    for (long t = 0; t < steps && rep.is_valid_for_rule; ++t) {
        int movers = 0;
        for (int s = 0; s < f.players(); ++s) {
            int a = f.tracks[s][static_cast<std::size_t>(t)];
            int b = f.tracks[s][static_cast<std::size_t>(t + 1)];
            if (a == b) {
                if (rule == MovementRule::direct) {
                    rep.is_valid_for_rule = false;
                    rep.first_violation = StepViolation{
                        t, "track " + std::to_string(s) + " stays but every player must move"};
                    break;
                }
            } else if (g.has_edge(a, b)) {
                ++movers;
            } else {
                rep.is_valid_for_rule = false;
                rep.first_violation =
                    StepViolation{t, "track " + std::to_string(s) + " jumps " +
                                         std::to_string(a) + "->" + std::to_string(b) +
                                         " across a non-edge"};
                break;
            }
        }
        if (rep.is_valid_for_rule && rule == MovementRule::cartesian && movers != 1) {
            rep.is_valid_for_rule = false;
            rep.first_violation = StepViolation{
                t, std::to_string(movers) + " players move but exactly one must"};
        }
    }

    auto dm = all_pairs_distances(g);
    rep.min_distance = march_min_distance(dm, f);
    rep.is_collision_free = !rep.min_distance.has_value() || *rep.min_distance >= 1;

    rep.is_tour = true;
    for (const auto& tr : f.tracks) {
        std::vector<bool> seen(g.n, false);
        int covered = 0;
        for (int v : tr)
            if (!seen[v]) {
                seen[v] = true;
                ++covered;
            }
        if (covered != g.n) {
            rep.is_tour = false;
            break;
        }
    }

    if (require_min)
        rep.meets_required_min = !rep.min_distance.has_value() || *rep.min_distance >= *require_min;
    return rep;
}

// Vertices visited by the unique track starting at v, ascending.
inline std::vector<int> orbit(const March& f, int v) {
    std::vector<int> start;
    for (const auto& tr : f.tracks) start.push_back(tr[0]);
    {
        auto sorted = start;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw PreconditionError("orbit requires distinct starting positions");
    }
    auto it = std::find(start.begin(), start.end(), v);
    if (it == start.end())
        throw PreconditionError("vertex " + std::to_string(v) + " is not a starting position");
    const auto& tr = f.tracks[static_cast<std::size_t>(it - start.begin())];
    std::vector<int> orb(tr.begin(), tr.end());
    std::sort(orb.begin(), orb.end());
    orb.erase(std::unique(orb.begin(), orb.end()), orb.end());
    return orb;
}

// Concatenation: each f1-track is continued by the f2-track that starts
// where it ended.  The position matching must be a unique bijection, so
// stages with duplicate vertices are rejected.
inline March extend(const March& f1, const March& f2) {
    if (f1.players() != f2.players())
        throw PreconditionError("extend requires equal player counts");
    const long l1 = f1.length();

    std::vector<int> final1 = f1.stage(l1);
    std::vector<int> init2 = f2.stage(0);
    {
        auto a = final1, b = init2;
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        if (a != b)
            throw PreconditionError("extend: final stage of first march differs from "
                                    "initial stage of second");
        if (std::adjacent_find(a.begin(), a.end()) != a.end())
            throw PreconditionError("extend: duplicate vertices make the track pairing ambiguous");
    }

    std::map<int, int> track_at;  // vertex -> index of f2 track starting there
    for (int s = 0; s < f2.players(); ++s) track_at[init2[static_cast<std::size_t>(s)]] = s;

    March out;
    out.tracks.reserve(f1.tracks.size());
    for (int s = 0; s < f1.players(); ++s) {
        std::vector<int> tr = f1.tracks[static_cast<std::size_t>(s)];
        const auto& cont = f2.tracks[static_cast<std::size_t>(track_at.at(final1[static_cast<std::size_t>(s)]))];
        tr.insert(tr.end(), cont.begin() + 1, cont.end());
        out.tracks.push_back(std::move(tr));
    }
    return out;
}

inline March reverse(const March& f) {
    March out = f;
    for (auto& tr : out.tracks) std::reverse(tr.begin(), tr.end());
    return out;
}

// Complementary march of the vacant vertices of a patient collision-free
// march with p < n players.  Dual tracks are ordered by starting vertex;
// when the unique mover of a step vacates a vertex, the dual track on the
// mover's destination moves there.
inline March dual(const Graph& g, const March& f) {
    const int p = f.players();
    if (p >= g.n) throw PreconditionError("dual requires fewer players than vertices");
    auto rep = validate_march(g, f, MovementRule::cartesian);
    if (!rep.positions_well_formed || !rep.is_valid_for_rule)
        throw PreconditionError("dual requires a valid patient march");
    if (!rep.is_collision_free) throw PreconditionError("dual requires a collision-free march");

    const long steps = f.length();
    std::vector<bool> occupied(g.n, false);
    for (int s = 0; s < p; ++s) occupied[f.tracks[s][0]] = true;

    March out;
    for (int v = 0; v < g.n; ++v)
        if (!occupied[v]) out.tracks.push_back({v});

    std::vector<int> holder(g.n, -1);  // vertex -> dual track index
    for (int i = 0; i < out.players(); ++i) holder[out.tracks[i][0]] = i;

    for (long t = 0; t < steps; ++t) {
        int from = -1, to = -1;
        for (int s = 0; s < p; ++s) {
            int a = f.tracks[s][static_cast<std::size_t>(t)];
            int b = f.tracks[s][static_cast<std::size_t>(t + 1)];
            if (a != b) {
                from = a;
                to = b;
                break;
            }
        }
        // Patient and collision-free: the unique mover enters a vacant
        // vertex; with p = n-1 it must be the single vacant one.
        if (holder[to] == -1)
            throw PreconditionError("internal: mover destination was not vacant");
        int mover_track = holder[to];
        for (int i = 0; i < out.players(); ++i)
            out.tracks[static_cast<std::size_t>(i)].push_back(
                i == mover_track ? from : out.tracks[static_cast<std::size_t>(i)].back());
        holder[to] = -1;
        holder[from] = mover_track;
    }
    return out;
}

}  // namespace capax
