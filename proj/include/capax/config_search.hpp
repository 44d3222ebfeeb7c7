#pragma once

#include <bit>
#include <cstdint>
#include <functional>
#include <optional>
#include <unordered_map>
#include <vector>

#include "capax/errors.hpp"
#include "capax/graph.hpp"
#include "capax/march.hpp"

namespace capax {

inline constexpr std::size_t kDefaultNodeLimit = 5'000'000;

// An ordered player-position tuple with pairwise distance >= d.
struct Configuration {
    std::vector<int> positions;
};

// Search graph whose nodes are the valid configurations and whose edges
// are the legal simultaneous moves under a movement rule.  Nodes are
// materialized; adjacency is generated on the fly.
struct ConfigGraph {
    Graph graph;
    DistanceMatrix dist;
    MovementRule rule = MovementRule::direct;
    int players = 0;
    int min_distance = 1;

    std::vector<int> nodes;  // flat; node i occupies [i*players, (i+1)*players)
    std::unordered_map<std::uint64_t, int> index;
    int coord_bits = 0;

    std::size_t node_count() const {
        return players == 0 ? 0 : nodes.size() / static_cast<std::size_t>(players);
    }
    const int* config(int id) const {
        return nodes.data() + static_cast<std::size_t>(id) * players;
    }
    Configuration configuration(int id) const {
        const int* c = config(id);
        return Configuration{std::vector<int>(c, c + players)};
    }
    std::uint64_t encode(const int* c) const {
        std::uint64_t key = 0;
        for (int i = players - 1; i >= 0; --i)
            key = (key << coord_bits) | static_cast<std::uint64_t>(c[i]);
        return key;
    }
};

namespace detail {

// Emits every configuration reachable from `from` in one legal step.
// Candidates are built coordinate by coordinate with the pairwise
// distance constraint checked as each coordinate is placed.
template <typename Fn>
void for_each_move(const ConfigGraph& cg, const int* from, Fn&& emit) {
    const int p = cg.players;
    const int d = cg.min_distance;
    const Graph& g = cg.graph;
    const DistanceMatrix& dm = cg.dist;

    if (cg.rule == MovementRule::cartesian) {
        std::vector<int> next(from, from + p);
        for (int s = 0; s < p; ++s) {
            for (int w : g.adj[from[s]]) {
                bool ok = true;
                for (int j = 0; j < p && ok; ++j)
                    if (j != s && dm.at(w, from[j]) < d) ok = false;
                if (ok) {
                    next[s] = w;
                    emit(next.data());
                    next[s] = from[s];
                }
            }
        }
        return;
    }

    const bool may_stay = cg.rule == MovementRule::strong;
    std::vector<int> next(p);
    std::function<void(int, bool)> rec = [&](int s, bool any_moved) {
        if (s == p) {
            if (!may_stay || any_moved) emit(next.data());
            return;
        }
        auto place = [&](int w, bool moved) {
            for (int j = 0; j < s; ++j)
                if (dm.at(w, next[j]) < d) return;
            next[s] = w;
            rec(s + 1, any_moved || moved);
        };
        if (may_stay) place(from[s], false);
        for (int w : g.adj[from[s]]) place(w, true);
    };
    rec(0, false);
}

}  // namespace detail

// Enumerates all ordered p-tuples with pairwise distance >= d.  Aborts
// with NodeLimitError once the count of valid configurations would
// exceed node_limit; no partial result is kept.
// TODO: quotient configurations by player permutation; all three rules
// are symmetric in the players, so this cuts node counts up to p!-fold.
inline ConfigGraph build_config_graph(const Graph& g, int players, int min_distance,
                                      MovementRule rule,
                                      std::size_t node_limit = kDefaultNodeLimit) {
    if (players < 1) throw PreconditionError("build_config_graph requires players >= 1");
    if (min_distance < 1) throw PreconditionError("build_config_graph requires d >= 1");
    if (g.n == 0) throw PreconditionError("build_config_graph requires a non-empty graph");

    ConfigGraph cg;
    cg.graph = g;
    cg.dist = all_pairs_distances(g);
    cg.rule = rule;
    cg.players = players;
    cg.min_distance = min_distance;
    cg.coord_bits = g.n <= 1 ? 1 : std::bit_width(static_cast<unsigned>(g.n - 1));
    if (cg.coord_bits * players > 64)
        throw NodeLimitError(node_limit, 0);  // key space alone exceeds any usable limit

    std::size_t count = 0;
    std::vector<int> tuple(static_cast<std::size_t>(players));
    std::function<void(int)> rec = [&](int s) {
        if (s == players) {
            if (++count > node_limit) throw NodeLimitError(node_limit, count);
            cg.nodes.insert(cg.nodes.end(), tuple.begin(), tuple.end());
            return;
        }
        for (int v = 0; v < g.n; ++v) {
            bool ok = true;
            for (int j = 0; j < s && ok; ++j) {
                if (!cg.dist.reachable(v, tuple[static_cast<std::size_t>(j)]) ||
                    cg.dist.at(v, tuple[static_cast<std::size_t>(j)]) < min_distance)
                    ok = false;
            }
            if (ok) {
                tuple[static_cast<std::size_t>(s)] = v;
                rec(s + 1);
            }
        }
    };
    rec(0);

    cg.index.reserve(count * 2);
    for (std::size_t id = 0; id < count; ++id)
        cg.index.emplace(cg.encode(cg.config(static_cast<int>(id))), static_cast<int>(id));
    return cg;
}

// Calls fn(neighbor_id) for every configuration adjacent to node id.
template <typename Fn>
void for_each_neighbor(const ConfigGraph& cg, int id, Fn&& fn) {
    detail::for_each_move(cg, cg.config(id), [&](const int* next) {
        auto it = cg.index.find(cg.encode(next));
        // Every emitted move lands on a valid configuration by construction.
        fn(it->second);
    });
}

// Component decomposition plus the tour-feasibility criterion: a
// component is feasible when for every player index s and vertex v some
// member configuration has position s = v.  A tour with min distance
// >= d exists iff some component is feasible (walks inside a component
// can be chained through one witness per (s, v) pair).
struct ComponentAnalysis {
    bool feasible = false;
    int feasible_root = -1;          // BFS root of the first feasible component
    int component_count = 0;
    std::vector<int> component_of;   // per node
    std::size_t edge_count = 0;      // undirected edges of the whole config graph
};

inline ComponentAnalysis analyze_components(const ConfigGraph& cg) {
    const std::size_t count = cg.node_count();
    const int p = cg.players;
    const int n = cg.graph.n;

    ComponentAnalysis res;
    res.component_of.assign(count, -1);
    std::size_t degree_sum = 0;

    std::vector<int> queue;
    std::vector<bool> seen_sv(static_cast<std::size_t>(p) * n);
    for (std::size_t root = 0; root < count; ++root) {
        if (res.component_of[root] != -1) continue;
        const int comp = res.component_count++;
        std::fill(seen_sv.begin(), seen_sv.end(), false);
        int covered = 0;

        queue.assign(1, static_cast<int>(root));
        res.component_of[root] = comp;
        for (std::size_t head = 0; head < queue.size(); ++head) {
            int u = queue[head];
            const int* conf = cg.config(u);
            for (int s = 0; s < p; ++s) {
                std::size_t k = static_cast<std::size_t>(s) * n + conf[s];
                if (!seen_sv[k]) {
                    seen_sv[k] = true;
                    ++covered;
                }
            }
            for_each_neighbor(cg, u, [&](int v) {
                ++degree_sum;
                if (res.component_of[static_cast<std::size_t>(v)] == -1) {
                    res.component_of[static_cast<std::size_t>(v)] = comp;
                    queue.push_back(v);
                }
            });
        }
        if (covered == p * n && !res.feasible) {
            res.feasible = true;
            res.feasible_root = static_cast<int>(root);
        }
    }
    res.edge_count = degree_sum / 2;
    return res;
}

struct FeasibilityResult {
    bool feasible = false;
    int component_id = -1;
};

inline FeasibilityResult feasible(const ConfigGraph& cg) {
    auto an = analyze_components(cg);
    if (!an.feasible) return {};
    return {true, an.component_of[static_cast<std::size_t>(an.feasible_root)]};
}

// Builds a verifying tour from a feasible component: BFS tree from the
// root, one witness configuration per (player, vertex) pair, tree paths
// chained between consecutive witnesses.  Length is not minimized.
inline March extract_witness_tour(const ConfigGraph& cg, int feasible_root) {
    const int p = cg.players;
    const int n = cg.graph.n;

    std::unordered_map<int, int> parent, depth;
    parent.emplace(feasible_root, -1);
    depth.emplace(feasible_root, 0);
    std::vector<int> witness(static_cast<std::size_t>(p) * n, -1);
    int covered = 0;

    std::vector<int> queue{feasible_root};
    for (std::size_t head = 0; head < queue.size(); ++head) {
        int u = queue[head];
        const int* conf = cg.config(u);
        for (int s = 0; s < p; ++s) {
            auto& w = witness[static_cast<std::size_t>(s) * n + conf[s]];
            if (w == -1) {
                w = u;
                ++covered;
            }
        }
        for_each_neighbor(cg, u, [&](int v) {
            if (!parent.count(v)) {
                parent.emplace(v, u);
                depth.emplace(v, depth.at(u) + 1);
                queue.push_back(v);
            }
        });
    }
    if (covered != p * n)
        throw PreconditionError("extract_witness_tour: component is not coordinate-surjective");

    // Tree path between two nodes via the lowest common ancestor.
    auto tree_path = [&](int a, int b) {
        std::vector<int> up{a}, down{b};
        int x = a, y = b;
        while (depth.at(x) > depth.at(y)) up.push_back(x = parent.at(x));
        while (depth.at(y) > depth.at(x)) down.push_back(y = parent.at(y));
        while (x != y) {
            up.push_back(x = parent.at(x));
            down.push_back(y = parent.at(y));
        }
        up.insert(up.end(), down.rbegin() + 1, down.rend());
        return up;  // a .. lca .. b inclusive
    };

    std::vector<int> route{feasible_root};
    for (int s = 0; s < p; ++s) {
        for (int v = 0; v < n; ++v) {
            int target = witness[static_cast<std::size_t>(s) * n + v];
            if (target == route.back()) continue;
            auto seg = tree_path(route.back(), target);
            route.insert(route.end(), seg.begin() + 1, seg.end());
        }
    }

    March tour;
    tour.tracks.assign(static_cast<std::size_t>(p), {});
    for (auto& tr : tour.tracks) tr.reserve(route.size());
    for (int id : route) {
        const int* conf = cg.config(id);
        for (int s = 0; s < p; ++s) tour.tracks[static_cast<std::size_t>(s)].push_back(conf[s]);
    }
    return tour;
}

// Capacity computation result.  Node/edge counts describe the config
// graph searched at the returned player count.
struct CapacityReport {
    int capacity = 0;
    MovementRule rule = MovementRule::direct;
    int min_distance = 1;
    bool below_two_flag = false;
    std::size_t config_nodes = 0;
    std::size_t config_edges = 0;
    std::optional<March> witness;
};

namespace detail {

inline void check_capacity_preconditions(const Graph& g, int d, MovementRule rule) {
    if (g.n < 2) throw PreconditionError("capacity requires a non-trivial graph");
    if (d < 1) throw PreconditionError("capacity requires d >= 1");
    if (!is_connected(g)) throw PreconditionError("capacity requires a connected graph");
    if (rule == MovementRule::cartesian && is_path_graph(g))
        throw PreconditionError("cartesian capacity is undefined for paths");
}

}  // namespace detail

// Maximum p >= 2 admitting a tour with pairwise distance >= d under the
// rule; 1 with below_two_flag when even p = 2 is infeasible.  Deleting a
// track from a valid tour leaves a valid tour (for the cartesian rule
// after contracting no-move steps), so feasibility is monotone in p and
// the search ascends from p = 2 to the first infeasible count.
inline CapacityReport capacity(const Graph& g, int d, MovementRule rule,
                               std::size_t node_limit = kDefaultNodeLimit) {
    detail::check_capacity_preconditions(g, d, rule);

    CapacityReport rep;
    rep.rule = rule;
    rep.min_distance = d;

    std::optional<ConfigGraph> best_cg;
    int best_root = -1;
    for (int p = 2; p <= g.n; ++p) {
        ConfigGraph cg = build_config_graph(g, p, d, rule, node_limit);
        auto an = analyze_components(cg);
        if (!an.feasible) break;
        rep.capacity = p;
        rep.config_nodes = cg.node_count();
        rep.config_edges = an.edge_count;
        best_cg = std::move(cg);
        best_root = an.feasible_root;
    }

    if (rep.capacity == 0) {
        rep.capacity = 1;
        rep.below_two_flag = true;
        ConfigGraph cg = build_config_graph(g, 1, d, rule, node_limit);
        auto an = analyze_components(cg);
        rep.config_nodes = cg.node_count();
        rep.config_edges = an.edge_count;
        best_cg = std::move(cg);
        best_root = an.feasible_root;
    }

    rep.witness = extract_witness_tour(*best_cg, best_root);
    auto check = validate_march(g, *rep.witness, rule, d);
    if (!check.ok() || !check.is_tour)
        throw Error("internal: extracted witness failed verification");
    return rep;
}

// Largest d >= 1 for which two players admit a tour with pairwise
// distance >= d, or 0 when even d = 1 is infeasible.  Equals the vertex
// span of the corresponding variant.  Feasibility is monotone in d, so
// the scan ascends until the first failure.
inline int span(const Graph& g, MovementRule rule,
                std::size_t node_limit = kDefaultNodeLimit) {
    if (g.n < 2) throw PreconditionError("span requires a non-trivial graph");
    if (!is_connected(g)) throw PreconditionError("span requires a connected graph");

    const int diam = diameter(g);
    int best = 0;
    for (int d = 1; d <= diam; ++d) {
        ConfigGraph cg = build_config_graph(g, 2, d, rule, node_limit);
        if (!analyze_components(cg).feasible) break;
        best = d;
    }
    return best;
}

}  // namespace capax
