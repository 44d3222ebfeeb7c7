#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "capax/errors.hpp"
#include "capax/graph.hpp"
#include "capax/march.hpp"

namespace capax {

// A spanning set of vertex-disjoint components, each a single edge or a
// cycle.  Components with 2 vertices are edges; longer ones are cyclic
// vertex sequences whose consecutive pairs (closing pair included) are
// edges of the host graph.
struct CycleEdgeCover {
    std::vector<std::vector<int>> components;
};

inline void check_cover(const Graph& g, const CycleEdgeCover& cover) {
    std::vector<bool> used(g.n, false);
    for (const auto& comp : cover.components) {
        if (comp.size() < 2) throw PreconditionError("cover component with fewer than 2 vertices");
        for (int v : comp) {
            if (v < 0 || v >= g.n) throw PreconditionError("cover vertex out of range");
            if (used[v]) throw PreconditionError("cover components are not vertex-disjoint");
            used[v] = true;
        }
        const std::size_t m = comp.size();
        for (std::size_t i = 0; i < (m == 2 ? 1 : m); ++i)
            if (!g.has_edge(comp[i], comp[(i + 1) % m]))
                throw PreconditionError("cover component uses a non-edge");
    }
    for (int v = 0; v < g.n; ++v)
        if (!used[v]) throw PreconditionError("cover misses vertex " + std::to_string(v));
}

namespace detail {

// A cover is equivalent to a fixed-point-free permutation pi with
// u pi(u) always an edge: 2-cycles of pi are the edge components, longer
// cycles the cycle components.  Such a pi is a perfect matching in the
// bipartite double (left copy of V to right copy of V, arcs along edges
// in both directions).  Kuhn's augmenting search, vertices in ascending
// order; `forced` pins pi[forced.first] = forced.second.
inline std::optional<std::vector<int>> adjacency_permutation(
    const Graph& g, std::optional<std::pair<int, int>> forced) {
    const int n = g.n;
    std::vector<int> match_right(n, -1);  // right vertex -> left vertex
    std::vector<int> match_left(n, -1);   // left vertex -> right vertex
    int forced_right = -1;
    if (forced) {
        auto [u, v] = *forced;
        if (u < 0 || u >= n || v < 0 || v >= n || !g.has_edge(u, v))
            throw PreconditionError("forced edge not in graph");
        forced_right = v;
        match_left[u] = v;
        match_right[v] = u;
    }

    std::vector<bool> visited(n);
    std::function<bool(int)> augment = [&](int left) -> bool {
        for (int right : g.adj[left]) {
            if (right == forced_right || visited[right]) continue;
            visited[right] = true;
            if (match_right[right] == -1 || augment(match_right[right])) {
                match_right[right] = left;
                match_left[left] = right;
                return true;
            }
        }
        return false;
    };

    for (int left = 0; left < n; ++left) {
        if (match_left[left] != -1) continue;
        std::fill(visited.begin(), visited.end(), false);
        if (!augment(left)) return std::nullopt;
    }
    return match_left;
}

// Splits a fixed-point-free permutation into cover components; each
// cycle starts at its smallest vertex and follows pi.
inline CycleEdgeCover permutation_to_cover(const std::vector<int>& pi) {
    const int n = static_cast<int>(pi.size());
    CycleEdgeCover cover;
    std::vector<bool> done(n, false);
    for (int v = 0; v < n; ++v) {
        if (done[v]) continue;
        std::vector<int> comp;
        int u = v;
        do {
            comp.push_back(u);
            done[u] = true;
            u = pi[static_cast<std::size_t>(u)];
        } while (u != v);
        cover.components.push_back(std::move(comp));
    }
    return cover;
}

}  // namespace detail

// A vertex-disjoint cycle/edge cover of g, or nullopt if none exists.
// When forced_edge = (u, v) is given, the underlying permutation sends u
// to v, so the edge uv lies in the returned cover.
inline std::optional<CycleEdgeCover> find_q_factor(
    const Graph& g, std::optional<std::pair<int, int>> forced_edge = std::nullopt) {
    auto pi = detail::adjacency_permutation(g, forced_edge);
    if (!pi) return std::nullopt;
    return detail::permutation_to_cover(*pi);
}

// Edges that belong to at least one cover.  Either orientation of the
// forced pair works: reversing all cycles of pi maps one to the other.
inline std::vector<std::pair<int, int>> covered_edges(const Graph& g) {
    std::vector<std::pair<int, int>> covered;
    for (auto [u, v] : g.edges)
        if (detail::adjacency_permutation(g, std::make_pair(u, v))) covered.emplace_back(u, v);
    return covered;
}

// ---------------------------------------------------------------------------
// Cover <-> single march step (the two directions of the equivalence).

// One-step collision-free march induced by a cover: edge components swap
// endpoints, cycle components rotate one position.  reverse_cycle[i]
// flips the stored orientation of component i (ignored for edges).
// Tracks are ordered by starting vertex.
inline March cover_step(const Graph& g, const CycleEdgeCover& cover,
                        const std::vector<bool>& reverse_cycle = {}) {
    check_cover(g, cover);
    if (!reverse_cycle.empty() && reverse_cycle.size() != cover.components.size())
        throw PreconditionError("one orientation flag per component expected");

    std::vector<int> destination(g.n, -1);
    for (std::size_t c = 0; c < cover.components.size(); ++c) {
        const auto& comp = cover.components[c];
        const bool rev = c < reverse_cycle.size() && reverse_cycle[c] && comp.size() > 2;
        const std::size_t m = comp.size();
        for (std::size_t i = 0; i < m; ++i) {
            int to = rev ? comp[(i + m - 1) % m] : comp[(i + 1) % m];
            destination[static_cast<std::size_t>(comp[i])] = to;
        }
    }

    March f;
    f.tracks.reserve(static_cast<std::size_t>(g.n));
    for (int v = 0; v < g.n; ++v) f.tracks.push_back({v, destination[static_cast<std::size_t>(v)]});
    return f;
}

// Recovers the cover acting at step t of a full-occupancy collision-free
// march in which every track moves at that step.
inline CycleEdgeCover step_to_cover(const Graph& g, const March& f, long t) {
    if (f.players() != g.n)
        throw PreconditionError("step_to_cover requires one track per vertex");
    if (t < 0 || t >= f.length()) throw PreconditionError("step index out of range");

    std::vector<int> pi(static_cast<std::size_t>(g.n), -1);
    for (int s = 0; s < f.players(); ++s) {
        int a = f.tracks[static_cast<std::size_t>(s)][static_cast<std::size_t>(t)];
        int b = f.tracks[static_cast<std::size_t>(s)][static_cast<std::size_t>(t + 1)];
        if (a < 0 || a >= g.n || b < 0 || b >= g.n)
            throw PreconditionError("track vertex out of range");
        if (a == b) throw PreconditionError("step_to_cover: track stays at step " + std::to_string(t));
        if (!g.has_edge(a, b)) throw PreconditionError("step_to_cover: step crosses a non-edge");
        if (pi[static_cast<std::size_t>(a)] != -1)
            throw PreconditionError("step_to_cover: stage has colliding tracks");
        pi[static_cast<std::size_t>(a)] = b;
    }
    for (int v = 0; v < g.n; ++v)
        if (pi[static_cast<std::size_t>(v)] == -1)
            throw PreconditionError("step_to_cover: stage does not occupy every vertex");
    return detail::permutation_to_cover(pi);
}

// ---------------------------------------------------------------------------
// Topfull classification.

struct Obstruction {
    enum class Kind { leaf, cut_vertex, disconnected_covered_subgraph };
    Kind kind;
    int vertex = -1;                              // leaf / cut vertex
    std::vector<std::pair<int, int>> covered;     // for the subgraph kind
};

// Classification outcome: positive verdicts carry a verifying tour,
// negative ones a checkable obstruction.
struct TopfullVerdict {
    bool is_topfull = false;
    MovementRule variant = MovementRule::direct;
    std::optional<March> witness;
    std::optional<Obstruction> obstruction;
};

March direct_topfull_tour(const Graph& g);
March cartesian_topfull_tour(const Graph& g);

// Direct-topfull iff the spanning subgraph of covered edges is connected
// (equivalently: any two vertices are joined by a path of covered
// edges — a path lies in the covered subgraph exactly when all its edges
// are covered).
inline TopfullVerdict is_direct_topfull(const Graph& g) {
    if (g.n < 2) throw PreconditionError("classification requires a non-trivial graph");
    if (!is_connected(g)) throw PreconditionError("classification requires a connected graph");

    TopfullVerdict verdict;
    verdict.variant = MovementRule::direct;

    if (g.n >= 3) {
        for (int v = 0; v < g.n; ++v) {
            if (g.degree(v) == 1) {
                verdict.obstruction = Obstruction{Obstruction::Kind::leaf, v, {}};
                return verdict;
            }
        }
    }

    auto covered = covered_edges(g);
    auto conn = connectivity(g, covered);
    if (!conn.connected) {
        verdict.obstruction =
            Obstruction{Obstruction::Kind::disconnected_covered_subgraph, -1, covered};
        return verdict;
    }
    verdict.is_topfull = true;
    verdict.witness = direct_topfull_tour(g);
    return verdict;
}

// Cartesian-topfull iff no cut vertices (for n = 3 the only eligible
// graph is the triangle, which qualifies).
inline TopfullVerdict is_cartesian_topfull(const Graph& g) {
    if (g.n < 3) throw PreconditionError("cartesian classification requires n >= 3");
    if (!is_connected(g)) throw PreconditionError("classification requires a connected graph");
    if (is_path_graph(g))
        throw PreconditionError("cartesian classification is undefined for paths");

    TopfullVerdict verdict;
    verdict.variant = MovementRule::cartesian;
    auto cuts = articulation_points(g);
    if (!cuts.empty()) {
        verdict.obstruction = Obstruction{Obstruction::Kind::cut_vertex, cuts.front(), {}};
        return verdict;
    }
    verdict.is_topfull = true;
    verdict.witness = cartesian_topfull_tour(g);
    return verdict;
}

// ---------------------------------------------------------------------------
// Simple cycle through two prescribed vertices.

namespace detail {

// Two internally vertex-disjoint u,v-paths via unit-capacity flow on the
// split graph (w_in -> w_out, capacity 1).  Arc bookkeeping is on a
// residual adjacency matrix over 2n split nodes; graphs here are small.
inline std::optional<std::pair<std::vector<int>, std::vector<int>>> two_disjoint_paths(
    const Graph& g, int u, int v) {
    const int N = 2 * g.n;  // node 2w = w_in, 2w+1 = w_out
    auto in = [](int w) { return 2 * w; };
    auto out = [](int w) { return 2 * w + 1; };

    std::vector<std::vector<int>> cap(static_cast<std::size_t>(N), std::vector<int>(static_cast<std::size_t>(N), 0));
    // Endpoints get no pass-through arc: flow starts at out(u), ends at
    // in(v), and may not recirculate through either endpoint.
    for (int w = 0; w < g.n; ++w)
        if (w != u && w != v) cap[static_cast<std::size_t>(in(w))][static_cast<std::size_t>(out(w))] = 1;
    for (auto [a, b] : g.edges) {
        cap[static_cast<std::size_t>(out(a))][static_cast<std::size_t>(in(b))] = 1;
        cap[static_cast<std::size_t>(out(b))][static_cast<std::size_t>(in(a))] = 1;
    }

    const int source = out(u), sink = in(v);
    int flow = 0;
    while (flow < 2) {
        std::vector<int> prev(static_cast<std::size_t>(N), -1);
        prev[static_cast<std::size_t>(source)] = source;
        std::vector<int> queue{source};
        for (std::size_t head = 0; head < queue.size() && prev[static_cast<std::size_t>(sink)] == -1; ++head) {
            int x = queue[head];
            for (int y = 0; y < N; ++y) {
                if (cap[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] > 0 && prev[static_cast<std::size_t>(y)] == -1) {
                    prev[static_cast<std::size_t>(y)] = x;
                    queue.push_back(y);
                }
            }
        }
        if (prev[static_cast<std::size_t>(sink)] == -1) break;
        for (int y = sink; y != source; y = prev[static_cast<std::size_t>(y)]) {
            int x = prev[static_cast<std::size_t>(y)];
            --cap[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)];
            ++cap[static_cast<std::size_t>(y)][static_cast<std::size_t>(x)];
        }
        ++flow;
    }
    if (flow < 2) return std::nullopt;

    // Decode the two paths by following saturated out->in arcs.
    std::vector<std::vector<int>> paths;
    std::vector<std::vector<bool>> used(static_cast<std::size_t>(N), std::vector<bool>(static_cast<std::size_t>(N), false));
    for (int branch = 0; branch < 2; ++branch) {
        std::vector<int> path{u};
        int w = u;
        while (w != v) {
            int next = -1;
            for (int y : g.adj[w]) {
                if (cap[static_cast<std::size_t>(out(w))][static_cast<std::size_t>(in(y))] == 0 &&
                    !used[static_cast<std::size_t>(out(w))][static_cast<std::size_t>(in(y))]) {
                    next = y;
                    break;
                }
            }
            if (next == -1) return std::nullopt;  // cancelled flow; cannot happen with unit caps
            used[static_cast<std::size_t>(out(w))][static_cast<std::size_t>(in(next))] = true;
            path.push_back(next);
            w = next;
        }
        paths.push_back(std::move(path));
    }
    return std::make_pair(paths[0], paths[1]);
}

}  // namespace detail

// A simple cycle containing u and v in a graph without cut vertices.
inline std::vector<int> cycle_through(const Graph& g, int u, int v) {
    if (g.n < 3) throw PreconditionError("cycle_through requires n >= 3");
    if (u == v) throw PreconditionError("cycle_through requires distinct vertices");
    if (u < 0 || u >= g.n || v < 0 || v >= g.n)
        throw PreconditionError("cycle_through vertex out of range");

    auto paths = detail::two_disjoint_paths(g, u, v);
    if (!paths)
        throw PreconditionError("a cut vertex separates " + std::to_string(u) + " and " +
                                std::to_string(v));
    // First path forward, second backward, dropping both shared endpoints.
    std::vector<int> cycle = paths->first;
    for (std::size_t i = paths->second.size() - 2; i >= 1; --i)
        cycle.push_back(paths->second[i]);
    return cycle;
}

// ---------------------------------------------------------------------------
// Constructive topfull tours.

// Direct n-player tour built edge by edge: for each player and each
// target vertex, walk a path inside the covered-edge subgraph; every
// path edge is realized by one step of a cover forced to contain it,
// oriented so the tracked player advances along the edge.
inline March direct_topfull_tour(const Graph& g) {
    if (g.n < 2) throw PreconditionError("direct_topfull_tour requires a non-trivial graph");
    auto covered = covered_edges(g);
    auto conn = connectivity(g, covered);
    if (!conn.connected)
        throw PreconditionError("graph is not direct-topfull: covered subgraph disconnected");

    // BFS paths inside the covered subgraph.
    std::vector<std::vector<int>> cov_adj(static_cast<std::size_t>(g.n));
    for (auto [a, b] : covered) {
        cov_adj[static_cast<std::size_t>(a)].push_back(b);
        cov_adj[static_cast<std::size_t>(b)].push_back(a);
    }
    for (auto& nb : cov_adj) std::sort(nb.begin(), nb.end());
    auto covered_path = [&](int from, int to) {
        std::vector<int> prev(static_cast<std::size_t>(g.n), -1);
        prev[static_cast<std::size_t>(from)] = from;
        std::vector<int> queue{from};
        for (std::size_t head = 0; head < queue.size(); ++head) {
            for (int y : cov_adj[static_cast<std::size_t>(queue[head])])
                if (prev[static_cast<std::size_t>(y)] == -1) {
                    prev[static_cast<std::size_t>(y)] = queue[head];
                    queue.push_back(y);
                }
        }
        std::vector<int> path;
        for (int x = to; x != from; x = prev[static_cast<std::size_t>(x)]) path.push_back(x);
        path.push_back(from);
        std::reverse(path.begin(), path.end());
        return path;
    };

    March tour;
    tour.tracks.assign(static_cast<std::size_t>(g.n), {});
    for (int v = 0; v < g.n; ++v) tour.tracks[static_cast<std::size_t>(v)] = {v};
    std::vector<int> pos(static_cast<std::size_t>(g.n));
    for (int v = 0; v < g.n; ++v) pos[static_cast<std::size_t>(v)] = v;

    auto apply_permutation_step = [&](const std::vector<int>& pi) {
        for (int s = 0; s < g.n; ++s) {
            int next = pi[static_cast<std::size_t>(pos[static_cast<std::size_t>(s)])];
            tour.tracks[static_cast<std::size_t>(s)].push_back(next);
            pos[static_cast<std::size_t>(s)] = next;
        }
    };

    for (int player = 0; player < g.n; ++player) {
        for (int target = 0; target < g.n; ++target) {
            auto path = covered_path(pos[static_cast<std::size_t>(player)], target);
            for (std::size_t i = 0; i + 1 < path.size(); ++i) {
                // The forced pair (a, b) pins pi[a] = b, so the cover's
                // cycle through a already advances the player along the edge.
                auto pi = detail::adjacency_permutation(g, std::make_pair(path[i], path[i + 1]));
                if (!pi) throw Error("internal: covered edge lost its cover");
                apply_permutation_step(*pi);
            }
        }
    }
    return tour;
}

// Patient (n-1)-player tour for graphs without cut vertices: the vacancy
// follows a spanning walk; at each stop every player is rotated through
// a common cycle with the stop vertex (|C|-1 full vacancy revolutions
// return the vacancy to the stop and let each cycle player visit all of
// the cycle), then the vacancy advances one walk edge.
inline March cartesian_topfull_tour(const Graph& g) {
    if (g.n < 3) throw PreconditionError("cartesian_topfull_tour requires n >= 3");
    if (is_path_graph(g)) throw PreconditionError("cartesian tours are undefined for paths");
    if (!articulation_points(g).empty())
        throw PreconditionError("graph is not cartesian-topfull: cut vertex present");

    const auto walk = spanning_walk(g, 0);

    March tour;
    tour.tracks.reserve(static_cast<std::size_t>(g.n - 1));
    std::vector<int> player_at(static_cast<std::size_t>(g.n), -1);
    for (int v = 1; v < g.n; ++v) {
        player_at[static_cast<std::size_t>(v)] = static_cast<int>(tour.tracks.size());
        tour.tracks.push_back({v});
    }

    auto move_player = [&](int from, int to) {
        int mover = player_at[static_cast<std::size_t>(from)];
        for (int s = 0; s < static_cast<int>(tour.tracks.size()); ++s)
            tour.tracks[static_cast<std::size_t>(s)].push_back(
                s == mover ? to : tour.tracks[static_cast<std::size_t>(s)].back());
        player_at[static_cast<std::size_t>(from)] = -1;
        player_at[static_cast<std::size_t>(to)] = mover;
    };

    for (std::size_t r = 0; r < walk.size(); ++r) {
        const int stop = walk[r];  // the vacant vertex while processing this stop
        for (int player = 0; player < g.n - 1; ++player) {
            const int at = tour.tracks[static_cast<std::size_t>(player)].back();
            auto cycle = cycle_through(g, at, stop);
            // Rotate so the vacancy's vertex leads the cycle.
            auto it = std::find(cycle.begin(), cycle.end(), stop);
            std::rotate(cycle.begin(), it, cycle.end());
            const std::size_t m = cycle.size();
            for (std::size_t rev = 0; rev + 1 < m; ++rev) {
                for (std::size_t step = 0; step < m; ++step) {
                    int vac = cycle[step % m];
                    int from = cycle[(step + 1) % m];
                    move_player(from, vac);
                }
            }
        }
        if (r + 1 < walk.size()) move_player(walk[r + 1], stop);
    }
    return tour;
}

}  // namespace capax
