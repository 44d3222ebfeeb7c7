#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <queue>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "capax/errors.hpp"

namespace capax {

// Simple undirected graph on vertices 0..n-1.  Construct through
// make_graph / parse_graph / make_family; treat as immutable afterwards.
struct Graph {
    int n = 0;
    std::vector<std::pair<int, int>> edges;  // u < v, sorted, no duplicates
    std::vector<std::vector<int>> adj;       // sorted neighbor lists

    int vertex_count() const { return n; }
    int edge_count() const { return static_cast<int>(edges.size()); }
    int degree(int v) const { return static_cast<int>(adj[v].size()); }

    bool has_edge(int u, int v) const {
        if (u == v) return false;
        const auto& nb = adj[u].size() <= adj[v].size() ? adj[u] : adj[v];
        int other = adj[u].size() <= adj[v].size() ? v : u;
        return std::binary_search(nb.begin(), nb.end(), other);
    }

    bool operator==(const Graph& other) const { return n == other.n && edges == other.edges; }
};

// Builds a graph from an edge list, collapsing duplicates.  Loops and
// out-of-range endpoints are rejected.
inline Graph make_graph(int n, std::vector<std::pair<int, int>> edge_list) {
    if (n < 0) throw PreconditionError("vertex count must be non-negative");
    for (auto& [u, v] : edge_list) {
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw PreconditionError("edge endpoint out of range: " + std::to_string(u) + " " +
                                    std::to_string(v));
        if (u == v) throw PreconditionError("loop edge at vertex " + std::to_string(u));
        if (u > v) std::swap(u, v);
    }
    std::sort(edge_list.begin(), edge_list.end());
    edge_list.erase(std::unique(edge_list.begin(), edge_list.end()), edge_list.end());

    Graph g;
    g.n = n;
    g.edges = std::move(edge_list);
    g.adj.assign(n, {});
    for (auto [u, v] : g.edges) {
        g.adj[u].push_back(v);
        g.adj[v].push_back(u);
    }
    for (auto& nb : g.adj) std::sort(nb.begin(), nb.end());
    return g;
}

// Parses the edge-list format: first line "n m", then m lines "u v".
// Blank lines are not allowed inside the edge block.
inline Graph parse_graph(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int line_no = 0;

    auto next_line = [&]() -> bool {
        ++line_no;
        return static_cast<bool>(std::getline(in, line));
    };

    if (!next_line()) throw ParseError(1, "missing header line \"n m\"");
    int n = 0;
    long m = 0;
    {
        std::istringstream hdr(line);
        std::string extra;
        if (!(hdr >> n >> m) || (hdr >> extra))
            throw ParseError(line_no, "expected header \"n m\", got \"" + line + "\"");
        if (n < 0 || m < 0) throw ParseError(line_no, "negative count in header");
    }

    std::vector<std::pair<int, int>> edge_list;
    edge_list.reserve(static_cast<std::size_t>(m));
    for (long i = 0; i < m; ++i) {
        if (!next_line()) throw ParseError(line_no + 1, "expected edge line, got end of input");
        std::istringstream es(line);
        int u = 0, v = 0;
        std::string extra;
        if (!(es >> u >> v) || (es >> extra))
            throw ParseError(line_no, "expected edge \"u v\", got \"" + line + "\"");
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw ParseError(line_no, "vertex out of range 0.." + std::to_string(n - 1));
        if (u == v) throw ParseError(line_no, "loop edge at vertex " + std::to_string(u));
        edge_list.emplace_back(u, v);
    }
    return make_graph(n, std::move(edge_list));
}

// ---------------------------------------------------------------------------
// Graph families with canonical labelings.

inline Graph path_graph(int n) {
    if (n < 2) throw PreconditionError("path requires n >= 2");
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
    return make_graph(n, std::move(e));
}

inline Graph cycle_graph(int n) {
    if (n < 3) throw PreconditionError("cycle requires n >= 3");
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
    e.emplace_back(n - 1, 0);
    return make_graph(n, std::move(e));
}

inline Graph complete_graph(int n) {
    if (n < 2) throw PreconditionError("complete graph requires n >= 2");
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
    return make_graph(n, std::move(e));
}

// K_{r,s} with X = {0..r-1}, Y = {r..r+s-1}.
inline Graph complete_bipartite_graph(int r, int s) {
    if (r < 1 || s < 1) throw PreconditionError("complete bipartite requires r,s >= 1");
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < s; ++j) e.emplace_back(i, r + j);
    return make_graph(r + s, std::move(e));
}

// Outer 5-cycle 0..4, spokes i -- i+5, inner 5-cycle with step 2.
inline Graph petersen_graph() {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < 5; ++i) {
        e.emplace_back(i, (i + 1) % 5);
        e.emplace_back(i, i + 5);
        e.emplace_back(5 + i, 5 + (i + 2) % 5);
    }
    return make_graph(10, std::move(e));
}

struct FamilySpec {
    enum class Kind { path, cycle, complete, complete_bipartite, petersen };
    Kind kind;
    int a = 0;  // n, or r for bipartite
    int b = 0;  // s for bipartite
};

// Descriptor strings: "path:n", "cycle:n", "complete:n",
// "complete_bipartite:r,s", "petersen".
inline FamilySpec parse_family(const std::string& descriptor) {
    auto colon = descriptor.find(':');
    std::string name = descriptor.substr(0, colon);
    std::string args = colon == std::string::npos ? "" : descriptor.substr(colon + 1);

    auto parse_int = [&](const std::string& s) {
        try {
            std::size_t used = 0;
            int v = std::stoi(s, &used);
            if (used != s.size()) throw std::invalid_argument("");
            return v;
        } catch (const std::exception&) {
            throw PreconditionError("bad family parameter \"" + s + "\" in \"" + descriptor + "\"");
        }
    };

    if (name == "petersen") {
        if (!args.empty()) throw PreconditionError("petersen takes no parameters");
        return {FamilySpec::Kind::petersen, 0, 0};
    }
    if (name == "path" || name == "cycle" || name == "complete") {
        if (args.empty()) throw PreconditionError("family \"" + name + "\" needs :n");
        FamilySpec::Kind k = name == "path"    ? FamilySpec::Kind::path
                             : name == "cycle" ? FamilySpec::Kind::cycle
                                               : FamilySpec::Kind::complete;
        return {k, parse_int(args), 0};
    }
    if (name == "complete_bipartite") {
        auto comma = args.find(',');
        if (comma == std::string::npos)
            throw PreconditionError("complete_bipartite needs :r,s");
        return {FamilySpec::Kind::complete_bipartite, parse_int(args.substr(0, comma)),
                parse_int(args.substr(comma + 1))};
    }
    throw PreconditionError("unknown family \"" + name + "\"");
}

inline Graph make_family(const FamilySpec& spec) {
    switch (spec.kind) {
        case FamilySpec::Kind::path: return path_graph(spec.a);
        case FamilySpec::Kind::cycle: return cycle_graph(spec.a);
        case FamilySpec::Kind::complete: return complete_graph(spec.a);
        case FamilySpec::Kind::complete_bipartite:
            return complete_bipartite_graph(spec.a, spec.b);
        case FamilySpec::Kind::petersen: return petersen_graph();
    }
    throw PreconditionError("unreachable family kind");
}

inline Graph make_family(const std::string& descriptor) {
    return make_family(parse_family(descriptor));
}

// ---------------------------------------------------------------------------
// Distances.

// All-pairs hop distances.  Pairs in different components are marked
// unreachable; the sentinel never enters min computations unguarded.
class DistanceMatrix {
public:
    static constexpr int kUnreachable = -1;

    DistanceMatrix() = default;
    DistanceMatrix(int n, std::vector<int> data) : n_(n), d_(std::move(data)) {}

    int size() const { return n_; }
    bool reachable(int u, int v) const { return d_[idx(u, v)] != kUnreachable; }
    // Valid only when reachable(u, v).
    int at(int u, int v) const { return d_[idx(u, v)]; }

private:
    std::size_t idx(int u, int v) const {
        return static_cast<std::size_t>(u) * static_cast<std::size_t>(n_) +
               static_cast<std::size_t>(v);
    }
    int n_ = 0;
    std::vector<int> d_;
};

inline DistanceMatrix all_pairs_distances(const Graph& g) {
    std::vector<int> d(static_cast<std::size_t>(g.n) * g.n, DistanceMatrix::kUnreachable);
    std::vector<int> queue;
    for (int s = 0; s < g.n; ++s) {
        int* row = d.data() + static_cast<std::size_t>(s) * g.n;
        row[s] = 0;
        queue.assign(1, s);
        for (std::size_t head = 0; head < queue.size(); ++head) {
            int u = queue[head];
            for (int v : g.adj[u]) {
                if (row[v] == DistanceMatrix::kUnreachable) {
                    row[v] = row[u] + 1;
                    queue.push_back(v);
                }
            }
        }
    }
    return DistanceMatrix(g.n, std::move(d));
}

// ---------------------------------------------------------------------------
// Connectivity and structure.

struct ConnectivityResult {
    bool connected = false;
    int component_count = 0;
    std::vector<int> component;  // component id per vertex, ids 0..count-1
};

// Connectivity of g, or of the spanning subgraph (V, edge_subset) when a
// subset is supplied.  Every supplied edge must exist in g.
inline ConnectivityResult connectivity(
    const Graph& g, const std::optional<std::vector<std::pair<int, int>>>& edge_subset = {}) {
    std::vector<std::vector<int>> adj;
    if (edge_subset) {
        adj.assign(g.n, {});
        for (auto [u, v] : *edge_subset) {
            if (u < 0 || u >= g.n || v < 0 || v >= g.n || !g.has_edge(u, v))
                throw PreconditionError("edge subset contains edge not in graph: " +
                                        std::to_string(u) + " " + std::to_string(v));
            adj[u].push_back(v);
            adj[v].push_back(u);
        }
    }
    const auto& use = edge_subset ? adj : g.adj;

    ConnectivityResult res;
    res.component.assign(g.n, -1);
    std::vector<int> stack;
    for (int s = 0; s < g.n; ++s) {
        if (res.component[s] != -1) continue;
        int id = res.component_count++;
        res.component[s] = id;
        stack.assign(1, s);
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int v : use[u]) {
                if (res.component[v] == -1) {
                    res.component[v] = id;
                    stack.push_back(v);
                }
            }
        }
    }
    res.connected = res.component_count <= 1;
    return res;
}

inline bool is_connected(const Graph& g) { return connectivity(g).connected; }

// Largest finite distance; requires a connected graph.
inline int diameter(const Graph& g) {
    if (!is_connected(g)) throw PreconditionError("diameter requires a connected graph");
    auto dm = all_pairs_distances(g);
    int best = 0;
    for (int u = 0; u < g.n; ++u)
        for (int v = u + 1; v < g.n; ++v) best = std::max(best, dm.at(u, v));
    return best;
}

// Cut vertices of a connected graph, ascending.
inline std::vector<int> articulation_points(const Graph& g) {
    if (!is_connected(g)) throw PreconditionError("articulation_points requires a connected graph");
    std::vector<int> disc(g.n, -1), low(g.n, 0);
    std::vector<bool> is_cut(g.n, false);
    int timer = 0;

    // Iterative DFS; frames carry the neighbor cursor.
    struct Frame {
        int v, parent;
        std::size_t next;
    };
    std::vector<Frame> stack;
    for (int root = 0; root < g.n; ++root) {
        if (disc[root] != -1) continue;
        int root_children = 0;
        disc[root] = low[root] = timer++;
        stack.push_back({root, -1, 0});
        while (!stack.empty()) {
            Frame& f = stack.back();
            if (f.next < g.adj[f.v].size()) {
                int w = g.adj[f.v][f.next++];
                if (w == f.parent) continue;
                if (disc[w] == -1) {
                    disc[w] = low[w] = timer++;
                    if (f.v == root) ++root_children;
                    stack.push_back({w, f.v, 0});
                } else {
                    low[f.v] = std::min(low[f.v], disc[w]);
                }
            } else {
                int v = f.v, parent = f.parent;
                stack.pop_back();
                if (parent != -1) {
                    low[parent] = std::min(low[parent], low[v]);
                    if (parent != root && low[v] >= disc[parent]) is_cut[parent] = true;
                }
            }
        }
        if (root_children > 1) is_cut[root] = true;
    }

    std::vector<int> cuts;
    for (int v = 0; v < g.n; ++v)
        if (is_cut[v]) cuts.push_back(v);
    return cuts;
}

// True when g is a path graph under any labeling (includes K2).
inline bool is_path_graph(const Graph& g) {
    if (g.n < 2) return false;
    if (g.edge_count() != g.n - 1) return false;
    if (!is_connected(g)) return false;
    for (int v = 0; v < g.n; ++v)
        if (g.degree(v) > 2) return false;
    return true;
}

// 2-coloring; returns the two classes or nullopt if an odd cycle exists.
inline std::optional<std::pair<std::vector<int>, std::vector<int>>> bipartition(const Graph& g) {
    std::vector<int> color(g.n, -1);
    std::vector<int> stack;
    for (int s = 0; s < g.n; ++s) {
        if (color[s] != -1) continue;
        color[s] = 0;
        stack.assign(1, s);
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int v : g.adj[u]) {
                if (color[v] == -1) {
                    color[v] = color[u] ^ 1;
                    stack.push_back(v);
                } else if (color[v] == color[u]) {
                    return std::nullopt;
                }
            }
        }
    }
    std::pair<std::vector<int>, std::vector<int>> parts;
    for (int v = 0; v < g.n; ++v) (color[v] == 0 ? parts.first : parts.second).push_back(v);
    return parts;
}

// DFS walk from `start` that traverses each spanning-tree edge twice and
// returns to the start; visits every vertex of a connected graph.
inline std::vector<int> spanning_walk(const Graph& g, int start = 0) {
    if (start < 0 || start >= g.n) throw PreconditionError("spanning_walk: bad start vertex");
    if (!is_connected(g)) throw PreconditionError("spanning_walk requires a connected graph");
    std::vector<int> walk{start};
    std::vector<bool> seen(g.n, false);
    seen[start] = true;
    std::function<void(int)> dfs = [&](int u) {
        for (int v : g.adj[u]) {
            if (!seen[v]) {
                seen[v] = true;
                walk.push_back(v);
                dfs(v);
                walk.push_back(u);
            }
        }
    };
    dfs(start);
    return walk;
}

// ---------------------------------------------------------------------------
// Enumeration of connected labeled graphs (exhaustive test driver).

// Calls fn once for every connected labeled graph on n vertices,
// 2 <= n <= 7, in ascending edge-mask order.
inline void for_each_connected_labeled_graph(int n, const std::function<void(const Graph&)>& fn) {
    if (n < 2 || n > 7)
        throw PreconditionError("labeled enumeration supports 2 <= n <= 7");
    std::vector<std::pair<int, int>> all_edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) all_edges.emplace_back(i, j);
    const int m = static_cast<int>(all_edges.size());

    std::vector<int> parent(n);
    for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
        // Union-find connectivity before materializing the graph.
        for (int i = 0; i < n; ++i) parent[i] = i;
        auto find = [&](int x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        int comps = n;
        for (int e = 0; e < m; ++e) {
            if (!(mask >> e & 1)) continue;
            int a = find(all_edges[e].first), b = find(all_edges[e].second);
            if (a != b) {
                parent[a] = b;
                --comps;
            }
        }
        if (comps != 1) continue;

        std::vector<std::pair<int, int>> edge_list;
        for (int e = 0; e < m; ++e)
            if (mask >> e & 1) edge_list.push_back(all_edges[e]);
        fn(make_graph(n, std::move(edge_list)));
    }
}

inline long count_connected_labeled_graphs(int n) {
    long count = 0;
    for_each_connected_labeled_graph(n, [&](const Graph&) { ++count; });
    return count;
}

// `count` uniform random connected edge subsets of K_n (rejection
// sampling).  Only raw engine output is consumed, so the sequence is
// identical across platforms for a given seed.
inline std::vector<Graph> sample_connected_graphs(int n, int count, std::uint64_t seed) {
    if (n < 2 || n > 24) throw PreconditionError("sampled enumeration supports 2 <= n <= 24");
    if (count < 0) throw PreconditionError("sample count must be non-negative");
    std::vector<std::pair<int, int>> all_edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) all_edges.emplace_back(i, j);
    const int m = static_cast<int>(all_edges.size());

    std::mt19937_64 rng(seed);
    std::vector<Graph> out;
    out.reserve(static_cast<std::size_t>(count));
    while (static_cast<int>(out.size()) < count) {
        std::uint64_t bits = 0;
        int have = 0;
        std::vector<std::pair<int, int>> edge_list;
        for (int e = 0; e < m; ++e) {
            if (have == 0) {
                bits = rng();
                have = 64;
            }
            if (bits & 1) edge_list.push_back(all_edges[e]);
            bits >>= 1;
            --have;
        }
        Graph g = make_graph(n, std::move(edge_list));
        if (is_connected(g)) out.push_back(std::move(g));
    }
    return out;
}

}  // namespace capax
