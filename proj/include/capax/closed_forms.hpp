#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "capax/errors.hpp"
#include "capax/graph.hpp"
#include "capax/march.hpp"

namespace capax {

// ---------------------------------------------------------------------------
// Known span values for paths and cycles.

inline int path_span(int n, MovementRule rule) {
    if (n < 2) throw PreconditionError("path requires n >= 2");
    return rule == MovementRule::cartesian ? 0 : 1;
}

inline int cycle_span(int n, MovementRule rule) {
    if (n < 3) throw PreconditionError("cycle requires n >= 3");
    if (rule == MovementRule::cartesian) return n % 2 == 1 ? n / 2 : n / 2 - 1;
    return n / 2;
}

// ---------------------------------------------------------------------------
// Closed-form capacities.

// A capacity value backed by a formula whose hypotheses were checked
// against the input.  applicable = false means no formula covers the
// requested (family, d, rule) triple.
struct FormulaResult {
    bool applicable = false;
    int value = 0;
    std::string formula_id;
    std::vector<std::string> assumptions;
};

inline FormulaResult closed_form_capacity(const FamilySpec& family, int d, MovementRule rule) {
    FormulaResult res;
    if (d < 1) return res;

    switch (family.kind) {
        case FamilySpec::Kind::path: {
            const int n = family.a;
            if (n < 2) return res;
            if (rule == MovementRule::direct && d == 1) {
                res = {true, 2, "path-direct", {"n >= 2", "d == 1"}};
            } else if (rule == MovementRule::strong && d == 1) {
                res = {true, n, "path-strong", {"n >= 2", "d == 1"}};
            }
            return res;
        }
        case FamilySpec::Kind::cycle: {
            const int n = family.a;
            if (n < 3) return res;
            if (rule == MovementRule::cartesian) {
                if (d > cycle_span(n, rule)) return res;
                int value = n % d != 0 ? n / d : n / d - 1;
                res = {true, value, "cycle-cartesian",
                       {"n >= 3", "1 <= d <= cartesian span of the cycle"}};
            } else {
                if (d > n / 2) return res;
                res = {true, n / d, "cycle-strong-direct", {"n >= 3", "1 <= d <= floor(n/2)"}};
            }
            return res;
        }
        case FamilySpec::Kind::complete_bipartite: {
            const int r = std::min(family.a, family.b);
            if (r < 2) return res;
            if (d == 2 && rule != MovementRule::cartesian) {
                res = {true, r, "complete-bipartite",
                       {"2 <= r <= s", "d == 2", "rule is strong or direct"}};
            }
            return res;
        }
        default: return res;
    }
}

inline FormulaResult closed_form_capacity(const std::string& family_descriptor, int d,
                                          MovementRule rule) {
    return closed_form_capacity(parse_family(family_descriptor), d, rule);
}

// ---------------------------------------------------------------------------
// Constructive tour generators.

// k = floor(n/d) players rotating around the cycle in lockstep, track j
// offset by (j-1)d.  An (n-1)-tour, valid under the direct rule, with
// minimum pairwise distance exactly d.
inline March cycle_tour_direct(int n, int d) {
    if (n < 3) throw PreconditionError("cycle_tour_direct requires n >= 3");
    if (d < 1 || d > n / 2)
        throw PreconditionError("cycle_tour_direct requires 1 <= d <= floor(n/2)");
    const int k = n / d;
    March f;
    f.tracks.assign(static_cast<std::size_t>(k), {});
    for (int j = 1; j <= k; ++j) {
        auto& tr = f.tracks[static_cast<std::size_t>(j - 1)];
        tr.reserve(static_cast<std::size_t>(n));
        for (int t = 0; t < n; ++t) tr.push_back((t + (j - 1) * d) % n);
    }
    return f;
}

// Patient (n-1)k-tour on the cycle: track j sits at (j-1)d + floor((t+j-1)/k),
// so exactly one track advances per step.  Minimum distance is >= d.
inline March cycle_tour_cartesian(int n, int d) {
    if (n < 3) throw PreconditionError("cycle_tour_cartesian requires n >= 3");
    if (d < 1 || d > cycle_span(n, MovementRule::cartesian))
        throw PreconditionError("cycle_tour_cartesian requires 1 <= d <= cartesian span");
    const int k = n % d != 0 ? n / d : n / d - 1;
    const long steps = static_cast<long>(n - 1) * k;
    March f;
    f.tracks.assign(static_cast<std::size_t>(k), {});
    for (int j = 1; j <= k; ++j) {
        auto& tr = f.tracks[static_cast<std::size_t>(j - 1)];
        tr.reserve(static_cast<std::size_t>(steps + 1));
        for (long t = 0; t <= steps; ++t)
            tr.push_back(static_cast<int>(((j - 1) * d + (t + j - 1) / k) % n));
    }
    return f;
}

// r players on K_{r,s} (canonical labeling) alternating sides: track j
// visits x_{(j-1+t/2) mod r} at even t and y_{(j-1+(t-1)/2) mod s} at odd
// t.  A (2s-1)-tour, direct-valid, minimum distance exactly 2.
inline March complete_bipartite_tour(int r, int s) {
    if (r < 2 || r > s) throw PreconditionError("complete_bipartite_tour requires 2 <= r <= s");
    March f;
    f.tracks.assign(static_cast<std::size_t>(r), {});
    for (int j = 1; j <= r; ++j) {
        auto& tr = f.tracks[static_cast<std::size_t>(j - 1)];
        tr.reserve(static_cast<std::size_t>(2 * s));
        for (int t = 0; t < 2 * s; ++t) {
            if (t % 2 == 0)
                tr.push_back((j - 1 + t / 2) % r);
            else
                tr.push_back(r + (j - 1 + (t - 1) / 2) % s);
        }
    }
    return f;
}

// ---------------------------------------------------------------------------
// Hamiltonian cycles (bounded backtracking).

struct HamiltonianSearchResult {
    std::optional<std::vector<int>> cycle;
    bool budget_exhausted = false;
};

// Backtracking search anchored at vertex 0.  When the budget runs out
// the absence of a cycle is undecided, not disproved.
inline HamiltonianSearchResult find_hamiltonian_cycle(const Graph& g,
                                                      long step_budget = 10'000'000) {
    HamiltonianSearchResult res;
    if (g.n < 3) return res;
    std::vector<int> path{0};
    std::vector<bool> used(g.n, false);
    used[0] = true;
    long budget = step_budget;

    std::function<bool(int)> rec = [&](int u) -> bool {
        if (--budget < 0) {
            res.budget_exhausted = true;
            return false;
        }
        if (static_cast<int>(path.size()) == g.n) return g.has_edge(u, 0);
        for (int v : g.adj[u]) {
            if (used[v]) continue;
            used[v] = true;
            path.push_back(v);
            if (rec(v)) return true;
            if (res.budget_exhausted) return false;
            path.pop_back();
            used[v] = false;
        }
        return false;
    };
    if (rec(0)) res.cycle = path;
    return res;
}

// Weak (n-1)-tour of n/2 players on a balanced bipartite Hamiltonian
// graph: players start on alternate cycle vertices and rotate along the
// cycle, staying pairwise in the same part (distance >= 2 throughout).
inline March hamiltonian_bipartite_tour(const Graph& g,
                                        std::optional<std::vector<int>> ham_cycle = std::nullopt) {
    auto parts = bipartition(g);
    if (!parts) throw PreconditionError("hamiltonian_bipartite_tour requires a bipartite graph");
    if (parts->first.size() != parts->second.size())
        throw PreconditionError("hamiltonian_bipartite_tour requires balanced parts");
    if (g.n < 4) throw PreconditionError("hamiltonian_bipartite_tour requires n >= 4");

    std::vector<int> cycle;
    if (ham_cycle) {
        cycle = *ham_cycle;
        if (static_cast<int>(cycle.size()) != g.n)
            throw PreconditionError("supplied cycle must list every vertex once");
        std::vector<bool> used(g.n, false);
        for (int v : cycle) {
            if (v < 0 || v >= g.n || used[v])
                throw PreconditionError("supplied cycle must list every vertex once");
            used[v] = true;
        }
        for (int i = 0; i < g.n; ++i)
            if (!g.has_edge(cycle[static_cast<std::size_t>(i)],
                            cycle[static_cast<std::size_t>((i + 1) % g.n)]))
                throw PreconditionError("supplied cycle uses a non-edge");
    } else {
        auto search = find_hamiltonian_cycle(g);
        if (!search.cycle) {
            if (search.budget_exhausted)
                throw SearchBudgetError(
                    "hamiltonian cycle search budget exhausted; existence undecided");
            throw PreconditionError("graph has no hamiltonian cycle");
        }
        cycle = *search.cycle;
    }

    const int half = g.n / 2;
    March f;
    f.tracks.assign(static_cast<std::size_t>(half), {});
    for (int i = 0; i < half; ++i) {
        auto& tr = f.tracks[static_cast<std::size_t>(i)];
        tr.reserve(static_cast<std::size_t>(g.n));
        for (int t = 0; t < g.n; ++t) tr.push_back(cycle[static_cast<std::size_t>((2 * i + t) % g.n)]);
    }
    return f;
}

// ---------------------------------------------------------------------------
// Strong tours for arbitrary connected graphs.

namespace detail {

// One phase: `walker` follows `walk` while any player found on the
// walker's next vertex is displaced to the walker's previous vertex.
inline March displacement_phase(const std::vector<int>& start_positions, int walker,
                                const std::vector<int>& walk) {
    const int p = static_cast<int>(start_positions.size());
    March f;
    f.tracks.assign(static_cast<std::size_t>(p), {});
    for (int s = 0; s < p; ++s) f.tracks[static_cast<std::size_t>(s)] = {start_positions[static_cast<std::size_t>(s)]};

    for (std::size_t t = 1; t < walk.size(); ++t) {
        const int prev = walk[t - 1];
        const int next = walk[t];
        for (int s = 0; s < p; ++s) {
            auto& tr = f.tracks[static_cast<std::size_t>(s)];
            if (s == walker)
                tr.push_back(next);
            else if (tr.back() == next)
                tr.push_back(prev);  // displaced by the walker
            else
                tr.push_back(tr.back());
        }
    }
    return f;
}

}  // namespace detail

// Collision-free weak tour of n players on any connected graph: n phases
// chained by extension, each phase walking one player along a spanning
// walk with the displacement rule above.
inline March strong_topfull_tour(const Graph& g) {
    if (g.n < 1) throw PreconditionError("strong_topfull_tour requires n >= 1");
    if (!is_connected(g)) throw PreconditionError("strong_topfull_tour requires a connected graph");

    std::vector<int> positions(static_cast<std::size_t>(g.n));
    for (int v = 0; v < g.n; ++v) positions[static_cast<std::size_t>(v)] = v;
    if (g.n == 1) return March{{{0}}};

    std::optional<March> tour;
    for (int walker = 0; walker < g.n; ++walker) {
        auto walk = spanning_walk(g, positions[static_cast<std::size_t>(walker)]);
        March phase = detail::displacement_phase(positions, walker, walk);
        tour = tour ? extend(*tour, phase) : phase;
        for (int s = 0; s < g.n; ++s)
            positions[static_cast<std::size_t>(s)] = tour->tracks[static_cast<std::size_t>(s)].back();
    }
    return *tour;
}

}  // namespace capax
