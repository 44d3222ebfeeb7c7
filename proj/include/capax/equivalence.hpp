#pragma once

#include <functional>
#include <string>
#include <vector>

#include "capax/config_search.hpp"
#include "capax/graph.hpp"
#include "capax/topfull.hpp"

namespace capax {

// Classifier-versus-solver cross-check on one graph: the structural
// classification must coincide with the 1-capacity reaching its maximum
// (n for strong and direct, n-1 for cartesian; cartesian skipped on
// paths).  Returned strings describe mismatches; empty means agreement.
inline std::vector<std::string> equivalence_mismatches(const Graph& g,
                                                       std::size_t node_limit = kDefaultNodeLimit) {
    std::vector<std::string> bad;
    auto describe = [&](const std::string& what) {
        std::string edges;
        for (auto [u, v] : g.edges) edges += " " + std::to_string(u) + "-" + std::to_string(v);
        bad.push_back(what + " on n=" + std::to_string(g.n) + " edges:" + edges);
    };

    const bool direct_class = is_direct_topfull(g).is_topfull;
    const bool direct_solver = capacity(g, 1, MovementRule::direct, node_limit).capacity == g.n;
    if (direct_class != direct_solver) describe("direct classifier/solver mismatch");

    if (g.n >= 3 && !is_path_graph(g)) {
        const bool cart_class = is_cartesian_topfull(g).is_topfull;
        const bool cart_solver =
            capacity(g, 1, MovementRule::cartesian, node_limit).capacity == g.n - 1;
        if (cart_class != cart_solver) describe("cartesian classifier/solver mismatch");
    }

    if (capacity(g, 1, MovementRule::strong, node_limit).capacity != g.n)
        describe("strong capacity fell short of n");

    return bad;
}

struct EquivalenceSummary {
    long graphs_checked = 0;
    std::vector<std::string> mismatches;
    bool ok() const { return mismatches.empty(); }
};

// Exhaustive over all connected labeled graphs with n in [2, max_n],
// plus `sample_count` random connected graphs on sample_n vertices.
inline EquivalenceSummary run_equivalence_check(int max_n, int sample_n, int sample_count,
                                                std::uint64_t seed,
                                                std::size_t node_limit = kDefaultNodeLimit,
                                                const std::function<void(long)>& progress = {}) {
    EquivalenceSummary summary;
    auto check = [&](const Graph& g) {
        auto bad = equivalence_mismatches(g, node_limit);
        summary.mismatches.insert(summary.mismatches.end(), bad.begin(), bad.end());
        ++summary.graphs_checked;
        if (progress && summary.graphs_checked % 500 == 0) progress(summary.graphs_checked);
    };

    for (int n = 2; n <= max_n; ++n) for_each_connected_labeled_graph(n, check);
    if (sample_count > 0)
        for (const Graph& g : sample_connected_graphs(sample_n, sample_count, seed)) check(g);
    return summary;
}

}  // namespace capax
