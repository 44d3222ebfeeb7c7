#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <set>

#include "capax/config_search.hpp"
#include "capax/graph.hpp"
#include "capax/topfull.hpp"
#include "oracles.hpp"

using namespace capax;

namespace {

// Orientation-free canonical form of a cover: each component becomes its
// sorted vertex list plus its sorted edge list.
using Canonical = std::set<std::pair<std::vector<int>, std::set<std::pair<int, int>>>>;

Canonical canonical(const CycleEdgeCover& cover) {
    Canonical out;
    for (const auto& comp : cover.components) {
        std::vector<int> verts = comp;
        std::sort(verts.begin(), verts.end());
        std::set<std::pair<int, int>> edges;
        const std::size_t m = comp.size();
        for (std::size_t i = 0; i < (m == 2 ? 1 : m); ++i) {
            int a = comp[i], b = comp[(i + 1) % m];
            edges.insert({std::min(a, b), std::max(a, b)});
        }
        out.insert({verts, edges});
    }
    return out;
}

Graph two_triangles_shared_vertex() {
    return make_graph(5, {{0, 1}, {1, 2}, {2, 0}, {0, 3}, {3, 4}, {4, 0}});
}

// Two 4-cycles joined by a bridge: leafless but not direct-topfull,
// because the bridge lies in no cover (removing its endpoints leaves odd
// paths on both sides).
Graph two_squares_bridged() {
    return make_graph(8, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {4, 5}, {5, 6}, {6, 7}, {7, 4}, {0, 4}});
}

}  // namespace

TEST_CASE("find_q_factor") {
    SECTION("C5 is covered by the single cycle") {
        auto cover = find_q_factor(cycle_graph(5));
        REQUIRE(cover.has_value());
        REQUIRE(cover->components.size() == 1);
        CHECK(cover->components[0].size() == 5);
        CHECK_NOTHROW(check_cover(cycle_graph(5), *cover));
    }

    SECTION("P4 splits into two edges") {
        auto cover = find_q_factor(path_graph(4));
        REQUIRE(cover.has_value());
        CHECK(canonical(*cover) == Canonical{{{0, 1}, {{0, 1}}}, {{2, 3}, {{2, 3}}}});
    }

    SECTION("P3 has none") {
        CHECK_FALSE(find_q_factor(path_graph(3)).has_value());
        CHECK_FALSE(oracle::has_q_factor_brute(path_graph(3)));
    }

    SECTION("existence matches brute force on all connected graphs up to n = 6") {
        for (int n = 2; n <= 6; ++n) {
            for_each_connected_labeled_graph(n, [&](const Graph& g) {
                auto cover = find_q_factor(g);
                REQUIRE(cover.has_value() == oracle::has_q_factor_brute(g));
                if (cover) CHECK_NOTHROW(check_cover(g, *cover));
            });
        }
    }

    SECTION("forced edge lands in the returned cover") {
        Graph k4 = complete_graph(4);
        for (auto [u, v] : k4.edges) {
            auto cover = find_q_factor(k4, std::make_pair(u, v));
            REQUIRE(cover.has_value());
            bool found = false;
            for (const auto& comp : cover->components) {
                const std::size_t m = comp.size();
                for (std::size_t i = 0; i < (m == 2 ? 1 : m); ++i) {
                    int a = comp[i], b = comp[(i + 1) % m];
                    if ((a == u && b == v) || (a == v && b == u)) found = true;
                }
            }
            CHECK(found);
        }
        CHECK_THROWS_AS(find_q_factor(k4, std::make_pair(0, 0)), PreconditionError);
    }

    SECTION("forced-edge coverage matches brute force on small graphs") {
        for (int n = 2; n <= 5; ++n) {
            for_each_connected_labeled_graph(n, [&](const Graph& g) {
                for (auto [u, v] : g.edges) {
                    bool lib = find_q_factor(g, std::make_pair(u, v)).has_value();
                    REQUIRE(lib == oracle::edge_in_some_q_factor_brute(g, u, v));
                }
            });
        }
    }
}

TEST_CASE("covered_edges") {
    CHECK(covered_edges(cycle_graph(6)).size() == 6);
    CHECK(covered_edges(complete_graph(4)).size() == 6);
    CHECK(covered_edges(complete_bipartite_graph(1, 3)).empty());
    CHECK(covered_edges(path_graph(4)) ==
          std::vector<std::pair<int, int>>{{0, 1}, {2, 3}});
    // The bridge of the two-squares graph is not coverable.
    auto cov = covered_edges(two_squares_bridged());
    CHECK(cov.size() == 8);
    CHECK(std::find(cov.begin(), cov.end(), std::make_pair(0, 4)) == cov.end());
}

TEST_CASE("is_direct_topfull") {
    SECTION("petersen graph is direct-topfull with a verifying witness") {
        auto verdict = is_direct_topfull(petersen_graph());
        CHECK(verdict.is_topfull);
        REQUIRE(verdict.witness.has_value());
        auto rep = validate_march(petersen_graph(), *verdict.witness, MovementRule::direct, 1);
        CHECK(rep.ok());
        CHECK(rep.is_tour);
    }

    SECTION("cycles are direct-topfull") {
        for (int n : {3, 4, 5, 6}) CHECK(is_direct_topfull(cycle_graph(n)).is_topfull);
    }

    SECTION("a leaf is an obstruction") {
        auto verdict = is_direct_topfull(path_graph(3));
        CHECK_FALSE(verdict.is_topfull);
        REQUIRE(verdict.obstruction.has_value());
        CHECK(verdict.obstruction->kind == Obstruction::Kind::leaf);
    }

    SECTION("K2 is direct-topfull despite its degree-1 vertices") {
        CHECK(is_direct_topfull(make_graph(2, {{0, 1}})).is_topfull);
    }

    SECTION("leafless graph with an uncoverable bridge is rejected with the covered subgraph") {
        auto verdict = is_direct_topfull(two_squares_bridged());
        CHECK_FALSE(verdict.is_topfull);
        REQUIRE(verdict.obstruction.has_value());
        CHECK(verdict.obstruction->kind == Obstruction::Kind::disconnected_covered_subgraph);
        CHECK(verdict.obstruction->covered.size() == 8);
    }

    SECTION("graphs with leaves are never direct-topfull (n >= 3)") {
        for (int n = 3; n <= 5; ++n) {
            for_each_connected_labeled_graph(n, [&](const Graph& g) {
                bool has_leaf = false;
                for (int v = 0; v < g.n; ++v) has_leaf |= g.degree(v) == 1;
                if (has_leaf) REQUIRE_FALSE(is_direct_topfull(g).is_topfull);
            });
        }
    }

    SECTION("hamiltonian and even-regular families are direct-topfull") {
        CHECK(is_direct_topfull(complete_graph(5)).is_topfull);
        CHECK(is_direct_topfull(complete_bipartite_graph(3, 3)).is_topfull);
        CHECK(is_direct_topfull(cycle_graph(9)).is_topfull);
        // 4-regular: circulant C8(1,2).
        std::vector<std::pair<int, int>> e;
        for (int i = 0; i < 8; ++i) {
            e.emplace_back(i, (i + 1) % 8);
            e.emplace_back(i, (i + 2) % 8);
        }
        Graph circulant = make_graph(8, e);
        CHECK(is_direct_topfull(circulant).is_topfull);
        // Shared-vertex triangles: every degree even, so still topfull.
        CHECK(is_direct_topfull(two_triangles_shared_vertex()).is_topfull);
    }
}

TEST_CASE("cover_step and step_to_cover") {
    SECTION("K2 swap") {
        Graph k2 = make_graph(2, {{0, 1}});
        CycleEdgeCover s{{{0, 1}}};
        March f = cover_step(k2, s);
        CHECK(f.tracks == std::vector<std::vector<int>>{{0, 1}, {1, 0}});
        CHECK(canonical(step_to_cover(k2, f, 0)) == canonical(s));
    }

    SECTION("C5 rotation in either orientation") {
        Graph c5 = cycle_graph(5);
        CycleEdgeCover s{{{0, 1, 2, 3, 4}}};
        March fwd = cover_step(c5, s);
        CHECK(fwd.tracks[0] == std::vector<int>{0, 1});
        March bwd = cover_step(c5, s, {true});
        CHECK(bwd.tracks[0] == std::vector<int>{0, 4});
        for (const March& f : {fwd, bwd}) {
            auto rep = validate_march(c5, f, MovementRule::direct, 1);
            CHECK(rep.ok());
        }
        CHECK(canonical(step_to_cover(c5, fwd, 0)) == canonical(s));
        CHECK(canonical(step_to_cover(c5, bwd, 0)) == canonical(s));
    }

    SECTION("edge plus triangle on five vertices is collision-free") {
        Graph g = make_graph(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 2}});
        CycleEdgeCover s{{{0, 1}, {2, 3, 4}}};
        March f = cover_step(g, s);
        auto rep = validate_march(g, f, MovementRule::direct, 1);
        CHECK(rep.ok());
    }

    SECTION("rejects invalid covers") {
        Graph c4 = cycle_graph(4);
        CHECK_THROWS_AS(cover_step(c4, CycleEdgeCover{{{0, 1}}}), PreconditionError);
        CHECK_THROWS_AS(cover_step(c4, CycleEdgeCover{{{0, 1}, {1, 2}, {2, 3}}}),
                        PreconditionError);
        CHECK_THROWS_AS(cover_step(c4, CycleEdgeCover{{{0, 2}, {1, 3}}}), PreconditionError);
    }

    SECTION("step_to_cover preconditions") {
        Graph c4 = cycle_graph(4);
        March partial{{{0, 1}, {2, 3}}};
        CHECK_THROWS_AS(step_to_cover(c4, partial, 0), PreconditionError);
        March stays{{{0, 0}, {1, 1}, {2, 2}, {3, 3}}};
        CHECK_THROWS_AS(step_to_cover(c4, stays, 0), PreconditionError);
    }

    SECTION("round trip over random covers") {
        std::mt19937_64 rng(321);
        int tested = 0;
        for (const Graph& g : sample_connected_graphs(7, 40, 55)) {
            auto cover = find_q_factor(g);
            if (!cover) continue;
            ++tested;
            std::vector<bool> orient(cover->components.size());
            for (auto&& o : orient) o = rng() & 1;
            March f = cover_step(g, *cover, orient);
            REQUIRE(canonical(step_to_cover(g, f, 0)) == canonical(*cover));
        }
        CHECK(tested > 5);
    }
}

TEST_CASE("cycle_through") {
    SECTION("C5 returns the whole cycle") {
        auto cycle = cycle_through(cycle_graph(5), 0, 2);
        CHECK(cycle.size() == 5);
    }

    SECTION("K4 yields a simple cycle containing both vertices") {
        auto cycle = cycle_through(complete_graph(4), 0, 1);
        REQUIRE(cycle.size() >= 3);
        std::set<int> verts(cycle.begin(), cycle.end());
        CHECK(verts.size() == cycle.size());  // simple
        CHECK(verts.count(0) == 1);
        CHECK(verts.count(1) == 1);
        Graph k4 = complete_graph(4);
        for (std::size_t i = 0; i < cycle.size(); ++i)
            CHECK(k4.has_edge(cycle[i], cycle[(i + 1) % cycle.size()]));
    }

    SECTION("cut vertex separating u and v is an error") {
        Graph g = two_triangles_shared_vertex();
        CHECK_THROWS_AS(cycle_through(g, 1, 3), PreconditionError);
        CHECK_NOTHROW(cycle_through(g, 1, 2));  // same triangle still works
        CHECK_THROWS_AS(cycle_through(g, 1, 1), PreconditionError);
    }

    SECTION("every pair in 2-connected samples lies on a returned simple cycle") {
        for (const Graph& g : sample_connected_graphs(7, 60, 91)) {
            if (!articulation_points(g).empty()) continue;
            if (g.n < 3) continue;
            for (int u = 0; u < g.n; ++u)
                for (int v = u + 1; v < g.n; ++v) {
                    auto cycle = cycle_through(g, u, v);
                    std::set<int> verts(cycle.begin(), cycle.end());
                    REQUIRE(verts.size() == cycle.size());
                    REQUIRE(verts.count(u) == 1);
                    REQUIRE(verts.count(v) == 1);
                    for (std::size_t i = 0; i < cycle.size(); ++i)
                        REQUIRE(g.has_edge(cycle[i], cycle[(i + 1) % cycle.size()]));
                }
        }
    }
}

TEST_CASE("is_cartesian_topfull") {
    SECTION("C5 is cartesian-topfull with verifying witness") {
        auto verdict = is_cartesian_topfull(cycle_graph(5));
        CHECK(verdict.is_topfull);
        REQUIRE(verdict.witness.has_value());
        CHECK(verdict.witness->players() == 4);
        auto rep = validate_march(cycle_graph(5), *verdict.witness, MovementRule::cartesian, 1);
        CHECK(rep.ok());
        CHECK(rep.is_tour);
    }

    SECTION("shared vertex is exhibited as the obstruction") {
        auto verdict = is_cartesian_topfull(two_triangles_shared_vertex());
        CHECK_FALSE(verdict.is_topfull);
        REQUIRE(verdict.obstruction.has_value());
        CHECK(verdict.obstruction->kind == Obstruction::Kind::cut_vertex);
        CHECK(verdict.obstruction->vertex == 0);
    }

    SECTION("K_{2,3} is cartesian-topfull with n-1 players") {
        auto verdict = is_cartesian_topfull(complete_bipartite_graph(2, 3));
        CHECK(verdict.is_topfull);
        REQUIRE(verdict.witness.has_value());
        CHECK(verdict.witness->players() == 4);
    }

    SECTION("triangle qualifies at n = 3") {
        auto verdict = is_cartesian_topfull(cycle_graph(3));
        CHECK(verdict.is_topfull);
        // Cross-check with the solver: the only non-path graph on 3 vertices.
        CHECK(capacity(cycle_graph(3), 1, MovementRule::cartesian).capacity == 2);
    }

    SECTION("paths are rejected") {
        CHECK_THROWS_AS(is_cartesian_topfull(path_graph(4)), PreconditionError);
        CHECK_THROWS_AS(is_cartesian_topfull(make_graph(2, {{0, 1}})), PreconditionError);
    }
}

TEST_CASE("direct_topfull_tour verifies on standard graphs") {
    for (const Graph& g : {cycle_graph(4), complete_graph(4), complete_bipartite_graph(3, 3)}) {
        March f = direct_topfull_tour(g);
        REQUIRE(f.players() == g.n);
        auto rep = validate_march(g, f, MovementRule::direct, 1);
        REQUIRE(rep.ok());
        REQUIRE(rep.is_tour);
    }
    CHECK_THROWS_AS(direct_topfull_tour(path_graph(3)), PreconditionError);
}

TEST_CASE("cartesian_topfull_tour verifies on standard graphs") {
    for (const Graph& g : {cycle_graph(4), complete_graph(4), complete_bipartite_graph(2, 3)}) {
        March f = cartesian_topfull_tour(g);
        REQUIRE(f.players() == g.n - 1);
        auto rep = validate_march(g, f, MovementRule::cartesian, 1);
        REQUIRE(rep.ok());
        REQUIRE(rep.is_tour);
    }
    CHECK_THROWS_AS(cartesian_topfull_tour(two_triangles_shared_vertex()), PreconditionError);
}

TEST_CASE("covered-subgraph connectivity equals the literal all-pairs path condition") {
    // Literal condition: for every u, v some simple u,v-path uses only
    // edges that lie in a cover.  Checked by enumerating simple paths.
    auto literal_condition = [](const Graph& g) {
        std::set<std::pair<int, int>> covered;
        for (auto e : covered_edges(g)) covered.insert(e);
        auto edge_ok = [&](int a, int b) {
            return covered.count({std::min(a, b), std::max(a, b)}) > 0;
        };
        for (int u = 0; u < g.n; ++u) {
            for (int v = 0; v < g.n; ++v) {
                if (u == v) continue;
                bool found = false;
                std::vector<int> path{u};
                std::vector<bool> used(g.n, false);
                used[u] = true;
                std::function<void()> dfs = [&]() {
                    if (found) return;
                    int at = path.back();
                    if (at == v) {
                        found = true;
                        return;
                    }
                    for (int w : g.adj[at]) {
                        if (used[w] || !edge_ok(at, w)) continue;
                        used[w] = true;
                        path.push_back(w);
                        dfs();
                        path.pop_back();
                        used[w] = false;
                    }
                };
                dfs();
                if (!found) return false;
            }
        }
        return true;
    };

    for (int n = 2; n <= 5; ++n) {
        for_each_connected_labeled_graph(n, [&](const Graph& g) {
            bool by_connectivity = connectivity(g, covered_edges(g)).connected;
            REQUIRE(by_connectivity == literal_condition(g));
        });
    }
    CHECK(literal_condition(two_squares_bridged()) == false);
}

TEST_CASE("classifiers agree with the solver on all connected graphs up to n = 4") {
    for (int n = 2; n <= 4; ++n) {
        for_each_connected_labeled_graph(n, [&](const Graph& g) {
            bool direct_class = is_direct_topfull(g).is_topfull;
            bool direct_solver = capacity(g, 1, MovementRule::direct).capacity == g.n;
            REQUIRE(direct_class == direct_solver);

            if (g.n >= 3 && !is_path_graph(g)) {
                bool cart_class = is_cartesian_topfull(g).is_topfull;
                bool cart_solver = capacity(g, 1, MovementRule::cartesian).capacity == g.n - 1;
                REQUIRE(cart_class == cart_solver);
            }

            REQUIRE(capacity(g, 1, MovementRule::strong).capacity == g.n);
        });
    }
}
