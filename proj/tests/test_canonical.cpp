// Canonical keys versus an independent brute-force isomorphism oracle.
//
// The oracle below decides graph isomorphism by trying every vertex
// bijection; it shares no code with the library's canonical labeling, so
// agreement between the two is meaningful evidence.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "evolve/object.hpp"

using namespace evolve;

namespace {

// Exhaustive isomorphism test: try every bijection between the vertex sets.
bool oracle_graphs_isomorphic(const GraphObj& a, const GraphObj& b) {
    if (a.directed != b.directed) return false;
    if (a.vertices.size() != b.vertices.size()) return false;
    if (a.edges.size() != b.edges.size()) return false;
    std::vector<int> av(a.vertices.begin(), a.vertices.end());
    std::vector<int> bv(b.vertices.begin(), b.vertices.end());
    std::sort(bv.begin(), bv.end());
    do {
        std::map<int, int> f;
        for (std::size_t i = 0; i < av.size(); ++i) f[av[i]] = bv[i];
        bool ok = true;
        for (auto& [x, y] : a.edges)
            if (!b.has_edge(f.at(x), f.at(y))) {
                ok = false;
                break;
            }
        // Equal edge counts make an edge-preserving bijection an isomorphism.
        if (ok) return true;
    } while (std::next_permutation(bv.begin(), bv.end()));
    return false;
}

// All labeled graphs on vertices {1..n} with the given orientation mode.
std::vector<GraphObj> all_graphs(int n, bool directed) {
    std::vector<std::pair<int, int>> slots;
    for (int i = 1; i <= n; ++i)
        for (int j = directed ? 1 : i + 1; j <= n; ++j)
            if (i != j) slots.push_back({i, j});
    std::vector<GraphObj> out;
    for (std::size_t mask = 0; mask < (std::size_t{1} << slots.size()); ++mask) {
        GraphObj g;
        g.directed = directed;
        for (int v = 1; v <= n; ++v) g.vertices.insert(v);
        for (std::size_t k = 0; k < slots.size(); ++k)
            if (mask & (std::size_t{1} << k)) g.add_edge(slots[k].first, slots[k].second);
        out.push_back(std::move(g));
    }
    return out;
}

GraphObj make_graph(bool directed, std::set<int> verts,
                    std::set<std::pair<int, int>> edges) {
    GraphObj g;
    g.directed = directed;
    g.vertices = std::move(verts);
    for (auto& [a, b] : edges) g.add_edge(a, b);
    return g;
}

}  // namespace

TEST_CASE("oracle sanity on hand-picked pairs") {
    // Six-cycle versus two triangles: equal degree sequences, not isomorphic.
    GraphObj c6 = make_graph(false, {1, 2, 3, 4, 5, 6},
                             {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {1, 6}});
    GraphObj tt = make_graph(false, {1, 2, 3, 4, 5, 6},
                             {{1, 2}, {2, 3}, {1, 3}, {4, 5}, {5, 6}, {4, 6}});
    CHECK_FALSE(oracle_graphs_isomorphic(c6, tt));

    // The same six-cycle under a relabeling is isomorphic.
    GraphObj c6b = make_graph(false, {10, 20, 30, 40, 50, 60},
                              {{10, 30}, {30, 50}, {50, 20}, {20, 40}, {40, 60}, {10, 60}});
    CHECK(oracle_graphs_isomorphic(c6, c6b));

    // Directed: a 3-cycle versus a transitive triangle.
    GraphObj cyc = make_graph(true, {1, 2, 3}, {{1, 2}, {2, 3}, {3, 1}});
    GraphObj tri = make_graph(true, {1, 2, 3}, {{1, 2}, {2, 3}, {1, 3}});
    CHECK_FALSE(oracle_graphs_isomorphic(cyc, tri));
    CHECK(oracle_graphs_isomorphic(cyc, make_graph(true, {7, 8, 9},
                                                   {{8, 7}, {7, 9}, {9, 8}})));

    // Orientation modes never mix.
    CHECK_FALSE(oracle_graphs_isomorphic(cyc, make_graph(false, {1, 2, 3},
                                                         {{1, 2}, {2, 3}, {1, 3}})));
}

TEST_CASE("canonical keys agree with the oracle on all small graphs") {
    for (bool directed : {false, true}) {
        for (int n = 0; n <= (directed ? 3 : 4); ++n) {
            std::vector<GraphObj> gs = all_graphs(n, directed);
            std::vector<std::string> keys;
            keys.reserve(gs.size());
            for (auto& g : gs) keys.push_back(canonical_key(Payload{g}));
            for (std::size_t i = 0; i < gs.size(); ++i)
                for (std::size_t j = i + 1; j < gs.size(); ++j) {
                    bool iso = oracle_graphs_isomorphic(gs[i], gs[j]);
                    CHECK_MESSAGE(iso == (keys[i] == keys[j]),
                                  "disagreement on labeled graphs ", i, " and ", j,
                                  " with n=", n, " directed=", directed);
                }
        }
    }
}

TEST_CASE("canonical keys are label-invariant on scattered vertex names") {
    GraphObj a = make_graph(true, {3, 17, 42}, {{3, 17}, {17, 42}});
    GraphObj b = make_graph(true, {1, 2, 3}, {{2, 1}, {1, 3}});
    CHECK(canonical_key(Payload{a}) == canonical_key(Payload{b}));
    CHECK(oracle_graphs_isomorphic(a, b));

    GraphObj c = make_graph(true, {1, 2, 3}, {{1, 2}, {1, 3}});
    CHECK(canonical_key(Payload{a}) != canonical_key(Payload{c}));
    CHECK_FALSE(oracle_graphs_isomorphic(a, c));
}

TEST_CASE("canonical labeling separates regular non-isomorphic graphs") {
    GraphObj c6 = make_graph(false, {1, 2, 3, 4, 5, 6},
                             {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {1, 6}});
    GraphObj tt = make_graph(false, {1, 2, 3, 4, 5, 6},
                             {{1, 2}, {2, 3}, {1, 3}, {4, 5}, {5, 6}, {4, 6}});
    CHECK(canonical_key(Payload{c6}) != canonical_key(Payload{tt}));
}

TEST_CASE("colored labeling respects and only respects color-preserving maps") {
    GraphObj p3 = make_graph(false, {1, 2, 3}, {{1, 2}, {2, 3}});

    // Marking one endpoint or the other is the same up to isomorphism.
    GraphCanon end_a = canonical_graph_labeling(p3, {{1, 1}});
    GraphCanon end_b = canonical_graph_labeling(p3, {{3, 1}});
    CHECK(end_a.key == end_b.key);

    // Marking the middle point is genuinely different.
    GraphCanon mid = canonical_graph_labeling(p3, {{2, 1}});
    CHECK(mid.key != end_a.key);

    // The returned relabeling is a bijection onto 0..n-1.
    std::set<int> positions;
    for (auto& [v, p] : mid.label) positions.insert(p);
    CHECK(positions == std::set<int>{0, 1, 2});

    // Uncolored key differs from any colored key.
    CHECK(canonical_graph_labeling(p3).key != mid.key);
}

TEST_CASE("non-graph payloads use size or shape as their class invariant") {
    CHECK(canonical_key(Payload{OrderObj{{1, 5, 9}}}) ==
          canonical_key(Payload{OrderObj{{2, 3, 4}}}));
    CHECK(canonical_key(Payload{OrderObj{{1, 5, 9}}}) !=
          canonical_key(Payload{OrderObj{{1, 5}}}));

    CHECK(canonical_key(Payload{SetObj{{0, 7}}}) ==
          canonical_key(Payload{SetObj{{3, 4}}}));
    CHECK(canonical_key(Payload{SetObj{{0, 7}}}) !=
          canonical_key(Payload{SetObj{{3}}}));

    CHECK(canonical_key(Payload{ChainObj{{{10, 30}, {30, 5}}}}) ==
          canonical_key(Payload{ChainObj{{{10, 30}, {30, 5}}}}));
    CHECK(canonical_key(Payload{ChainObj{{{10, 30}, {30, 5}}}}) !=
          canonical_key(Payload{ChainObj{{{10, 5}}}}));

    CHECK(canonical_key(Payload{CatObj{3, 1}}) == canonical_key(Payload{CatObj{9, 1}}));
    CHECK(canonical_key(Payload{CatObj{3, 1}}) != canonical_key(Payload{CatObj{3, 2}}));
}

TEST_CASE("literal keys separate equal-class but distinct payloads") {
    GraphObj a = make_graph(true, {1, 2}, {{1, 2}});
    GraphObj b = make_graph(true, {2, 3}, {{2, 3}});
    CHECK(canonical_key(Payload{a}) == canonical_key(Payload{b}));
    CHECK(literal_key(Payload{a}) != literal_key(Payload{b}));
    CHECK(literal_key(Payload{a}) == literal_key(Payload{a}));

    CHECK(literal_key(Payload{OrderObj{{1, 5}}}) != literal_key(Payload{OrderObj{{2, 3}}}));
}

TEST_CASE("objects memoize their canonical key and compare by payload") {
    Obj x{Payload{make_graph(false, {1, 2}, {{1, 2}})}, 3};
    Obj y{Payload{make_graph(false, {1, 2}, {{1, 2}})}, -1};
    CHECK(x == y);  // hints do not take part in identity
    CHECK(x.canon() == y.canon());
    const std::string& first = x.canon();
    CHECK(&first == &x.canon());  // memoized, not recomputed
}
