// Contract checks for the built-in systems: origin, deterministic transition
// enumeration, membership, isomorphism search, and native amalgamation.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>
#include <string>
#include <vector>

#include "evolve/equality.hpp"
#include "evolve/instances.hpp"

using namespace evolve;

namespace {

// The enumeration contract: identity first, then nontrivial representatives;
// a smaller budget yields a prefix of a larger one's listing.
void check_enumeration_contract(const System& sys, const Obj& x) {
    std::vector<Arrow> small = sys.transitions(x, 2);
    std::vector<Arrow> large = sys.transitions(x, 8);
    REQUIRE(!small.empty());
    CHECK(small[0].kind == ArrowKind::Iso);
    CHECK(small[0].dom == x);
    CHECK(small[0].cod == x);
    REQUIRE(small.size() <= large.size());
    for (std::size_t i = 0; i < small.size(); ++i)
        CHECK(large[i].same_arrow(small[i]));
    for (const Arrow& t : large) {
        CHECK(t.dom == x);
        CHECK(sys.is_transition(t));
        if (t.kind == ArrowKind::Iso) CHECK(t.cost == 0);
    }
    // Nontrivial representatives are pairwise distinct as arrows.
    for (std::size_t i = 1; i < large.size(); ++i)
        for (std::size_t j = i + 1; j < large.size(); ++j)
            CHECK(arrows_equal(large[i], large[j], Equality::Relaxed) != Verdict::True);
}

// Native span amalgamation must produce a strictly commuting square.
void check_native_amalgamation(const System& sys, const Arrow& f, const Arrow& g) {
    auto sq = sys.amalgamate(f, g);
    REQUIRE(sq.has_value());
    const auto& [fp, gp] = *sq;
    CHECK(fp.dom == f.cod);
    CHECK(gp.dom == g.cod);
    CHECK(sys.is_transition(fp));
    CHECK(sys.is_transition(gp));
    Arrow left = fuse(f, fp);
    Arrow right = fuse(g, gp);
    CHECK(arrows_equal(left, right, Equality::Strict) == Verdict::True);
}

}  // namespace

TEST_CASE("graph system grows one vertex per step") {
    GraphSystem sys(false);
    Obj start = sys.origin();
    CHECK(std::get<GraphObj>(start.payload).vertices.empty());
    check_enumeration_contract(sys, start);

    // From the empty graph there is exactly one extension.
    std::vector<Arrow> t0 = sys.transitions(start, 8);
    REQUIRE(t0.size() == 2);
    CHECK(t0[1].kind == ArrowKind::Transition);
    Obj one = t0[1].cod;
    CHECK(std::get<GraphObj>(one.payload).vertices.size() == 1);

    // From one vertex: attach to nothing or to the existing vertex.
    std::vector<Arrow> t1 = sys.transitions(one, 8);
    REQUIRE(t1.size() == 3);
    check_enumeration_contract(sys, one);

    // Attachment sets in the same automorphism orbit are collapsed: on two
    // isolated vertices, "join one of them" is listed once.
    Obj two = t1[1].cod;  // two isolated vertices
    REQUIRE(std::get<GraphObj>(two.payload).edges.empty());
    std::vector<Arrow> t2 = sys.transitions(two, 16);
    CHECK(t2.size() == 4);  // identity + attach to 0, 1, or 2 of them

    // Membership accepts induced embeddings only, with at most one new point.
    GraphObj tri{false, {1, 2, 3}, {{1, 2}, {2, 3}, {1, 3}}};
    GraphObj edge{false, {1, 2}, {{1, 2}}};
    Arrow good{Obj(edge), Obj(tri), VertexMap{{1, 1}, {2, 2}}, ArrowKind::Transition,
               "t", 1};
    CHECK(sys.is_transition(good));
    GraphObj nonedge{false, {1, 2}, {}};
    Arrow not_induced{Obj(nonedge), Obj(tri), VertexMap{{1, 1}, {2, 2}},
                      ArrowKind::Transition, "t", 1};
    CHECK_FALSE(sys.is_transition(not_induced));
    GraphObj four{false, {1, 2, 3, 4}, {{1, 2}}};
    Arrow two_points{Obj(edge), Obj(four), VertexMap{{1, 1}, {2, 2}},
                     ArrowKind::Transition, "t", 1};
    CHECK_FALSE(sys.is_transition(two_points));

    // Isomorphism search and native amalgamation.
    GraphObj e2{false, {5, 9}, {{5, 9}}};
    IsoSearch iso = sys.find_iso(Obj(edge), Obj(e2));
    REQUIRE(iso.found.has_value());
    CHECK(iso.found->kind == ArrowKind::Iso);
    CHECK_FALSE(sys.find_iso(Obj(edge), Obj(nonedge)).found.has_value());

    std::vector<Arrow> span = sys.transitions(one, 8);
    check_native_amalgamation(sys, span[1], span[2]);
}

TEST_CASE("directed graph system tracks in and out attachments separately") {
    GraphSystem sys(true);
    Obj one = sys.transitions(sys.origin(), 4)[1].cod;
    std::vector<Arrow> ts = sys.transitions(one, 16);
    // Attach fresh vertex v' to a single vertex w: no edge, v'->w, w->v',
    // or both. All four are distinguishable.
    CHECK(ts.size() == 5);
    check_enumeration_contract(sys, one);
}

TEST_CASE("linear orders insert one point per step") {
    LinOrderSystem sys;
    Obj start = sys.origin();
    CHECK(std::get<OrderObj>(start.payload).points.empty());
    check_enumeration_contract(sys, start);

    std::vector<Arrow> t0 = sys.transitions(start, 8);
    REQUIRE(t0.size() == 2);
    Obj one = t0[1].cod;

    std::vector<Arrow> t1 = sys.transitions(one, 8);
    REQUIRE(t1.size() == 3);  // below or above the existing point
    CHECK(t1[1].label.find("ins@") == 0);

    Obj two = t1[1].cod;
    std::vector<Arrow> t2 = sys.transitions(two, 8);
    CHECK(t2.size() == 4);  // three slots in a two-point order

    // Inserting at distinct slots is distinct as arrows even though the
    // codomains are isomorphic orders.
    CHECK(arrows_equal(t2[1], t2[2], Equality::Relaxed) == Verdict::False);

    check_native_amalgamation(sys, t1[1], t1[2]);
    check_native_amalgamation(sys, t2[1], t2[3]);

    IsoSearch iso = sys.find_iso(t2[1].cod, t2[2].cod);
    REQUIRE(iso.found.has_value());
}

TEST_CASE("poset systems expose covers as transitions") {
    PosetSystem dia = PosetSystem::diamond();
    Obj bottom = dia.origin();
    CHECK(std::get<PosetObj>(bottom.payload).elem == 0);
    check_enumeration_contract(dia, bottom);

    std::vector<Arrow> ts = dia.transitions(bottom, 8);
    REQUIRE(ts.size() == 3);  // identity + covers to 1 and 2
    CHECK(dia.covers(0, 1));
    CHECK(dia.covers(0, 2));
    CHECK_FALSE(dia.covers(0, 3));  // 3 is above but not a cover

    check_native_amalgamation(dia, ts[1], ts[2]);

    PosetSystem vee = PosetSystem::vee();
    std::vector<Arrow> vts = vee.transitions(vee.origin(), 8);
    REQUIRE(vts.size() == 3);
    CHECK_FALSE(vee.amalgamate(vts[1], vts[2]).has_value());
}

TEST_CASE("monoid transitions multiply by units and listed primes") {
    MonoidSystem sys({2, 3});
    Obj m = sys.origin();
    check_enumeration_contract(sys, m);

    std::vector<Arrow> ts = sys.transitions(m, 8);
    std::set<std::int64_t> values;
    for (const Arrow& t : ts) values.insert(std::get<MonoidMap>(t.map).value);
    CHECK(values.count(2) == 1);
    CHECK(values.count(3) == 1);
    CHECK(values.count(5) == 0);

    auto member = [&](std::int64_t v) {
        return sys.is_transition(Arrow{m, m, MonoidMap{v}, ArrowKind::Transition,
                                       "x", 1});
    };
    CHECK(member(2));       // listed prime
    CHECK(member(3));       // listed prime
    CHECK(member(1));       // unit
    CHECK(member(-1));      // unit
    CHECK_FALSE(member(6));   // composite: only single generator steps
    CHECK_FALSE(member(-4));  // composite
    CHECK_FALSE(member(5));   // prime, but not a listed generator
    CHECK_FALSE(member(10));
    CHECK_FALSE(member(0));

    check_native_amalgamation(sys, ts[1], ts[2]);

    MonoidSystem all;
    CHECK(all.is_transition(Arrow{m, m, MonoidMap{7}, ArrowKind::Transition, "x", 1}));
    CHECK_FALSE(
        all.is_transition(Arrow{m, m, MonoidMap{35}, ArrowKind::Transition, "x", 1}));
}

TEST_CASE("the seeded set system forks at its two literal singletons") {
    SetForkSystem sys;
    Obj start = sys.origin();
    CHECK(std::get<SetObj>(start.payload).elems == std::set<int>{0});
    check_enumeration_contract(sys, start);

    std::vector<Arrow> t0 = sys.transitions(start, 8);
    REQUIRE(t0.size() == 2);
    CHECK(t0[1].label == "grow2");

    Obj other{SetObj{{1}}};
    std::vector<Arrow> t1 = sys.transitions(other, 8);
    REQUIRE(t1.size() == 2);
    CHECK(t1[1].label == "grow3");

    // The growth steps hide behind relabeling hops, which the system
    // publishes and reports at the class level.
    std::vector<Arrow> hops = sys.iso_steps(start);
    REQUIRE(hops.size() == 1);
    CHECK(hops[0].label == "relabel");
    CHECK(hops[0].cod == other);

    Obj lone{SetObj{{5}}};
    CHECK(sys.transitions(lone, 8).size() == 1);  // no direct growth
    CHECK(sys.class_has_nontrivial_transitions(lone, 8));
    CHECK_FALSE(sys.class_has_nontrivial_transitions(Obj{SetObj{{0, 1}}}, 8));

    // Bijections are transitions; the growth shapes are anchored to their
    // literal domains.
    CHECK(sys.is_transition(Arrow{start, other, VertexMap{{0, 1}}, ArrowKind::Iso,
                                  "relabel", 0}));
    CHECK(sys.is_transition(Arrow{start, Obj{SetObj{{3, 8}}}, VertexMap{{0, 3}},
                                  ArrowKind::Transition, "g", 1}));
    CHECK_FALSE(sys.is_transition(Arrow{lone, Obj{SetObj{{3, 8}}}, VertexMap{{5, 3}},
                                        ArrowKind::Transition, "g", 1}));
}

TEST_CASE("chain transitions merge factors and price the merge") {
    ChainSystem sys({10, 30, 5, 60});
    Obj start = sys.origin();
    const ChainObj& c = std::get<ChainObj>(start.payload);
    REQUIRE(c.blocks.size() == 3);
    CHECK(c.blocks[0] == std::pair<std::int64_t, std::int64_t>{10, 30});
    check_enumeration_contract(sys, start);

    std::vector<Arrow> ts = sys.transitions(start, 8);
    REQUIRE(ts.size() == 3);  // merge (0,1) or (1,2)
    std::set<std::int64_t> costs;
    for (std::size_t i = 1; i < ts.size(); ++i) costs.insert(ts[i].cost);
    CHECK(costs == std::set<std::int64_t>{10 * 30 * 5, 30 * 5 * 60});

    check_native_amalgamation(sys, ts[1], ts[2]);

    // Free merging allows shape-compatible non-adjacent pairs as well.
    ChainSystem free({5, 7, 3, 7, 9}, true);
    std::vector<Arrow> fts = free.transitions(free.origin(), 16);
    CHECK(fts.size() > 4);  // more than the three adjacent merges
}

TEST_CASE("tabulated categories respect their declared step tables") {
    FiniteCategorySystem split = FiniteCategorySystem::split_fork();
    Obj start = split.origin();
    check_enumeration_contract(split, start);

    // Deterministic generation: the same seed reproduces the same category.
    FiniteCategorySystem a = FiniteCategorySystem::random(7, true, 8);
    FiniteCategorySystem b = FiniteCategorySystem::random(7, true, 8);
    CHECK(a.data().cls == b.data().cls);
    CHECK(a.data().steps == b.data().steps);
    CHECK(a.is_regular());

    check_enumeration_contract(a, a.origin());

    // In regular mode, isomorphic objects carry identical outgoing behavior.
    FiniteCategorySystem irr = FiniteCategorySystem::random(3, false, 8);
    check_enumeration_contract(irr, irr.origin());
}

TEST_CASE("system factory understands every documented name") {
    for (const char* name :
         {"graph", "digraph", "linorder", "poset:diamond", "poset:vee", "monoid",
          "monoid:2,3", "setfork", "counterexample", "chain:10,30,5,60",
          "chain:10,30,5,60:free", "cat:split", "cat:7", "cat:7:regular",
          "dpo:fork", "dpo:multi"}) {
        CAPTURE(name);
        auto sys = make_system(name);
        REQUIRE(sys != nullptr);
        CHECK_FALSE(sys->name().empty());
        CHECK(!sys->transitions(sys->origin(), 2).empty());
    }
    CHECK(make_system("counterexample")->name() == "setfork");
    CHECK_THROWS_AS(make_system("nonsense"), BadInput);
    CHECK_THROWS_AS(make_system("poset:spiral"), BadInput);
    CHECK_THROWS_AS(make_system("chain:banana"), BadInput);
    CHECK_THROWS_AS(make_system("dpo:unknown"), BadInput);
}
