// Span closure, path amalgamation, and the span-closure property over
// explored fragments.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <vector>

#include "evolve/amalgam.hpp"
#include "evolve/equality.hpp"
#include "evolve/fragment.hpp"
#include "evolve/instances.hpp"

using namespace evolve;

namespace {

// A closed square must commute strictly: same codomain, equal composites.
void require_strict_square(const System& sys, const Arrow& f, const Arrow& g,
                           const std::pair<Arrow, Arrow>& sq) {
    const auto& [fp, gp] = sq;
    CHECK(fp.dom == f.cod);
    CHECK(gp.dom == g.cod);
    CHECK(sys.is_transition(fp));
    CHECK(sys.is_transition(gp));
    CHECK(arrows_equal(fuse(f, fp), fuse(g, gp), Equality::Strict) == Verdict::True);
}

}  // namespace

TEST_CASE("a span of one arrow with itself closes trivially") {
    LinOrderSystem sys;
    std::vector<Arrow> ts = sys.transitions(sys.origin(), 4);
    REQUIRE(ts.size() >= 2);
    SpanClosure c = close_span(sys, ts[1], ts[1], 8);
    REQUIRE(c.square.has_value());
    require_strict_square(sys, ts[1], ts[1], *c.square);
}

TEST_CASE("spans close in the graph and linear-order systems") {
    GraphSystem gsys(false);
    Obj one = gsys.transitions(gsys.origin(), 4)[1].cod;
    std::vector<Arrow> gts = gsys.transitions(one, 8);
    REQUIRE(gts.size() == 3);
    SpanClosure gc = close_span(gsys, gts[1], gts[2], 8);
    REQUIRE(gc.square.has_value());
    require_strict_square(gsys, gts[1], gts[2], *gc.square);

    LinOrderSystem lsys;
    Obj two = lsys.transitions(lsys.transitions(lsys.origin(), 4)[1].cod, 4)[1].cod;
    std::vector<Arrow> lts = lsys.transitions(two, 8);
    REQUIRE(lts.size() == 4);
    for (std::size_t i = 1; i < lts.size(); ++i)
        for (std::size_t j = 1; j < lts.size(); ++j) {
            SpanClosure c = close_span(lsys, lts[i], lts[j], 8);
            CAPTURE(i);
            CAPTURE(j);
            REQUIRE(c.square.has_value());
            require_strict_square(lsys, lts[i], lts[j], *c.square);
        }
}

TEST_CASE("the vee poset has a provably unclosable span") {
    PosetSystem vee = PosetSystem::vee();
    std::vector<Arrow> ts = vee.transitions(vee.origin(), 8);
    REQUIRE(ts.size() == 3);
    SpanClosure c = close_span(vee, ts[1], ts[2], 16);
    CHECK_FALSE(c.square.has_value());
    CHECK(c.definitive);  // the whole category is in scope, so this is a proof

    TapReport at = check_tap_at(vee, vee.origin(), 16);
    CHECK(at.verdict == Verdict::False);
    REQUIRE(at.failed_span.has_value());

    TapReport whole = check_tap(vee, 2, 16);
    CHECK(whole.verdict == Verdict::False);

    PosetSystem dia = PosetSystem::diamond();
    CHECK(check_tap(dia, 2, 16).verdict == Verdict::True);
}

TEST_CASE("the seeded set system fails span closure at its origin") {
    SetForkSystem sys;
    TapReport at = check_tap_at(sys, sys.origin(), 16);
    CHECK(at.verdict == Verdict::False);
    REQUIRE(at.failed_span.has_value());
    // The offending span involves the direct growth step and the relabeling
    // hop that guards the other one.
    auto labels = std::set<std::string>{at.failed_span->first.label,
                                        at.failed_span->second.label};
    CHECK(labels.count("grow2") + labels.count("relabel") +
              labels.count("grow3") >= 2);
}

TEST_CASE("span closure over fragments of well-behaved systems") {
    GraphSystem gsys(false);
    TapReport g = check_tap(gsys, 2, 17, 200);
    CHECK(g.verdict == Verdict::True);

    LinOrderSystem lsys;
    TapReport l = check_tap(lsys, 3, 8, 200);
    CHECK(l.verdict == Verdict::True);
}

TEST_CASE("path amalgamation tiles squares and respects length bounds") {
    LinOrderSystem sys;
    Fragment frag = explore(sys, 3, 8, 200);
    REQUIRE(frag.nodes.size() >= 4);

    int checked = 0;
    for (std::size_t i = 1; i < frag.nodes.size(); ++i)
        for (std::size_t j = i; j < frag.nodes.size(); ++j) {
            Path p = frag.path_to(static_cast<int>(i));
            Path q = frag.path_to(static_cast<int>(j));
            PathAmalgam am = amalgamate_paths(sys, p, q, 8);
            CAPTURE(i);
            CAPTURE(j);
            REQUIRE(am.closed.has_value());
            const auto& [pc, qc] = *am.closed;
            CHECK(pc.dom() == p.cod());
            CHECK(qc.dom() == q.cod());
            CHECK(pc.cod() == qc.cod());
            CHECK(pc.length() <= q.length());
            CHECK(qc.length() <= p.length());
            CHECK(paths_equal(compose(p, pc), compose(q, qc), Equality::Strict) ==
                  Verdict::True);
            ++checked;
        }
    // One chain object per depth 0..3, so three nontrivial nodes pair up six ways.
    CHECK(checked == 6);
}

TEST_CASE("path amalgamation reports the span that kills it") {
    SetForkSystem sys;
    Obj start = sys.origin();
    std::vector<Arrow> t0 = sys.transitions(start, 4);
    REQUIRE(t0.size() == 2);
    Path grow{t0[1]};  // to the two-element set

    Arrow hop = sys.iso_steps(start)[0];
    std::vector<Arrow> t1 = sys.transitions(hop.cod, 4);
    REQUIRE(t1.size() == 2);
    Path detour{hop};
    detour.then(t1[1]);  // relabel, then grow to three elements

    PathAmalgam am = amalgamate_paths(sys, grow, detour, 16);
    CHECK_FALSE(am.closed.has_value());
    CHECK(am.definitive);
    REQUIRE(am.failed_span.has_value());
}

TEST_CASE("identity-path spans are absorbed without work") {
    LinOrderSystem sys;
    Obj one = sys.transitions(sys.origin(), 4)[1].cod;
    Path idp{one};
    Path step{sys.transitions(one, 4)[1]};
    PathAmalgam am = amalgamate_paths(sys, idp, step, 8);
    REQUIRE(am.closed.has_value());
    CHECK(am.closed->first.length() <= step.length());
    CHECK(am.closed->second.length() == 0);
}
