#include "evolve/amalgam.hpp"

#include <sstream>
#include <vector>

#include "evolve/equality.hpp"
#include "evolve/fragment.hpp"

namespace evolve {
namespace {

bool same_dom(const Arrow& f, const Arrow& g) { return f.dom == g.dom; }

// Verifies a proposed square strictly before trusting it.
bool square_ok(const System& sys, const Arrow& f, const Arrow& g, const Arrow& fp,
               const Arrow& gp) {
    if (!(fp.dom == f.cod) || !(gp.dom == g.cod)) return false;
    if (!(fp.cod == gp.cod)) return false;
    if (!sys.is_transition(fp) || !sys.is_transition(gp)) return false;
    return arrows_equal(fuse(f, fp), fuse(g, gp), Equality::Strict) == Verdict::True;
}

}  // namespace

SpanClosure close_span(const System& sys, const Arrow& f, const Arrow& g, int budget) {
    SpanClosure out;
    if (!same_dom(f, g)) return out;

    // Equal arrows close by the identity square.
    if (f.same_arrow(g)) {
        Arrow idc = identity_arrow(f.cod);
        if (square_ok(sys, f, g, idc, idc)) {
            out.square = {idc, idc};
            return out;
        }
    }

    // A span with an iso side closes by transporting the other side, whenever
    // the transported arrow is itself a transition.
    if (f.kind == ArrowKind::Iso) {
        Arrow moved = fuse(invert_iso(f), g);
        if (sys.is_transition(moved) && square_ok(sys, f, g, moved, identity_arrow(g.cod))) {
            out.square = {moved, identity_arrow(g.cod)};
            return out;
        }
    }
    if (g.kind == ArrowKind::Iso) {
        Arrow moved = fuse(invert_iso(g), f);
        if (sys.is_transition(moved) && square_ok(sys, f, g, identity_arrow(f.cod), moved)) {
            out.square = {identity_arrow(f.cod), moved};
            return out;
        }
    }

    if (auto native = sys.amalgamate(f, g)) {
        if (square_ok(sys, f, g, native->first, native->second)) {
            out.square = std::move(native);
            return out;
        }
    }

    // Generic search over candidate pairs, matching codomains up to an iso
    // pinned by the composite witnesses. Closure under postcomposition with
    // isos keeps the adjusted candidate inside the transition class.
    auto collect = [&](const Obj& from, int& nontrivial) {
        std::vector<Arrow> cs = sys.transitions(from, budget);
        for (auto& a : cs)
            if (a.kind == ArrowKind::Transition) ++nontrivial;
        for (auto& hop : sys.iso_steps(from)) cs.push_back(hop);
        return cs;
    };
    int nf = 0, ng = 0;
    std::vector<Arrow> fc = collect(f.cod, nf);
    std::vector<Arrow> gc = collect(g.cod, ng);
    if (nf >= budget || ng >= budget) out.definitive = false;

    Arrow base_f = f, base_g = g;
    for (const Arrow& a : fc) {
        Arrow left = fuse(base_f, a);
        for (const Arrow& b : gc) {
            Arrow right = fuse(base_g, b);
            IsoSearch psi = find_pinned_iso(left.cod, right.cod, left.map, right.map);
            if (!psi.definitive) out.definitive = false;
            if (!psi.found) continue;
            Arrow adjusted = fuse(a, *psi.found);
            if (!sys.is_transition(adjusted)) continue;
            if (square_ok(sys, f, g, adjusted, b)) {
                out.square = {adjusted, b};
                return out;
            }
        }
    }
    return out;
}

PathAmalgam amalgamate_paths(const System& sys, const Path& p, const Path& q,
                             int budget) {
    PathAmalgam out;
    if (!(p.dom() == q.dom())) return out;

    // Tile the grid row by row: `top` holds the horizontal arrows of the
    // current row, initially p's steps; each of q's steps pushes one row down.
    std::vector<Arrow> top = p.arrows();
    std::vector<Arrow> rights;  // vertical arrows at the rightmost column
    for (const Arrow& down0 : q.arrows()) {
        Arrow down = down0;
        std::vector<Arrow> next_top;
        for (const Arrow& h : top) {
            SpanClosure sq = close_span(sys, h, down, budget);
            if (!sq.square) {
                out.definitive = sq.definitive;
                if (sq.definitive) out.failed_span = {h, down};
                return out;
            }
            // f' continues downward after cod(h); g' is the next horizontal.
            next_top.push_back(sq.square->second);
            down = sq.square->first;
        }
        rights.push_back(down);
        top = std::move(next_top);
    }

    Path from_p(p.cod());
    for (auto& a : rights) from_p.then(a);
    Path from_q(q.cod());
    for (auto& a : top) from_q.then(a);
    out.closed = {std::move(from_p), std::move(from_q)};
    return out;
}

TapReport check_tap_at(const System& sys, const Obj& x, int budget) {
    TapReport rep;
    std::vector<Arrow> ts;
    for (auto& t : sys.transitions(x, budget))
        if (t.kind == ArrowKind::Transition) ts.push_back(t);
    bool truncated = static_cast<int>(ts.size()) >= budget;
    for (auto& hop : sys.iso_steps(x)) ts.push_back(hop);

    bool any_unknown = truncated;
    for (std::size_t i = 0; i < ts.size(); ++i)
        for (std::size_t j = i; j < ts.size(); ++j) {
            SpanClosure sq = close_span(sys, ts[i], ts[j], budget);
            if (sq.square) continue;
            if (sq.definitive) {
                rep.verdict = Verdict::False;
                rep.failed_span = {ts[i], ts[j]};
                std::ostringstream os;
                os << "span (" << ts[i].label << ", " << ts[j].label
                   << ") does not close";
                rep.detail = os.str();
                return rep;
            }
            any_unknown = true;
        }
    rep.verdict = any_unknown ? Verdict::Unknown : Verdict::True;
    if (any_unknown) rep.detail = "search truncated by budget";
    return rep;
}

TapReport check_tap(const System& sys, int depth, int budget, int max_objects) {
    Fragment frag = explore(sys, depth, budget, max_objects);
    bool any_unknown = !frag.complete;
    for (auto& node : frag.nodes) {
        TapReport at = check_tap_at(sys, node.obj, budget);
        if (at.verdict == Verdict::False) {
            std::ostringstream os;
            os << "at object #" << (&node - frag.nodes.data()) << " (depth "
               << node.depth << "): " << at.detail;
            at.detail = os.str();
            return at;
        }
        if (at.verdict == Verdict::Unknown) any_unknown = true;
    }
    TapReport rep;
    rep.verdict = any_unknown ? Verdict::Unknown : Verdict::True;
    std::ostringstream os;
    os << "all spans closed on " << frag.nodes.size() << " objects to depth "
       << depth;
    if (any_unknown) os << " (scope truncated)";
    rep.detail = os.str();
    return rep;
}

}  // namespace evolve
