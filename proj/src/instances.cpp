#include "evolve/instances.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

#include "evolve/base.hpp"
#include "evolve/dpo.hpp"
#include "evolve/equality.hpp"
#include "evolve/graph_iso.hpp"

namespace evolve {
namespace {

const GraphObj& as_graph(const Obj& x) {
    if (auto* g = std::get_if<GraphObj>(&x.payload)) return *g;
    throw BadInput("expected a graph object");
}
const OrderObj& as_order(const Obj& x) {
    if (auto* o = std::get_if<OrderObj>(&x.payload)) return *o;
    throw BadInput("expected a linear-order object");
}
const SetObj& as_set(const Obj& x) {
    if (auto* s = std::get_if<SetObj>(&x.payload)) return *s;
    throw BadInput("expected a set object");
}
const ChainObj& as_chain(const Obj& x) {
    if (auto* c = std::get_if<ChainObj>(&x.payload)) return *c;
    throw BadInput("expected a chain object");
}

// Visits the k-subsets of items in lexicographic order until fn returns false.
template <class F>
void for_each_k_subset(const std::vector<int>& items, int k, F&& fn) {
    int n = static_cast<int>(items.size());
    if (k > n) return;
    std::vector<int> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    for (;;) {
        std::set<int> s;
        for (int i : idx) s.insert(items[i]);
        if (!fn(s)) return;
        int i = k - 1;
        while (i >= 0 && idx[i] == n - k + i) --i;
        if (i < 0) return;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

bool injective_total(const VertexMap& m, const std::set<int>& dom) {
    if (m.size() != dom.size()) return false;
    std::set<int> img;
    for (auto& [k, v] : m) {
        if (!dom.count(k)) return false;
        if (!img.insert(v).second) return false;
    }
    return true;
}

bool is_prime(std::int64_t v) {
    if (v < 2) return false;
    for (std::int64_t d = 2; d * d <= v; ++d)
        if (v % d == 0) return false;
    return true;
}

}  // namespace

// ----------------------------------------------------------------- graphs --

Obj GraphSystem::origin() const { return Obj(GraphObj{directed_, {}, {}}, 0); }

std::vector<Arrow> GraphSystem::transitions(const Obj& x, int budget) const {
    const GraphObj& g = as_graph(x);
    std::vector<int> verts(g.vertices.begin(), g.vertices.end());
    int n = static_cast<int>(verts.size());
    int vstar = verts.empty() ? 0 : verts.back() + 1;
    std::vector<Arrow> out{identity_arrow(x)};
    if (budget <= 0) return out;

    // Arrow-level distinctness is by exact attachment; additionally collapse
    // attachment sets in the same automorphism orbit when the object is small
    // enough for exact canonical keys.
    bool dedup = n <= 12;
    std::set<std::string> seen;
    int made = 0;

    auto emit = [&](const std::set<int>& outs, const std::set<int>& ins) {
        GraphObj cod = g;
        cod.vertices.insert(vstar);
        for (int v : outs) cod.add_edge(vstar, v);
        if (g.directed)
            for (int v : ins) cod.add_edge(v, vstar);
        if (dedup) {
            std::map<int, int> colors{{vstar, 1}};
            std::string key = canonical_graph_labeling(cod, colors).key;
            if (!seen.insert(key).second) return true;
        }
        VertexMap m;
        for (int v : g.vertices) m[v] = v;
        std::ostringstream label;
        label << "ext+" << vstar << "(";
        for (int v : outs) label << v << ' ';
        if (g.directed) {
            label << "|";
            for (int v : ins) label << ' ' << v;
        }
        label << ")";
        out.push_back(Arrow{x, Obj(std::move(cod)), std::move(m),
                            ArrowKind::Transition, label.str(), 1});
        return ++made < budget;
    };

    if (!g.directed) {
        for (int k = 0; k <= n && made < budget; ++k)
            for_each_k_subset(verts, k, [&](const std::set<int>& s) {
                return emit(s, {});
            });
    } else {
        for (int total = 0; total <= 2 * n && made < budget; ++total)
            for (int ko = std::max(0, total - n);
                 ko <= std::min(total, n) && made < budget; ++ko) {
                int ki = total - ko;
                for_each_k_subset(verts, ko, [&](const std::set<int>& outs) {
                    bool more = true;
                    for_each_k_subset(verts, ki, [&](const std::set<int>& ins) {
                        more = emit(outs, ins);
                        return more;
                    });
                    return more;
                });
            }
    }
    return out;
}

bool GraphSystem::is_transition(const Arrow& f) const {
    const GraphObj* d = std::get_if<GraphObj>(&f.dom.payload);
    const GraphObj* c = std::get_if<GraphObj>(&f.cod.payload);
    const VertexMap* m = std::get_if<VertexMap>(&f.map);
    if (!d || !c || !m) return false;
    if (d->directed != directed_ || c->directed != directed_) return false;
    if (!injective_total(*m, d->vertices)) return false;
    for (auto& [k, v] : *m)
        if (!c->vertices.count(v)) return false;
    for (int a : d->vertices)
        for (int b : d->vertices) {
            if (!d->directed && a >= b) continue;
            if (d->directed && a == b) continue;
            if (d->has_edge(a, b) != c->has_edge(m->at(a), m->at(b))) return false;
        }
    std::size_t diff = c->vertices.size() - d->vertices.size();
    return diff == 0 || diff == 1;
}

IsoSearch GraphSystem::find_iso(const Obj& a, const Obj& b) const {
    MonoSearch s = find_graph_iso(as_graph(a), as_graph(b));
    IsoSearch r;
    r.definitive = s.definitive;
    if (!s.maps.empty())
        r.found = Arrow{a, b, s.maps.front(), ArrowKind::Iso, "iso", 0};
    return r;
}

namespace {

// The unique codomain vertex outside the image of a one-point embedding.
int fresh_vertex(const GraphObj& cod, const VertexMap& m) {
    std::set<int> img;
    for (auto& [k, v] : m) img.insert(v);
    for (int v : cod.vertices)
        if (!img.count(v)) return v;
    throw BadInput("embedding is not one-point");
}

// Factors an induced embedding as an iso onto the induced image followed by
// one-point inclusions in ascending vertex order.
Path factor_graph_embedding(const Arrow& emb) {
    const GraphObj& e = std::get<GraphObj>(emb.cod.payload);
    const VertexMap& m = std::get<VertexMap>(emb.map);
    std::set<int> img;
    for (auto& [k, v] : m) img.insert(v);
    auto induced = [&](const std::set<int>& vs) {
        GraphObj sub{e.directed, vs, {}};
        for (auto& [a, b] : e.edges)
            if (vs.count(a) && vs.count(b)) sub.edges.insert({a, b});
        return sub;
    };
    Obj stage(induced(img));
    Path p(Arrow{emb.dom, stage, m, ArrowKind::Iso, "onto-image", 0});
    std::set<int> cur = img;
    for (int v : e.vertices) {
        if (img.count(v)) continue;
        cur.insert(v);
        Obj next(induced(cur));
        VertexMap id;
        for (int w : cur)
            if (w != v) id[w] = w;
        p.then(Arrow{stage, next, std::move(id), ArrowKind::Transition,
                     "incl+" + std::to_string(v), 1});
        stage = next;
    }
    return p;
}

}  // namespace

std::optional<std::pair<Arrow, Arrow>> GraphSystem::amalgamate(const Arrow& f,
                                                               const Arrow& g) const {
    if (!(f.dom == g.dom)) return std::nullopt;
    if (!is_transition(f) || !is_transition(g)) return std::nullopt;
    const GraphObj& x = as_graph(f.dom);
    const GraphObj& y = as_graph(f.cod);
    const GraphObj& z = as_graph(g.cod);
    if (y.vertices.size() == x.vertices.size())
        return std::make_pair(fuse(invert_iso(Arrow{f.dom, f.cod, f.map,
                                                    ArrowKind::Iso, f.label, 0}),
                                   g),
                              identity_arrow(g.cod));
    if (z.vertices.size() == x.vertices.size())
        return std::make_pair(identity_arrow(f.cod),
                              fuse(invert_iso(Arrow{g.dom, g.cod, g.map,
                                                    ArrowKind::Iso, g.label, 0}),
                                   f));

    const VertexMap& fm = std::get<VertexMap>(f.map);
    const VertexMap& gm = std::get<VertexMap>(g.map);
    int ystar = fresh_vertex(y, fm);
    int w = z.vertices.empty() ? 0 : *z.vertices.rbegin() + 1;
    GraphObj wg = z;
    wg.vertices.insert(w);
    for (auto& [xv, yv] : fm) {
        if (y.has_edge(ystar, yv)) wg.add_edge(w, gm.at(xv));
        if (directed_ && y.has_edge(yv, ystar)) wg.add_edge(gm.at(xv), w);
    }
    Obj wobj{std::move(wg)};
    VertexMap fpm;
    for (auto& [xv, yv] : fm) fpm[yv] = gm.at(xv);
    fpm[ystar] = w;
    VertexMap gpm;
    for (int v : z.vertices) gpm[v] = v;
    Arrow fp{f.cod, wobj, std::move(fpm), ArrowKind::Transition, "amal-f'", 1};
    Arrow gp{g.cod, wobj, std::move(gpm), ArrowKind::Transition, "amal-g'", 1};
    return std::make_pair(std::move(fp), std::move(gp));
}

std::optional<Path> GraphSystem::absorb_into(const Arrow& t, const Arrow& reach) const {
    if (!is_transition(t)) return std::nullopt;
    const GraphObj& x = as_graph(t.dom);
    const GraphObj& y = as_graph(t.cod);
    const GraphObj& e = as_graph(reach.cod);
    const VertexMap& tm = std::get<VertexMap>(t.map);
    const VertexMap& rm = std::get<VertexMap>(reach.map);
    if (y.vertices.size() == x.vertices.size())
        return factor_graph_embedding(
            fuse(invert_iso(Arrow{t.dom, t.cod, t.map, ArrowKind::Iso, "", 0}), reach));
    int ystar = fresh_vertex(y, tm);
    std::set<int> img;
    for (auto& [k, v] : rm) img.insert(v);
    for (int cand : e.vertices) {
        if (img.count(cand)) continue;
        bool ok = true;
        for (int xv : x.vertices) {
            if (e.has_edge(cand, rm.at(xv)) != y.has_edge(ystar, tm.at(xv))) ok = false;
            if (directed_ && e.has_edge(rm.at(xv), cand) != y.has_edge(tm.at(xv), ystar))
                ok = false;
            if (!ok) break;
        }
        if (!ok) continue;
        VertexMap qm;
        for (auto& [xv, yv] : tm) qm[yv] = rm.at(xv);
        qm[ystar] = cand;
        return factor_graph_embedding(
            Arrow{t.cod, reach.cod, std::move(qm), ArrowKind::Transition, "absorb", 0});
    }
    return std::nullopt;
}

// ---------------------------------------------------------- linear orders --

namespace {

int order_pos(const OrderObj& o, int label) {
    for (std::size_t i = 0; i < o.points.size(); ++i)
        if (o.points[i] == label) return static_cast<int>(i);
    return -1;
}

Path factor_order_embedding(const Arrow& emb) {
    const OrderObj& e = std::get<OrderObj>(emb.cod.payload);
    const VertexMap& m = std::get<VertexMap>(emb.map);
    std::set<int> img;
    for (auto& [k, v] : m) img.insert(v);
    auto restrict_to = [&](const std::set<int>& vs) {
        OrderObj sub;
        for (int p : e.points)
            if (vs.count(p)) sub.points.push_back(p);
        return sub;
    };
    Obj stage(restrict_to(img));
    Path p(Arrow{emb.dom, stage, m, ArrowKind::Iso, "onto-image", 0});
    std::set<int> cur = img;
    for (int v : e.points) {
        if (img.count(v)) continue;
        cur.insert(v);
        Obj next(restrict_to(cur));
        VertexMap id;
        for (int w : cur)
            if (w != v) id[w] = w;
        p.then(Arrow{stage, next, std::move(id), ArrowKind::Transition,
                     "incl+" + std::to_string(v), 1});
        stage = next;
    }
    return p;
}

}  // namespace

Obj LinOrderSystem::origin() const { return Obj(OrderObj{}, 0); }

std::vector<Arrow> LinOrderSystem::transitions(const Obj& x, int budget) const {
    const OrderObj& o = as_order(x);
    int n = static_cast<int>(o.points.size());
    int fresh = 0;
    for (int p : o.points) fresh = std::max(fresh, p + 1);
    std::vector<Arrow> out{identity_arrow(x)};
    // Top slot first: under a budget that lists fewer slots than the order has
    // gaps, the surviving representatives keep the order growing upward, so
    // budgeted limit constructions stay cofinal for top insertions.
    for (int k = n, listed = 0; k >= 0 && listed < budget; --k, ++listed) {
        OrderObj cod = o;
        cod.points.insert(cod.points.begin() + k, fresh);
        VertexMap m;
        for (int p : o.points) m[p] = p;
        out.push_back(Arrow{x, Obj(std::move(cod)), std::move(m),
                            ArrowKind::Transition, "ins@" + std::to_string(k), 1});
    }
    return out;
}

bool LinOrderSystem::is_transition(const Arrow& f) const {
    const OrderObj* d = std::get_if<OrderObj>(&f.dom.payload);
    const OrderObj* c = std::get_if<OrderObj>(&f.cod.payload);
    const VertexMap* m = std::get_if<VertexMap>(&f.map);
    if (!d || !c || !m) return false;
    std::set<int> dset(d->points.begin(), d->points.end());
    if (!injective_total(*m, dset)) return false;
    int last = -1;
    for (int p : d->points) {  // images must appear in order
        int pos = order_pos(*c, m->at(p));
        if (pos < 0 || pos <= last) return false;
        last = pos;
    }
    std::size_t diff = c->points.size() - d->points.size();
    return diff == 0 || diff == 1;
}

IsoSearch LinOrderSystem::find_iso(const Obj& a, const Obj& b) const {
    const OrderObj& oa = as_order(a);
    const OrderObj& ob = as_order(b);
    IsoSearch r;
    if (oa.points.size() != ob.points.size()) return r;
    VertexMap m;
    for (std::size_t i = 0; i < oa.points.size(); ++i) m[oa.points[i]] = ob.points[i];
    r.found = Arrow{a, b, std::move(m), ArrowKind::Iso, "iso", 0};
    return r;
}

std::optional<std::pair<Arrow, Arrow>> LinOrderSystem::amalgamate(
    const Arrow& f, const Arrow& g) const {
    if (!(f.dom == g.dom)) return std::nullopt;
    if (!is_transition(f) || !is_transition(g)) return std::nullopt;
    const OrderObj& x = as_order(f.dom);
    const OrderObj& y = as_order(f.cod);
    const OrderObj& z = as_order(g.cod);
    if (y.points.size() == x.points.size())
        return std::make_pair(fuse(invert_iso(Arrow{f.dom, f.cod, f.map,
                                                    ArrowKind::Iso, f.label, 0}),
                                   g),
                              identity_arrow(g.cod));
    if (z.points.size() == x.points.size())
        return std::make_pair(identity_arrow(f.cod),
                              fuse(invert_iso(Arrow{g.dom, g.cod, g.map,
                                                    ArrowKind::Iso, g.label, 0}),
                                   f));

    const VertexMap& fm = std::get<VertexMap>(f.map);
    const VertexMap& gm = std::get<VertexMap>(g.map);
    // Gap index of the new point relative to the shared domain.
    auto gap_of = [&](const OrderObj& cod, const VertexMap& m, const OrderObj& dom) {
        std::set<int> img;
        for (auto& [a, b] : m) img.insert(b);
        int star = -1;
        for (int p : cod.points)
            if (!img.count(p)) star = p;
        int before = 0;
        int star_pos = order_pos(cod, star);
        for (int p : dom.points)
            if (order_pos(cod, m.at(p)) < star_pos) ++before;
        return std::pair<int, int>{before, star};
    };
    auto [k, ystar] = gap_of(y, fm, x);
    int fresh = 0;
    for (int p : z.points) fresh = std::max(fresh, p + 1);
    OrderObj wo = z;
    // Place the new point in the gap matching k; when both new points share a
    // gap, the older one (q) comes first.
    std::vector<int> xin_z;
    for (int p : x.points) xin_z.push_back(gm.at(p));
    int idx;
    if (k == static_cast<int>(x.points.size()))
        idx = static_cast<int>(wo.points.size());
    else {
        idx = order_pos(wo, xin_z[k]);
    }
    wo.points.insert(wo.points.begin() + idx, fresh);
    Obj wobj{std::move(wo)};
    VertexMap fpm;
    for (auto& [xv, yv] : fm) fpm[yv] = gm.at(xv);
    fpm[ystar] = fresh;
    VertexMap gpm;
    for (int p : z.points) gpm[p] = p;
    Arrow fp{f.cod, wobj, std::move(fpm), ArrowKind::Transition, "amal-f'", 1};
    Arrow gp{g.cod, wobj, std::move(gpm), ArrowKind::Transition, "amal-g'", 1};
    return std::make_pair(std::move(fp), std::move(gp));
}

std::optional<Path> LinOrderSystem::absorb_into(const Arrow& t,
                                                const Arrow& reach) const {
    if (!is_transition(t)) return std::nullopt;
    const OrderObj& x = as_order(t.dom);
    const OrderObj& y = as_order(t.cod);
    const OrderObj& e = as_order(reach.cod);
    const VertexMap& tm = std::get<VertexMap>(t.map);
    const VertexMap& rm = std::get<VertexMap>(reach.map);
    if (y.points.size() == x.points.size())
        return factor_order_embedding(
            fuse(invert_iso(Arrow{t.dom, t.cod, t.map, ArrowKind::Iso, "", 0}), reach));
    std::set<int> yimg;
    for (auto& [a, b] : tm) yimg.insert(b);
    int ystar = -1, star_pos = -1;
    for (int p : y.points)
        if (!yimg.count(p)) ystar = p;
    star_pos = order_pos(y, ystar);
    std::set<int> eimg;
    for (auto& [a, b] : rm) eimg.insert(b);
    for (int cand : e.points) {
        if (eimg.count(cand)) continue;
        bool ok = true;
        int cpos = order_pos(e, cand);
        for (int xv : x.points) {
            bool before_t = order_pos(y, tm.at(xv)) < star_pos;
            bool before_e = order_pos(e, rm.at(xv)) < cpos;
            if (before_t != before_e) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        VertexMap qm;
        for (auto& [xv, yv] : tm) qm[yv] = rm.at(xv);
        qm[ystar] = cand;
        return factor_order_embedding(
            Arrow{t.cod, reach.cod, std::move(qm), ArrowKind::Transition, "absorb", 0});
    }
    return std::nullopt;
}

// ------------------------------------------------------------------ poset --

PosetSystem::PosetSystem(std::string tag, std::set<int> elems,
                         std::set<std::pair<int, int>> le, int bottom)
    : tag_(std::move(tag)), elems_(std::move(elems)), le_(std::move(le)),
      bottom_(bottom) {
    for (int e : elems_) le_.insert({e, e});
    if (!elems_.count(bottom_)) throw BadInput("poset bottom not an element");
}

PosetSystem PosetSystem::diamond() {
    return PosetSystem("diamond", {0, 1, 2, 3},
                       {{0, 1}, {0, 2}, {0, 3}, {1, 3}, {2, 3}}, 0);
}

PosetSystem PosetSystem::vee() {
    return PosetSystem("vee", {0, 1, 2}, {{0, 1}, {0, 2}}, 0);
}

bool PosetSystem::covers(int a, int b) const {
    if (a == b || !le_.count({a, b})) return false;
    for (int c : elems_)
        if (c != a && c != b && le_.count({a, c}) && le_.count({c, b})) return false;
    return true;
}

Obj PosetSystem::origin() const { return Obj(PosetObj{bottom_}, 0); }

std::vector<Arrow> PosetSystem::transitions(const Obj& x, int budget) const {
    const PosetObj* p = std::get_if<PosetObj>(&x.payload);
    if (!p || !elems_.count(p->elem)) throw BadInput("not an element of this poset");
    std::vector<Arrow> out{identity_arrow(x)};
    int made = 0;
    for (int e : elems_) {
        if (made >= budget) break;
        if (covers(p->elem, e)) {
            out.push_back(Arrow{x, Obj(PosetObj{e}), UnitMap{}, ArrowKind::Transition,
                                "up->" + std::to_string(e), 1});
            ++made;
        }
    }
    return out;
}

bool PosetSystem::is_transition(const Arrow& f) const {
    const PosetObj* d = std::get_if<PosetObj>(&f.dom.payload);
    const PosetObj* c = std::get_if<PosetObj>(&f.cod.payload);
    if (!d || !c || !elems_.count(d->elem) || !elems_.count(c->elem)) return false;
    return d->elem == c->elem || covers(d->elem, c->elem);
}

IsoSearch PosetSystem::find_iso(const Obj& a, const Obj& b) const {
    const PosetObj* pa = std::get_if<PosetObj>(&a.payload);
    const PosetObj* pb = std::get_if<PosetObj>(&b.payload);
    IsoSearch r;
    if (pa && pb && pa->elem == pb->elem)
        r.found = Arrow{a, b, UnitMap{}, ArrowKind::Iso, "id", 0};
    return r;
}

std::optional<std::pair<Arrow, Arrow>> PosetSystem::amalgamate(const Arrow& f,
                                                               const Arrow& g) const {
    const PosetObj* fd = std::get_if<PosetObj>(&f.dom.payload);
    const PosetObj* fc = std::get_if<PosetObj>(&f.cod.payload);
    const PosetObj* gc = std::get_if<PosetObj>(&g.cod.payload);
    if (!fd || !fc || !gc || !(f.dom == g.dom)) return std::nullopt;
    int b = fc->elem, c = gc->elem;
    if (b == fd->elem) return std::make_pair(g, identity_arrow(g.cod));
    if (c == fd->elem) return std::make_pair(identity_arrow(f.cod), f);
    if (b == c)
        return std::make_pair(identity_arrow(f.cod), identity_arrow(g.cod));
    for (int w : elems_)
        if (covers(b, w) && covers(c, w))
            return std::make_pair(
                Arrow{f.cod, Obj(PosetObj{w}), UnitMap{}, ArrowKind::Transition,
                      "up->" + std::to_string(w), 1},
                Arrow{g.cod, Obj(PosetObj{w}), UnitMap{}, ArrowKind::Transition,
                      "up->" + std::to_string(w), 1});
    return std::nullopt;
}

// ----------------------------------------------------------------- monoid --

MonoidSystem::MonoidSystem(std::vector<std::int64_t> generators)
    : gens_(std::move(generators)) {
    std::sort(gens_.begin(), gens_.end());
    gens_.erase(std::unique(gens_.begin(), gens_.end()), gens_.end());
    for (auto g : gens_)
        if (!is_prime(g)) throw BadInput("monoid generators must be prime");
}

std::string MonoidSystem::name() const {
    if (gens_.empty()) return "monoid";
    std::ostringstream os;
    os << "monoid:";
    for (std::size_t i = 0; i < gens_.size(); ++i) os << (i ? "," : "") << gens_[i];
    return os.str();
}

Obj MonoidSystem::origin() const { return Obj(MonoidObj{}, 0); }

std::vector<Arrow> MonoidSystem::transitions(const Obj& x, int budget) const {
    if (!std::get_if<MonoidObj>(&x.payload)) throw BadInput("expected monoid object");
    std::vector<Arrow> out{identity_arrow(x)};
    int made = 0;
    if (!gens_.empty()) {
        for (auto g : gens_) {
            if (made >= budget) break;
            out.push_back(Arrow{x, x, MonoidMap{g}, ArrowKind::Transition,
                                "*" + std::to_string(g), 1});
            ++made;
        }
    } else {
        for (std::int64_t p = 2; made < budget; ++p) {
            if (!is_prime(p)) continue;
            out.push_back(Arrow{x, x, MonoidMap{p}, ArrowKind::Transition,
                                "*" + std::to_string(p), 1});
            ++made;
        }
    }
    return out;
}

bool MonoidSystem::is_transition(const Arrow& f) const {
    const MonoidMap* m = std::get_if<MonoidMap>(&f.map);
    if (!m || m->value == 0) return false;
    std::int64_t a = m->value < 0 ? -m->value : m->value;
    if (a == 1) return true;
    if (!is_prime(a)) return false;
    return gens_.empty() || std::count(gens_.begin(), gens_.end(), a) > 0;
}

IsoSearch MonoidSystem::find_iso(const Obj& a, const Obj& b) const {
    IsoSearch r;
    if (std::get_if<MonoidObj>(&a.payload) && std::get_if<MonoidObj>(&b.payload))
        r.found = Arrow{a, b, MonoidMap{1}, ArrowKind::Iso, "id", 0};
    return r;
}

std::optional<std::pair<Arrow, Arrow>> MonoidSystem::amalgamate(const Arrow& f,
                                                                const Arrow& g) const {
    const MonoidMap* fm = std::get_if<MonoidMap>(&f.map);
    const MonoidMap* gm = std::get_if<MonoidMap>(&g.map);
    if (!fm || !gm) return std::nullopt;
    auto kind = [](std::int64_t v) {
        return (v == 1 || v == -1) ? ArrowKind::Iso : ArrowKind::Transition;
    };
    Arrow fp{f.cod, f.cod, MonoidMap{gm->value}, kind(gm->value),
             "*" + std::to_string(gm->value), kind(gm->value) == ArrowKind::Iso ? 0 : 1};
    Arrow gp{g.cod, g.cod, MonoidMap{fm->value}, kind(fm->value),
             "*" + std::to_string(fm->value), kind(fm->value) == ArrowKind::Iso ? 0 : 1};
    return std::make_pair(std::move(fp), std::move(gp));
}

// --------------------------------------------------------------- set fork --

Obj SetForkSystem::origin() const { return Obj(SetObj{{0}}, 0); }

std::vector<Arrow> SetForkSystem::transitions(const Obj& x, int budget) const {
    const SetObj& s = as_set(x);
    std::vector<Arrow> out{identity_arrow(x)};
    if (budget <= 0) return out;
    if (s.elems == std::set<int>{0})
        out.push_back(Arrow{x, Obj(SetObj{{0, 1}}), VertexMap{{0, 0}},
                            ArrowKind::Transition, "grow2", 1});
    else if (s.elems == std::set<int>{1})
        out.push_back(Arrow{x, Obj(SetObj{{0, 1, 2}}), VertexMap{{1, 1}},
                            ArrowKind::Transition, "grow3", 1});
    return out;
}

bool SetForkSystem::is_transition(const Arrow& f) const {
    const SetObj* d = std::get_if<SetObj>(&f.dom.payload);
    const SetObj* c = std::get_if<SetObj>(&f.cod.payload);
    const VertexMap* m = std::get_if<VertexMap>(&f.map);
    if (!d || !c || !m) return false;
    if (!injective_total(*m, d->elems)) return false;
    for (auto& [k, v] : *m)
        if (!c->elems.count(v)) return false;
    if (d->elems.size() == c->elems.size()) return true;  // bijection
    if (d->elems == std::set<int>{0} && c->elems.size() == 2) return true;
    if (d->elems == std::set<int>{1} && c->elems.size() == 3) return true;
    return false;
}

IsoSearch SetForkSystem::find_iso(const Obj& a, const Obj& b) const {
    const SetObj& sa = as_set(a);
    const SetObj& sb = as_set(b);
    IsoSearch r;
    if (sa.elems.size() != sb.elems.size()) return r;
    VertexMap m;
    auto it = sb.elems.begin();
    for (int e : sa.elems) m[e] = *it++;
    r.found = Arrow{a, b, std::move(m), ArrowKind::Iso, "iso", 0};
    return r;
}

std::vector<Arrow> SetForkSystem::iso_steps(const Obj& x) const {
    const SetObj& s = as_set(x);
    std::vector<Arrow> out;
    if (s.elems.size() != 1) return out;
    int v = *s.elems.begin();
    for (int target : {0, 1}) {
        if (v == target) continue;
        out.push_back(Arrow{x, Obj(SetObj{{target}}), VertexMap{{v, target}},
                            ArrowKind::Iso, "relabel", 0});
    }
    return out;
}

bool SetForkSystem::class_has_nontrivial_transitions(const Obj& x, int) const {
    return as_set(x).elems.size() == 1;
}

// ------------------------------------------------------------------ chain --

ChainSystem::ChainSystem(std::vector<std::int64_t> dims, bool free_merges)
    : dims_(std::move(dims)), free_(free_merges) {
    if (dims_.size() < 2) throw BadInput("chain needs at least two dimensions");
    for (auto d : dims_)
        if (d <= 0) throw BadInput("chain dimensions must be positive");
}

Obj ChainSystem::origin() const {
    ChainObj c;
    for (std::size_t i = 0; i + 1 < dims_.size(); ++i)
        c.blocks.push_back({dims_[i], dims_[i + 1]});
    return Obj(std::move(c), 0);
}

namespace {

Arrow chain_merge(const Obj& x, const ChainObj& c, int i, int j) {
    ChainObj cod;
    ChainMap m;
    std::int64_t cost = 0;
    if (__builtin_mul_overflow(c.blocks[i].first, c.blocks[i].second, &cost) ||
        __builtin_mul_overflow(cost, c.blocks[j].second, &cost))
        throw std::overflow_error("transition cost overflows 64-bit range");
    for (int k = 0; k < static_cast<int>(c.blocks.size()); ++k) {
        if (k == j) continue;
        if (k == i) {
            cod.blocks.push_back({c.blocks[i].first, c.blocks[j].second});
            m.fibers.push_back({i, j});
        } else {
            cod.blocks.push_back(c.blocks[k]);
            m.fibers.push_back({k});
        }
    }
    std::ostringstream label;
    label << "mul(" << i << "," << j << ")";
    return Arrow{x, Obj(std::move(cod)), std::move(m), ArrowKind::Transition,
                 label.str(), cost};
}

}  // namespace

std::vector<Arrow> ChainSystem::transitions(const Obj& x, int budget) const {
    const ChainObj& c = as_chain(x);
    int m = static_cast<int>(c.blocks.size());
    std::vector<Arrow> out{identity_arrow(x)};
    int made = 0;
    for (int i = 0; i + 1 < m && made < budget; ++i) {
        out.push_back(chain_merge(x, c, i, i + 1));
        ++made;
    }
    if (free_) {
        for (int i = 0; i < m && made < budget; ++i)
            for (int j = i + 2; j < m && made < budget; ++j)
                if (c.blocks[i].second == c.blocks[j].first) {
                    out.push_back(chain_merge(x, c, i, j));
                    ++made;
                }
    }
    return out;
}

bool ChainSystem::is_transition(const Arrow& f) const {
    const ChainObj* d = std::get_if<ChainObj>(&f.dom.payload);
    const ChainObj* c = std::get_if<ChainObj>(&f.cod.payload);
    const ChainMap* m = std::get_if<ChainMap>(&f.map);
    if (!d || !c || !m) return false;
    if (m->fibers.size() != c->blocks.size()) return false;
    std::vector<int> flat;
    int big = -1;
    for (int i = 0; i < static_cast<int>(m->fibers.size()); ++i) {
        auto& fib = m->fibers[i];
        if (fib.empty() || fib.size() > 2) return false;
        if (fib.size() == 2) {
            if (big >= 0) return false;
            big = i;
        }
        for (int v : fib) flat.push_back(v);
    }
    std::vector<int> sorted = flat;
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < static_cast<int>(sorted.size()); ++i)
        if (sorted[i] != i) return false;
    if (flat != sorted) return false;  // fibers listed in source order
    if (static_cast<int>(flat.size()) != static_cast<int>(d->blocks.size()))
        return false;
    if (big < 0) return d->blocks == c->blocks;  // identity
    int i = m->fibers[big][0], j = m->fibers[big][1];
    if (!free_ && j != i + 1) return false;
    if (d->blocks[i].second != d->blocks[j].first) return false;
    // Codomain blocks must be the fiberwise products.
    for (int k = 0; k < static_cast<int>(m->fibers.size()); ++k) {
        auto& fib = m->fibers[k];
        std::pair<std::int64_t, std::int64_t> want =
            fib.size() == 1 ? d->blocks[fib[0]]
                            : std::pair<std::int64_t, std::int64_t>{
                                  d->blocks[fib[0]].first, d->blocks[fib[1]].second};
        if (c->blocks[k] != want) return false;
    }
    return true;
}

IsoSearch ChainSystem::find_iso(const Obj& a, const Obj& b) const {
    IsoSearch r;
    if (as_chain(a).blocks == as_chain(b).blocks)
        r.found = Arrow{a, b, identity_map(a), ArrowKind::Iso, "id", 0};
    return r;
}

std::optional<std::pair<Arrow, Arrow>> ChainSystem::amalgamate(const Arrow& f,
                                                               const Arrow& g) const {
    if (!(f.dom == g.dom)) return std::nullopt;
    const ChainObj& x = as_chain(f.dom);
    const ChainMap* fm = std::get_if<ChainMap>(&f.map);
    const ChainMap* gm = std::get_if<ChainMap>(&g.map);
    if (!fm || !gm) return std::nullopt;
    auto pair_of = [](const ChainMap& m) -> std::optional<std::pair<int, int>> {
        for (auto& fib : m.fibers)
            if (fib.size() == 2) return std::make_pair(fib[0], fib[1]);
        return std::nullopt;
    };
    auto pf = pair_of(*fm), pg = pair_of(*gm);
    if (!pf) return std::make_pair(g, identity_arrow(g.cod));
    if (!pg) return std::make_pair(identity_arrow(f.cod), f);
    if (*pf == *pg)
        return std::make_pair(identity_arrow(f.cod), identity_arrow(g.cod));

    // Merge both pairs via union-find over source indexes.
    int n = static_cast<int>(x.blocks.size());
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    };
    auto unite = [&](int a, int b) { parent[find(a)] = find(b); };
    unite(pf->first, pf->second);
    unite(pg->first, pg->second);
    std::map<int, std::vector<int>> classes;
    for (int v = 0; v < n; ++v) classes[find(v)].push_back(v);
    std::vector<std::vector<int>> fibers;
    for (auto& [root, vs] : classes) {
        std::vector<int> fib = vs;
        std::sort(fib.begin(), fib.end());
        fibers.push_back(std::move(fib));
    }
    std::sort(fibers.begin(), fibers.end(),
              [](auto& a, auto& b) { return a.front() < b.front(); });
    ChainObj w;
    for (auto& fib : fibers) {
        for (std::size_t q = 0; q + 1 < fib.size(); ++q)
            if (x.blocks[fib[q]].second != x.blocks[fib[q + 1]].first)
                return std::nullopt;  // incompatible shapes, no amalgam here
        w.blocks.push_back({x.blocks[fib.front()].first, x.blocks[fib.back()].second});
    }
    Obj wobj{w};
    // Express W's fibers in terms of a codomain's blocks.
    auto relative = [&](const ChainObj& cod, const ChainMap& m) {
        ChainMap rel;
        std::int64_t cost = 0;
        for (auto& fib : fibers) {
            std::vector<int> blocks_in;
            for (int b = 0; b < static_cast<int>(m.fibers.size()); ++b)
                if (std::count(fib.begin(), fib.end(), m.fibers[b][0]) > 0)
                    blocks_in.push_back(b);
            if (blocks_in.size() == 2)
                cost += cod.blocks[blocks_in[0]].first *
                        cod.blocks[blocks_in[0]].second *
                        cod.blocks[blocks_in[1]].second;
            rel.fibers.push_back(std::move(blocks_in));
        }
        return std::make_pair(rel, cost);
    };
    auto [relf, costf] = relative(as_chain(f.cod), *fm);
    auto [relg, costg] = relative(as_chain(g.cod), *gm);
    Arrow fp{f.cod, wobj, std::move(relf), ArrowKind::Transition, "amal-f'", costf};
    Arrow gp{g.cod, wobj, std::move(relg), ArrowKind::Transition, "amal-g'", costg};
    return std::make_pair(std::move(fp), std::move(gp));
}

// --------------------------------------------------------- finite category --

FiniteCategorySystem::FiniteCategorySystem(Data d) : data_(std::move(d)) {
    if (static_cast<int>(data_.cls.size()) != data_.n)
        throw BadInput("category class table has wrong size");
    for (int i = 0; i < data_.n; ++i) data_.class_le.insert({data_.cls[i], data_.cls[i]});
}

Obj FiniteCategorySystem::object(int id) const {
    return Obj(CatObj{id, data_.cls[id]});
}

Obj FiniteCategorySystem::origin() const { return object(0); }

std::vector<Arrow> FiniteCategorySystem::transitions(const Obj& x, int budget) const {
    const CatObj* o = std::get_if<CatObj>(&x.payload);
    if (!o || o->id < 0 || o->id >= data_.n) throw BadInput("not an object here");
    std::vector<Arrow> out{identity_arrow(x)};
    std::set<int> seen_cls;
    int made = 0;
    for (int y = 0; y < data_.n && made < budget; ++y) {
        if (!data_.steps.count({o->id, y})) continue;
        if (!seen_cls.insert(data_.cls[y]).second) continue;  // arrow-isomorphic
        out.push_back(Arrow{x, object(y), UnitMap{}, ArrowKind::Transition,
                            "step->" + std::to_string(y), 1});
        ++made;
    }
    return out;
}

bool FiniteCategorySystem::is_transition(const Arrow& f) const {
    const CatObj* d = std::get_if<CatObj>(&f.dom.payload);
    const CatObj* c = std::get_if<CatObj>(&f.cod.payload);
    if (!d || !c) return false;
    if (d->id < 0 || d->id >= data_.n || c->id < 0 || c->id >= data_.n) return false;
    if (data_.cls[d->id] != d->iso_class || data_.cls[c->id] != c->iso_class)
        return false;
    if (d->iso_class == c->iso_class) return true;  // iso
    return data_.steps.count({d->id, c->id}) > 0;
}

IsoSearch FiniteCategorySystem::find_iso(const Obj& a, const Obj& b) const {
    const CatObj* ca = std::get_if<CatObj>(&a.payload);
    const CatObj* cb = std::get_if<CatObj>(&b.payload);
    IsoSearch r;
    if (ca && cb && ca->iso_class == cb->iso_class)
        r.found = Arrow{a, b, UnitMap{}, ArrowKind::Iso, "iso", 0};
    return r;
}

std::vector<Arrow> FiniteCategorySystem::iso_steps(const Obj& x) const {
    const CatObj* o = std::get_if<CatObj>(&x.payload);
    std::vector<Arrow> out;
    if (!o) return out;
    for (int y = 0; y < data_.n; ++y)
        if (y != o->id && data_.cls[y] == o->iso_class)
            out.push_back(Arrow{x, object(y), UnitMap{}, ArrowKind::Iso,
                                "swap->" + std::to_string(y), 0});
    return out;
}

bool FiniteCategorySystem::class_has_nontrivial_transitions(const Obj& x, int) const {
    const CatObj* o = std::get_if<CatObj>(&x.payload);
    if (!o) return false;
    for (auto& [a, b] : data_.steps)
        if (data_.cls[a] == o->iso_class) return true;
    return false;
}

bool FiniteCategorySystem::is_regular() const {
    for (auto& [a, b] : data_.steps)
        for (int a2 = 0; a2 < data_.n; ++a2)
            if (data_.cls[a2] == data_.cls[a] && !data_.steps.count({a2, b}))
                return false;
    return true;
}

FiniteCategorySystem FiniteCategorySystem::random(std::uint64_t seed, bool regular,
                                                  int max_objects) {
    std::mt19937_64 rng(seed);
    Data d;
    d.n = 3 + static_cast<int>(rng() % std::max(1, max_objects - 2));
    d.cls.resize(d.n);
    int nclasses = 1;
    d.cls[0] = 0;
    for (int i = 1; i < d.n; ++i) {
        if (rng() % 10 < 6)
            d.cls[i] = nclasses++;
        else
            d.cls[i] = static_cast<int>(rng() % nclasses);
    }
    // Random DAG on classes (edges point to higher class ids), transitively
    // closed.
    std::set<std::pair<int, int>> lt;
    for (int a = 0; a < nclasses; ++a)
        for (int b = a + 1; b < nclasses; ++b)
            if (rng() % 2 == 0) lt.insert({a, b});
    for (bool changed = true; changed;) {
        changed = false;
        for (auto& [a, b] : std::set<std::pair<int, int>>(lt))
            for (int c = 0; c < nclasses; ++c)
                if (lt.count({b, c}) && lt.insert({a, c}).second) changed = true;
    }
    for (auto& p : lt) d.class_le.insert(p);
    for (int c = 0; c < nclasses; ++c) d.class_le.insert({c, c});

    std::map<std::pair<int, int>, bool> class_choice;
    std::set<std::pair<int, int>> chosen;  // (object, target class)
    for (int x = 0; x < d.n; ++x)
        for (int cb = 0; cb < nclasses; ++cb) {
            if (!lt.count({d.cls[x], cb})) continue;
            bool take;
            if (regular) {
                auto key = std::make_pair(d.cls[x], cb);
                auto it = class_choice.find(key);
                if (it == class_choice.end()) {
                    take = rng() % 2 == 0;
                    class_choice[key] = take;
                } else {
                    take = it->second;
                }
            } else {
                take = rng() % 2 == 0;
            }
            if (take) chosen.insert({x, cb});
        }
    // Cap at three outgoing steps per object, trimming whole target classes
    // so that in regular mode isomorphic objects keep identical step sets.
    std::vector<int> class_size(nclasses, 0);
    for (int x = 0; x < d.n; ++x) ++class_size[d.cls[x]];
    for (int x = 0; x < d.n; ++x) {
        int used = 0;
        for (int cb = 0; cb < nclasses; ++cb) {
            if (!chosen.count({x, cb})) continue;
            if (used + class_size[cb] > 3) continue;
            used += class_size[cb];
            for (int y = 0; y < d.n; ++y)
                if (d.cls[y] == cb) d.steps.insert({x, y});
        }
    }
    d.tag = std::to_string(seed) + (regular ? ":regular" : "");
    return FiniteCategorySystem(std::move(d));
}

FiniteCategorySystem FiniteCategorySystem::split_fork() {
    Data d;
    d.n = 5;
    d.cls = {0, 1, 1, 2, 3};
    for (auto& p : std::vector<std::pair<int, int>>{
             {0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}})
        d.class_le.insert(p);
    d.steps = {{0, 1}, {0, 2}, {1, 3}, {2, 4}};
    d.tag = "split";
    return FiniteCategorySystem(std::move(d));
}

// ---------------------------------------------------------------- factory --

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    parts.push_back(cur);
    return parts;
}

std::vector<std::int64_t> parse_ints(const std::string& s) {
    std::vector<std::int64_t> out;
    for (auto& part : split(s, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stoll(part, &used));
            if (used != part.size()) throw BadInput("bad integer: " + part);
        } catch (const std::exception&) {
            throw BadInput("bad integer: " + part);
        }
    }
    return out;
}

}  // namespace

std::unique_ptr<System> make_system(const std::string& spec) {
    auto parts = split(spec, ':');
    const std::string& head = parts[0];
    if (head == "graph" && parts.size() == 1)
        return std::make_unique<GraphSystem>(false);
    if (head == "digraph" && parts.size() == 1)
        return std::make_unique<GraphSystem>(true);
    if (head == "linorder" && parts.size() == 1)
        return std::make_unique<LinOrderSystem>();
    if ((head == "setfork" || head == "counterexample") && parts.size() == 1)
        return std::make_unique<SetForkSystem>();
    if (head == "monoid") {
        if (parts.size() == 1) return std::make_unique<MonoidSystem>();
        if (parts.size() == 2)
            return std::make_unique<MonoidSystem>(parse_ints(parts[1]));
    }
    if (head == "chain" && (parts.size() == 2 || parts.size() == 3)) {
        bool free_merges = parts.size() == 3;
        if (free_merges && parts[2] != "free")
            throw BadInput("unknown chain option: " + parts[2]);
        return std::make_unique<ChainSystem>(parse_ints(parts[1]), free_merges);
    }
    if (head == "poset" && parts.size() == 2) {
        if (parts[1] == "diamond")
            return std::make_unique<PosetSystem>(PosetSystem::diamond());
        if (parts[1] == "vee") return std::make_unique<PosetSystem>(PosetSystem::vee());
        throw BadInput("unknown poset: " + parts[1]);
    }
    if (head == "cat" && parts.size() >= 2) {
        if (parts[1] == "split" && parts.size() == 2)
            return std::make_unique<FiniteCategorySystem>(
                FiniteCategorySystem::split_fork());
        bool regular = parts.size() == 3 && parts[2] == "regular";
        if (parts.size() == 3 && !regular)
            throw BadInput("unknown category option: " + parts[2]);
        auto seeds = parse_ints(parts[1]);
        if (seeds.size() != 1) throw BadInput("category seed must be one integer");
        return std::make_unique<FiniteCategorySystem>(FiniteCategorySystem::random(
            static_cast<std::uint64_t>(seeds[0]), regular));
    }
    if (head == "dpo" && parts.size() == 2) {
        if (parts[1] == "fork")
            return std::make_unique<DpoSystem>(std::vector<Rule>{demo_rule()},
                                               demo_origin(), "fork");
        if (parts[1] == "multi")
            return std::make_unique<DpoSystem>(demo_multirules(), demo_multi_origin(),
                                               "multi");
        throw BadInput("unknown rewrite demo: " + parts[1]);
    }
    throw BadInput("unknown system: " + spec);
}

}  // namespace evolve
