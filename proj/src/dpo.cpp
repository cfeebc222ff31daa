#include "evolve/dpo.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <utility>
#include <variant>

#include "evolve/base.hpp"
#include "evolve/equality.hpp"
#include "evolve/graph_iso.hpp"

namespace evolve {
namespace {

std::pair<int, int> norm_edge(const GraphObj& g, int a, int b) {
    if (!g.directed && a > b) std::swap(a, b);
    return {a, b};
}

bool injective_total_on(const VertexMap& m, const std::set<int>& dom) {
    if (m.size() != dom.size()) return false;
    std::set<int> img;
    for (auto& [k, v] : m) {
        if (!dom.count(k)) return false;
        if (!img.insert(v).second) return false;
    }
    return true;
}

// Checks that m embeds a into b: total, injective, image inside b, and every
// edge of a lands on an edge of b (non-induced: b may have extra edges).
bool edge_preserving_mono(const GraphObj& a, const GraphObj& b, const VertexMap& m) {
    if (a.directed != b.directed) return false;
    if (!injective_total_on(m, a.vertices)) return false;
    for (auto& [k, v] : m)
        if (!b.vertices.count(v)) return false;
    for (auto& [u, v] : a.edges)
        if (!b.has_edge(m.at(u), m.at(v))) return false;
    return true;
}

bool is_graph_iso_map(const GraphObj& d, const GraphObj& c, const VertexMap& m) {
    if (d.directed != c.directed) return false;
    if (d.vertices.size() != c.vertices.size()) return false;
    if (!injective_total_on(m, d.vertices)) return false;
    for (auto& [k, v] : m)
        if (!c.vertices.count(v)) return false;
    for (int a : d.vertices)
        for (int b : d.vertices) {
            if (!d.directed && a >= b) continue;
            if (d.directed && a == b) continue;
            if (d.has_edge(a, b) != c.has_edge(m.at(a), m.at(b))) return false;
        }
    return true;
}

// Host vertices scheduled for deletion: images of pattern vertices outside
// the interface.
std::set<int> deleted_vertices(const Rule& r, const Match& m) {
    std::set<int> interface_in_l;
    for (auto& [k, v] : r.k_in_l) interface_in_l.insert(v);
    std::set<int> out;
    for (int v : r.L.vertices)
        if (!interface_in_l.count(v)) out.insert(m.m.at(v));
    return out;
}

// Host edges covered by the matched copy of the pattern.
std::set<std::pair<int, int>> matched_edges(const Rule& r, const GraphObj& g,
                                            const Match& m) {
    std::set<std::pair<int, int>> out;
    for (auto& [u, v] : r.L.edges) out.insert(norm_edge(g, m.m.at(u), m.m.at(v)));
    return out;
}

// Host edges kept because the interface carries them.
std::set<std::pair<int, int>> preserved_edges(const Rule& r, const GraphObj& g,
                                              const Match& m) {
    std::set<std::pair<int, int>> out;
    for (auto& [u, v] : r.K.edges)
        out.insert(norm_edge(g, m.m.at(r.k_in_l.at(u)), m.m.at(r.k_in_l.at(v))));
    return out;
}

std::vector<int> image_tuple(const Rule& r, const Match& m) {
    std::vector<int> t;
    t.reserve(r.L.vertices.size());
    for (int v : r.L.vertices) t.push_back(m.m.at(v));
    return t;
}

std::string match_site(const Rule& r, const Match& m) {
    std::ostringstream os;
    os << r.name << "@(";
    bool first = true;
    for (int v : image_tuple(r, m)) {
        if (!first) os << ' ';
        os << v;
        first = false;
    }
    os << ")";
    return os.str();
}

}  // namespace

Rule::Rule(std::string name, GraphObj L, GraphObj K, GraphObj R, VertexMap k_in_l,
           VertexMap k_in_r)
    : name(std::move(name)),
      L(std::move(L)),
      K(std::move(K)),
      R(std::move(R)),
      k_in_l(std::move(k_in_l)),
      k_in_r(std::move(k_in_r)) {
    if (this->name.empty()) throw BadInput("rule needs a name");
    if (this->L.directed != this->K.directed || this->K.directed != this->R.directed)
        throw BadInput("rule graphs disagree on directedness");
    if (!edge_preserving_mono(this->K, this->L, this->k_in_l))
        throw BadInput("interface does not embed into the pattern");
    if (!edge_preserving_mono(this->K, this->R, this->k_in_r))
        throw BadInput("interface does not embed into the replacement");
}

std::vector<Match> find_matches(const Rule& r, const GraphObj& g) {
    if (r.L.directed != g.directed)
        throw BadInput("rule and host disagree on directedness");
    MonoSearch s = enumerate_graph_monos(r.L, g, {}, /*induced=*/false,
                                         std::numeric_limits<std::size_t>::max());
    std::vector<Match> out;
    for (auto& m : s.maps) {
        Match cand{m};
        // Dangling condition: an unmatched host edge must not touch a vertex
        // scheduled for deletion, or the context would keep a loose end.
        std::set<int> gone = deleted_vertices(r, cand);
        std::set<std::pair<int, int>> covered = matched_edges(r, g, cand);
        bool dangling = false;
        for (auto& e : g.edges) {
            if (!gone.count(e.first) && !gone.count(e.second)) continue;
            if (!covered.count(e)) {
                dangling = true;
                break;
            }
        }
        if (!dangling) out.push_back(std::move(cand));
    }
    std::sort(out.begin(), out.end(), [&](const Match& a, const Match& b) {
        return image_tuple(r, a) < image_tuple(r, b);
    });
    return out;
}

bool valid_match(const Rule& r, const GraphObj& g, const Match& m) {
    if (r.L.directed != g.directed) return false;
    if (!edge_preserving_mono(r.L, g, m.m)) return false;
    std::set<int> gone = deleted_vertices(r, m);
    std::set<std::pair<int, int>> covered = matched_edges(r, g, m);
    for (auto& e : g.edges) {
        if (!gone.count(e.first) && !gone.count(e.second)) continue;
        if (!covered.count(e)) return false;
    }
    return true;
}

RewriteResult apply_rule(const Rule& r, const GraphObj& g, const Match& m) {
    if (!valid_match(r, g, m))
        throw InvalidMatch("match is not a valid occurrence of rule '" + r.name +
                           "' in the host graph");

    std::set<int> gone = deleted_vertices(r, m);
    std::set<std::pair<int, int>> cut = matched_edges(r, g, m);
    for (auto& e : preserved_edges(r, g, m)) cut.erase(e);

    // Context: the host minus deleted vertices (with their incident edges)
    // and minus the matched edges outside the interface.
    GraphObj ctx;
    ctx.directed = g.directed;
    for (int v : g.vertices)
        if (!gone.count(v)) ctx.vertices.insert(v);
    for (auto& e : g.edges) {
        if (gone.count(e.first) || gone.count(e.second)) continue;
        if (cut.count(e)) continue;
        ctx.edges.insert(e);
    }

    // Glue the replacement along the interface. Replacement-only vertices get
    // the smallest unused positive names, in order of their own names.
    VertexMap rho;
    for (auto& [k, lv] : r.k_in_l) rho[r.k_in_r.at(k)] = m.m.at(lv);
    std::set<int> interface_in_r;
    for (auto& [k, v] : r.k_in_r) interface_in_r.insert(v);
    GraphObj h = ctx;
    int next_fresh = 1;
    for (int v : r.R.vertices) {
        if (interface_in_r.count(v)) continue;
        while (h.vertices.count(next_fresh)) ++next_fresh;
        rho[v] = next_fresh;
        h.vertices.insert(next_fresh);
    }
    for (auto& [u, v] : r.R.edges) h.add_edge(rho.at(u), rho.at(v));

    VertexMap keep;
    for (int v : ctx.vertices) keep[v] = v;
    Arrow step{Obj(g), Obj(h), std::move(keep), ArrowKind::Transition,
               match_site(r, m), 1};
    return RewriteResult{std::move(h), std::move(step)};
}

DpoSystem::DpoSystem(std::vector<Rule> rules, GraphObj origin, std::string tag)
    : rules_(std::move(rules)), origin_(std::move(origin)), tag_(std::move(tag)) {
    for (auto& r : rules_)
        if (r.L.directed != origin_.directed)
            throw BadInput("rule and origin disagree on directedness");
}

Obj DpoSystem::origin() const { return Obj(origin_, 0); }

std::vector<Arrow> DpoSystem::transitions(const Obj& x, int budget) const {
    std::vector<Arrow> out{identity_arrow(x)};
    const GraphObj* g = std::get_if<GraphObj>(&x.payload);
    if (!g || budget <= 0) return out;

    int child_hint = x.size_hint >= 0 ? x.size_hint + 1 : -1;

    // Two rule applications out of x count as the same transition when they
    // are isomorphic as arrows: some automorphism of x and some isomorphism of
    // the results make the square commute.  Quotienting by both sides keeps
    // one representative per genuinely distinct outcome, matching the other
    // graph-backed systems.
    std::vector<VertexMap> autos = graph_automorphisms(*g, 64).maps;
    if (autos.empty()) {
        VertexMap id;
        for (int v : g->vertices) id[v] = v;
        autos.push_back(std::move(id));
    }
    auto same_arrow_class = [&](const Arrow& kept, const Arrow& cand) {
        if (kept.cod.canon() != cand.cod.canon()) return false;
        for (const VertexMap& alpha : autos) {
            MapData twisted = compose_maps(MapData(alpha), cand.map);
            if (find_pinned_iso(kept.cod, cand.cod, kept.map, twisted).found)
                return true;
        }
        return false;
    };

    int made = 0;
    for (const Rule& r : rules_) {
        if (made >= budget) break;
        for (const Match& m : find_matches(r, *g)) {
            if (made >= budget) break;
            RewriteResult rr = apply_rule(r, *g, m);
            Arrow cand{x, Obj(std::move(rr.result), child_hint), rr.step.map,
                       ArrowKind::Transition, rr.step.label, rr.step.cost};
            bool dup = false;
            for (std::size_t i = 1; i < out.size(); ++i) {
                if (same_arrow_class(out[i], cand)) {
                    dup = true;
                    break;
                }
            }
            if (dup) continue;
            out.push_back(std::move(cand));
            ++made;
        }
    }
    return out;
}

bool DpoSystem::is_transition(const Arrow& f) const {
    const GraphObj* d = std::get_if<GraphObj>(&f.dom.payload);
    const GraphObj* c = std::get_if<GraphObj>(&f.cod.payload);
    const VertexMap* m = std::get_if<VertexMap>(&f.map);
    if (!d || !c || !m) return false;
    if (d->directed != origin_.directed || c->directed != origin_.directed)
        return false;
    if (is_graph_iso_map(*d, *c, *m)) return true;
    for (const Rule& r : rules_) {
        for (const Match& mt : find_matches(r, *d)) {
            RewriteResult rr = apply_rule(r, *d, mt);
            if (find_pinned_iso(rr.step.cod, f.cod, rr.step.map, f.map).found)
                return true;
        }
    }
    return false;
}

IsoSearch DpoSystem::find_iso(const Obj& a, const Obj& b) const {
    const GraphObj* ga = std::get_if<GraphObj>(&a.payload);
    const GraphObj* gb = std::get_if<GraphObj>(&b.payload);
    if (!ga || !gb) return IsoSearch{std::nullopt, true};
    MonoSearch s = find_graph_iso(*ga, *gb);
    IsoSearch r;
    r.definitive = s.definitive;
    if (!s.maps.empty())
        r.found = Arrow{a, b, s.maps.front(), ArrowKind::Iso, "iso", 0};
    return r;
}

TapReport check_rule_amalgamation(const DpoSystem& sys, const Fragment& frag,
                                  int budget) {
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
    os << "all rule spans closed on " << frag.nodes.size() << " objects";
    if (any_unknown) os << " (scope truncated)";
    rep.detail = os.str();
    return rep;
}

Json rule_to_json(const Rule& r) {
    Json jl, jr;
    for (auto& [k, v] : r.k_in_l) jl[std::to_string(k)] = v;
    for (auto& [k, v] : r.k_in_r) jr[std::to_string(k)] = v;
    return Json{{"name", r.name},
                {"L", graph_to_json(r.L)},
                {"K", graph_to_json(r.K)},
                {"R", graph_to_json(r.R)},
                {"kL", std::move(jl)},
                {"kR", std::move(jr)}};
}

Rule rule_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("name") || !j.contains("L") ||
        !j.contains("K") || !j.contains("R"))
        throw BadInput("rule file needs name, L, K and R");
    // Non-injective matching is reserved for a future extension; only
    // injective matching is implemented, so anything else is rejected rather
    // than silently ignored.
    if (j.contains("injective") &&
        (!j.at("injective").is_boolean() || !j.at("injective").get<bool>()))
        throw BadInput("only injective matching is supported");
    auto read_map = [&](const char* field) {
        VertexMap m;
        if (!j.contains(field)) return m;
        const Json& jm = j.at(field);
        if (!jm.is_object()) throw BadInput("rule interface map must be an object");
        for (auto it = jm.begin(); it != jm.end(); ++it)
            m[std::stoi(it.key())] = it.value().get<int>();
        return m;
    };
    GraphObj K = graph_from_json(j.at("K"));
    VertexMap kl = read_map("kL");
    VertexMap kr = read_map("kR");
    // Omitted interface maps default to the identity inclusion.
    if (kl.empty())
        for (int v : K.vertices) kl[v] = v;
    if (kr.empty())
        for (int v : K.vertices) kr[v] = v;
    return Rule(j.at("name").get<std::string>(), graph_from_json(j.at("L")), std::move(K),
                graph_from_json(j.at("R")), std::move(kl), std::move(kr));
}

Rule demo_rule() {
    GraphObj L{true, {1, 2, 3}, {{1, 2}, {1, 3}}};
    GraphObj K{true, {1, 2, 3}, {{1, 3}}};
    GraphObj R{true, {1, 2, 3, 4}, {{1, 3}, {1, 4}, {2, 4}, {3, 4}}};
    VertexMap id{{1, 1}, {2, 2}, {3, 3}};
    return Rule("fork-extend", std::move(L), std::move(K), std::move(R), id, id);
}

GraphObj demo_origin() { return GraphObj{true, {1, 2, 3}, {{1, 2}, {1, 3}}}; }

std::vector<Rule> demo_multirules() {
    // Merge two sources of a common target onto a fresh common ancestor,
    // dropping the original two edges and linking the sources.
    GraphObj l1{true, {1, 2, 4}, {{1, 2}, {4, 2}}};
    GraphObj k1{true, {1, 2, 4}, {}};
    GraphObj r1{true, {1, 2, 4, 5}, {{1, 4}, {5, 1}, {5, 2}, {5, 4}}};
    VertexMap id1{{1, 1}, {2, 2}, {4, 4}};
    Rule merge("merge-sources", std::move(l1), std::move(k1), std::move(r1), id1, id1);

    // Extend a two-step chain by a fresh common target of its last two
    // vertices, keeping every matched edge.
    GraphObj l2{true, {1, 2, 3}, {{1, 2}, {2, 3}}};
    GraphObj k2 = l2;
    GraphObj r2{true, {1, 2, 3, 5}, {{1, 2}, {2, 3}, {2, 5}, {3, 5}}};
    VertexMap id2{{1, 1}, {2, 2}, {3, 3}};
    Rule extend("extend-chain", std::move(l2), std::move(k2), std::move(r2), id2, id2);

    return {std::move(merge), std::move(extend)};
}

GraphObj demo_multi_origin() {
    return GraphObj{true, {1, 2, 3, 4}, {{1, 2}, {2, 3}, {4, 2}}};
}

}  // namespace evolve
