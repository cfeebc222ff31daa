#include "evolve/equality.hpp"

#include <algorithm>
#include <stdexcept>
#include <variant>
#include <vector>

#include "evolve/graph_iso.hpp"

namespace evolve {
namespace {

IsoSearch no_iso() { return IsoSearch{std::nullopt, true}; }

IsoSearch wrap(Obj dom, Obj cod, MapData m) {
    IsoSearch r;
    r.found = Arrow{std::move(dom), std::move(cod), std::move(m), ArrowKind::Iso, "psi", 0};
    return r;
}

// Builds psi-pins from the shared-domain witnesses: psi(m1[k]) = m2[k].
// Fails definitively when the witnesses are defined on different points or
// the pins are inconsistent or non-injective.
bool vertex_pins(const VertexMap& m1, const VertexMap& m2, VertexMap& pins) {
    if (m1.size() != m2.size()) return false;
    std::map<int, int> seen_target;
    for (auto& [k, v1] : m1) {
        auto it = m2.find(k);
        if (it == m2.end()) return false;
        int v2 = it->second;
        auto p = pins.find(v1);
        if (p != pins.end()) {
            if (p->second != v2) return false;
        } else {
            auto s = seen_target.find(v2);
            if (s != seen_target.end() && s->second != v1) return false;
            pins[v1] = v2;
            seen_target[v2] = v1;
        }
    }
    return true;
}

}  // namespace

IsoSearch find_pinned_iso(const Obj& cod1, const Obj& cod2, const MapData& m1,
                          const MapData& m2) {
    if (cod1.payload.index() != cod2.payload.index()) return no_iso();
    if (m1.index() != m2.index()) return no_iso();

    if (auto* g1 = std::get_if<GraphObj>(&cod1.payload)) {
        auto& g2 = std::get<GraphObj>(cod2.payload);
        VertexMap pins;
        if (!vertex_pins(std::get<VertexMap>(m1), std::get<VertexMap>(m2), pins))
            return no_iso();
        MonoSearch s = find_graph_iso(*g1, g2, pins);
        if (!s.maps.empty()) return wrap(cod1, cod2, s.maps.front());
        return IsoSearch{std::nullopt, s.definitive};
    }
    if (auto* o1 = std::get_if<OrderObj>(&cod1.payload)) {
        auto& o2 = std::get<OrderObj>(cod2.payload);
        if (o1->points.size() != o2.points.size()) return no_iso();
        VertexMap psi;  // the unique order iso
        for (std::size_t i = 0; i < o1->points.size(); ++i)
            psi[o1->points[i]] = o2.points[i];
        const auto& v1 = std::get<VertexMap>(m1);
        const auto& v2 = std::get<VertexMap>(m2);
        if (v1.size() != v2.size()) return no_iso();
        for (auto& [k, t] : v1) {
            auto it = v2.find(k);
            if (it == v2.end() || psi.at(t) != it->second) return no_iso();
        }
        return wrap(cod1, cod2, psi);
    }
    if (auto* s1 = std::get_if<SetObj>(&cod1.payload)) {
        auto& s2 = std::get<SetObj>(cod2.payload);
        if (s1->elems.size() != s2.elems.size()) return no_iso();
        VertexMap pins;
        if (!vertex_pins(std::get<VertexMap>(m1), std::get<VertexMap>(m2), pins))
            return no_iso();
        for (auto& [a, b] : pins)
            if (!s1->elems.count(a) || !s2.elems.count(b)) return no_iso();
        std::vector<int> free1, free2;
        for (int e : s1->elems)
            if (!pins.count(e)) free1.push_back(e);
        std::set<int> hit;
        for (auto& [a, b] : pins) hit.insert(b);
        for (int e : s2.elems)
            if (!hit.count(e)) free2.push_back(e);
        for (std::size_t i = 0; i < free1.size(); ++i) pins[free1[i]] = free2[i];
        return wrap(cod1, cod2, pins);
    }
    if (auto* p1 = std::get_if<PosetObj>(&cod1.payload)) {
        auto& p2 = std::get<PosetObj>(cod2.payload);
        if (p1->elem != p2.elem) return no_iso();
        return wrap(cod1, cod2, UnitMap{});
    }
    if (std::get_if<MonoidObj>(&cod1.payload)) {
        auto v1 = std::get<MonoidMap>(m1).value;
        auto v2 = std::get<MonoidMap>(m2).value;
        if (v2 == v1) return wrap(cod1, cod2, MonoidMap{1});
        if (v2 == -v1) return wrap(cod1, cod2, MonoidMap{-1});
        return no_iso();
    }
    if (auto* c1 = std::get_if<ChainObj>(&cod1.payload)) {
        auto& c2 = std::get<ChainObj>(cod2.payload);
        // Chain isomorphisms are identities only.
        if (!(c1->blocks == c2.blocks) || !(m1 == m2)) return no_iso();
        return wrap(cod1, cod2, std::get<ChainMap>(identity_map(cod1)));
    }
    if (auto* k1 = std::get_if<CatObj>(&cod1.payload)) {
        auto& k2 = std::get<CatObj>(cod2.payload);
        if (k1->iso_class != k2.iso_class) return no_iso();
        return wrap(cod1, cod2, UnitMap{});
    }
    return no_iso();
}

Verdict arrows_equal(const Arrow& f, const Arrow& g, Equality mode) {
    if (!(f.dom == g.dom)) return Verdict::False;
    if (mode == Equality::Strict) {
        if (!(f.map == g.map)) return Verdict::False;
        if (f.cod.canon() != g.cod.canon()) return Verdict::False;
    }
    IsoSearch s = find_pinned_iso(f.cod, g.cod, f.map, g.map);
    if (s.found) return Verdict::True;
    return s.definitive ? Verdict::False : Verdict::Unknown;
}

Verdict paths_equal(const Path& p, const Path& q, Equality mode) {
    return arrows_equal(fuse_path(p), fuse_path(q), mode);
}

Arrow fuse(const Arrow& first, const Arrow& second) {
    if (!(first.cod == second.dom))
        throw NonComposable("arrow endpoints do not chain");
    ArrowKind k = (first.kind == ArrowKind::Iso && second.kind == ArrowKind::Iso)
                      ? ArrowKind::Iso
                      : ArrowKind::Transition;
    std::string label = second.label.empty() ? first.label
                        : first.label.empty() ? second.label
                                              : second.label + "." + first.label;
    return Arrow{first.dom, second.cod, compose_maps(first.map, second.map), k,
                 label, first.cost + second.cost};
}

Arrow fuse_path(const Path& p) {
    Arrow a = identity_arrow(p.dom());
    for (const Arrow& step : p.arrows()) a = fuse(a, step);
    return a;
}

Arrow invert_iso(const Arrow& iso) {
    if (iso.kind != ArrowKind::Iso)
        throw std::invalid_argument("invert_iso on a non-isomorphism");
    MapData inv;
    if (auto* v = std::get_if<VertexMap>(&iso.map)) {
        VertexMap m;
        for (auto& [a, b] : *v) {
            if (m.count(b)) throw std::invalid_argument("non-injective iso witness");
            m[b] = a;
        }
        inv = std::move(m);
    } else if (auto* mm = std::get_if<MonoidMap>(&iso.map)) {
        if (mm->value != 1 && mm->value != -1)
            throw std::invalid_argument("monoid iso witness is not a unit");
        inv = MonoidMap{mm->value};  // units here are self-inverse
    } else if (std::get_if<ChainMap>(&iso.map)) {
        inv = identity_map(iso.dom);
    } else {
        inv = UnitMap{};
    }
    return Arrow{iso.cod, iso.dom, std::move(inv), ArrowKind::Iso,
                 iso.label.empty() ? "inv" : iso.label + "^-1", 0};
}

std::string map_key(const MapData& m) {
    struct Visitor {
        std::string operator()(const VertexMap& v) const {
            std::string out = "V;";
            for (auto& [a, b] : v)
                out += std::to_string(a) + ">" + std::to_string(b) + ",";
            return out;
        }
        std::string operator()(const MonoidMap& mm) const {
            return "M;" + std::to_string(mm.value);
        }
        std::string operator()(const ChainMap& c) const {
            std::string out = "C;";
            for (auto& fib : c.fibers) {
                for (int i : fib) out += std::to_string(i) + ",";
                out += ";";
            }
            return out;
        }
        std::string operator()(const UnitMap&) const { return "U"; }
    };
    return std::visit(Visitor{}, m);
}

}  // namespace evolve
