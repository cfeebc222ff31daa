#ifndef EVOLVE_ARROW_HPP
#define EVOLVE_ARROW_HPP

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "evolve/base.hpp"
#include "evolve/object.hpp"

namespace evolve {

// Morphism witnesses. Graph-like instances map element names; the monoid
// instance carries the ring element; chain arrows record which source factors
// were merged into each target factor; Unit is for categories whose hom-sets
// have at most one arrow per (dom, cod).
using VertexMap = std::map<int, int>;

struct MonoidMap {
    std::int64_t value = 1;  // nonzero integer, unit iff +-1
    bool operator==(const MonoidMap&) const = default;
};

struct ChainMap {
    // target factor index -> source factor indices merged into it, in
    // multiplication order.
    std::vector<std::vector<int>> fibers;
    bool operator==(const ChainMap&) const = default;
};

struct UnitMap {
    bool operator==(const UnitMap&) const = default;
};

using MapData = std::variant<VertexMap, MonoidMap, ChainMap, UnitMap>;

// first then second, i.e. the categorical composite second . first.
MapData compose_maps(const MapData& first, const MapData& second);

enum class ArrowKind { Iso, Transition };

// A single transition or isomorphism. label is an instance annotation (rule
// name, match site); cost is the transition cost, zero for isomorphisms.
// Neither participates in equality.
struct Arrow {
    Obj dom;
    Obj cod;
    MapData map;
    ArrowKind kind = ArrowKind::Transition;
    std::string label;
    std::int64_t cost = 0;

    bool same_arrow(const Arrow& o) const {
        return dom == o.dom && cod == o.cod && map == o.map;
    }
};

MapData identity_map(const Obj& x);

inline Arrow identity_arrow(const Obj& x) {
    return Arrow{x, x, identity_map(x), ArrowKind::Iso, "id", 0};
}

// A finite composite of arrows. May be empty (the identity path at an
// explicit object). length counts non-iso arrows.
class Path {
public:
    explicit Path(Obj at) : dom_(at), cod_(std::move(at)) {}
    explicit Path(Arrow a) : dom_(a.dom), cod_(a.cod) { arrows_.push_back(std::move(a)); }

    const Obj& dom() const { return dom_; }
    const Obj& cod() const { return cod_; }
    const std::vector<Arrow>& arrows() const { return arrows_; }
    bool empty() const { return arrows_.empty(); }

    int length() const {
        int n = 0;
        for (const auto& a : arrows_)
            if (a.kind != ArrowKind::Iso) ++n;
        return n;
    }

    std::int64_t total_cost() const {
        std::int64_t c = 0;
        for (const auto& a : arrows_) c += a.cost;
        return c;
    }

    MapData composite_map() const {
        MapData m = identity_map(dom_);
        for (const auto& a : arrows_) m = compose_maps(m, a.map);
        return m;
    }

    // Collapses the path into a single arrow; an iso exactly when every
    // factor is one.
    Arrow composite() const {
        ArrowKind k = length() == 0 ? ArrowKind::Iso : ArrowKind::Transition;
        std::string lbl;
        for (const auto& a : arrows_) {
            if (!lbl.empty()) lbl += ";";
            lbl += a.label;
        }
        if (lbl.empty()) lbl = "id";
        return Arrow{dom_, cod_, composite_map(), k, lbl, total_cost()};
    }

    Path& then(const Arrow& a) {
        if (!(cod_ == a.dom)) throw NonComposable("path/arrow endpoints do not chain");
        arrows_.push_back(a);
        cod_ = a.cod;
        return *this;
    }

    Path& then(const Path& p) {
        if (!(cod_ == p.dom())) throw NonComposable("path/path endpoints do not chain");
        for (const auto& a : p.arrows_) {
            arrows_.push_back(a);
            cod_ = a.cod;
        }
        return *this;
    }

private:
    std::vector<Arrow> arrows_;
    Obj dom_;
    Obj cod_;
};

inline Path compose(const Path& first, const Path& second) {
    Path p = first;
    p.then(second);
    return p;
}

}  // namespace evolve

#endif  // EVOLVE_ARROW_HPP
