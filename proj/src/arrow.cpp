#include "evolve/arrow.hpp"

#include <variant>

#include "evolve/base.hpp"

namespace evolve {

MapData compose_maps(const MapData& first, const MapData& second) {
    if (first.index() != second.index())
        throw NonComposable("map kinds differ in composition");
    if (auto* f = std::get_if<VertexMap>(&first)) {
        auto& s = std::get<VertexMap>(second);
        VertexMap out;
        for (auto& [k, v] : *f) {
            auto it = s.find(v);
            if (it != s.end()) out[k] = it->second;  // partial maps drop points
        }
        return out;
    }
    if (auto* f = std::get_if<MonoidMap>(&first)) {
        return MonoidMap{f->value * std::get<MonoidMap>(second).value};
    }
    if (auto* f = std::get_if<ChainMap>(&first)) {
        auto& s = std::get<ChainMap>(second);
        ChainMap out;
        for (auto& mids : s.fibers) {
            std::vector<int> fiber;
            for (int m : mids)
                for (int src : f->fibers.at(m)) fiber.push_back(src);
            out.fibers.push_back(std::move(fiber));
        }
        return out;
    }
    return UnitMap{};
}

MapData identity_map(const Obj& x) {
    struct Visitor {
        MapData operator()(const GraphObj& g) const {
            VertexMap m;
            for (int v : g.vertices) m[v] = v;
            return m;
        }
        MapData operator()(const OrderObj& o) const {
            VertexMap m;
            for (int p : o.points) m[p] = p;
            return m;
        }
        MapData operator()(const SetObj& s) const {
            VertexMap m;
            for (int e : s.elems) m[e] = e;
            return m;
        }
        MapData operator()(const PosetObj&) const { return UnitMap{}; }
        MapData operator()(const MonoidObj&) const { return MonoidMap{1}; }
        MapData operator()(const ChainObj& c) const {
            ChainMap m;
            for (std::size_t i = 0; i < c.blocks.size(); ++i)
                m.fibers.push_back({static_cast<int>(i)});
            return m;
        }
        MapData operator()(const CatObj&) const { return UnitMap{}; }
    };
    return std::visit(Visitor{}, x.payload);
}

}  // namespace evolve
