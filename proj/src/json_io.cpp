#include "evolve/json_io.hpp"

#include <fstream>
#include <sstream>

namespace evolve {

namespace {

Json pairs_to_json(const std::set<std::pair<int, int>>& ps) {
    Json out = Json::array();
    for (auto& [a, b] : ps) out.push_back(Json::array({a, b}));
    return out;
}

std::set<std::pair<int, int>> pairs_from_json(const Json& j) {
    std::set<std::pair<int, int>> out;
    for (auto& e : j) out.insert({e.at(0).get<int>(), e.at(1).get<int>()});
    return out;
}

}  // namespace

Json graph_to_json(const GraphObj& g) {
    Json j;
    j["directed"] = g.directed;
    j["vertices"] = g.vertices;
    j["edges"] = pairs_to_json(g.edges);
    return j;
}

GraphObj graph_from_json(const Json& j) {
    if (!j.is_object()) throw BadInput("graph JSON must be an object");
    GraphObj g;
    g.directed = j.value("directed", false);
    for (auto& v : j.at("vertices")) g.vertices.insert(v.get<int>());
    for (auto& e : j.at("edges"))
        g.add_edge(e.at(0).get<int>(), e.at(1).get<int>());
    for (auto& [a, b] : g.edges)
        if (!g.vertices.count(a) || !g.vertices.count(b))
            throw BadInput("graph edge endpoint is not a listed vertex");
    return g;
}

Json obj_to_json(const Obj& x) {
    Json j;
    if (auto* g = std::get_if<GraphObj>(&x.payload)) {
        j = graph_to_json(*g);
        j["kind"] = "graph";
    } else if (auto* o = std::get_if<OrderObj>(&x.payload)) {
        j["kind"] = "order";
        j["points"] = o->points;
    } else if (auto* s = std::get_if<SetObj>(&x.payload)) {
        j["kind"] = "set";
        j["elems"] = s->elems;
    } else if (auto* p = std::get_if<PosetObj>(&x.payload)) {
        j["kind"] = "poset";
        j["elem"] = p->elem;
    } else if (std::get_if<MonoidObj>(&x.payload)) {
        j["kind"] = "monoid";
    } else if (auto* c = std::get_if<ChainObj>(&x.payload)) {
        j["kind"] = "chain";
        Json blocks = Json::array();
        for (auto& [r, cc] : c->blocks) blocks.push_back(Json::array({r, cc}));
        j["blocks"] = std::move(blocks);
    } else if (auto* k = std::get_if<CatObj>(&x.payload)) {
        j["kind"] = "cat";
        j["id"] = k->id;
        j["class"] = k->iso_class;
    }
    if (x.size_hint >= 0) j["size_hint"] = x.size_hint;
    return j;
}

Obj obj_from_json(const Json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    int hint = j.value("size_hint", -1);
    if (kind == "graph") return Obj(graph_from_json(j), hint);
    if (kind == "order") {
        OrderObj o;
        for (auto& p : j.at("points")) o.points.push_back(p.get<int>());
        return Obj(std::move(o), hint);
    }
    if (kind == "set") {
        SetObj s;
        for (auto& e : j.at("elems")) s.elems.insert(e.get<int>());
        return Obj(std::move(s), hint);
    }
    if (kind == "poset") return Obj(PosetObj{j.at("elem").get<int>()}, hint);
    if (kind == "monoid") return Obj(MonoidObj{}, hint);
    if (kind == "chain") {
        ChainObj c;
        for (auto& b : j.at("blocks"))
            c.blocks.push_back(
                {b.at(0).get<std::int64_t>(), b.at(1).get<std::int64_t>()});
        return Obj(std::move(c), hint);
    }
    if (kind == "cat")
        return Obj(CatObj{j.at("id").get<int>(), j.at("class").get<int>()},
                   hint);
    throw BadInput("unknown object kind '" + kind + "'");
}

Json map_to_json(const MapData& m) {
    Json j;
    if (auto* v = std::get_if<VertexMap>(&m)) {
        j["kind"] = "vertex";
        Json pairs = Json::array();
        for (auto& [a, b] : *v) pairs.push_back(Json::array({a, b}));
        j["pairs"] = std::move(pairs);
    } else if (auto* mm = std::get_if<MonoidMap>(&m)) {
        j["kind"] = "monoid";
        j["value"] = mm->value;
    } else if (auto* c = std::get_if<ChainMap>(&m)) {
        j["kind"] = "chain";
        j["fibers"] = c->fibers;
    } else {
        j["kind"] = "unit";
    }
    return j;
}

MapData map_from_json(const Json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "vertex") {
        VertexMap v;
        for (auto& p : j.at("pairs")) v[p.at(0).get<int>()] = p.at(1).get<int>();
        return v;
    }
    if (kind == "monoid") return MonoidMap{j.at("value").get<std::int64_t>()};
    if (kind == "chain") {
        ChainMap c;
        for (auto& f : j.at("fibers"))
            c.fibers.push_back(f.get<std::vector<int>>());
        return c;
    }
    if (kind == "unit") return UnitMap{};
    throw BadInput("unknown map kind '" + kind + "'");
}

Json arrow_to_json(const Arrow& a) {
    Json j;
    j["dom"] = obj_to_json(a.dom);
    j["cod"] = obj_to_json(a.cod);
    j["map"] = map_to_json(a.map);
    j["kind"] = a.kind == ArrowKind::Iso ? "iso" : "transition";
    j["label"] = a.label;
    j["cost"] = a.cost;
    return j;
}

Arrow arrow_from_json(const Json& j) {
    Arrow a{obj_from_json(j.at("dom")), obj_from_json(j.at("cod")),
            map_from_json(j.at("map")),
            j.at("kind").get<std::string>() == "iso" ? ArrowKind::Iso
                                                     : ArrowKind::Transition,
            j.value("label", std::string()), j.value("cost", std::int64_t{0})};
    return a;
}

Json path_to_json(const Path& p) {
    Json j;
    j["dom"] = obj_to_json(p.dom());
    Json arrows = Json::array();
    for (auto& a : p.arrows()) arrows.push_back(arrow_to_json(a));
    j["arrows"] = std::move(arrows);
    return j;
}

Path path_from_json(const Json& j) {
    Path p(obj_from_json(j.at("dom")));
    for (auto& a : j.at("arrows")) p.then(arrow_from_json(a));
    return p;
}

Json evolution_to_json(const Evolution& evo) {
    Json j;
    Json stages = Json::array();
    for (auto& s : evo.stages) stages.push_back(obj_to_json(s));
    Json steps = Json::array();
    for (auto& s : evo.steps) steps.push_back(arrow_to_json(s));
    j["stages"] = std::move(stages);
    j["steps"] = std::move(steps);
    j["audit"] = evo.audit;
    return j;
}

Evolution evolution_from_json(const Json& j) {
    const Json& stages = j.at("stages");
    if (stages.empty()) throw BadInput("evolution needs at least one stage");
    Evolution evo(obj_from_json(stages.at(0)));
    for (auto& s : j.at("steps")) evo.append(arrow_from_json(s));
    if (evo.stage_count() != stages.size())
        throw BadInput("evolution stages do not chain with its steps");
    for (std::size_t i = 0; i < evo.stage_count(); ++i)
        if (evo.stages[i] != obj_from_json(stages.at(i)))
            throw BadInput("evolution stages do not chain with its steps");
    if (j.contains("audit"))
        for (auto& line : j.at("audit"))
            evo.audit.push_back(line.get<std::string>());
    return evo;
}

std::string graph_to_dot(const GraphObj& g, const std::string& name) {
    std::ostringstream os;
    os << (g.directed ? "digraph " : "graph ") << name << " {\n";
    for (int v : g.vertices) os << "  " << v << ";\n";
    const char* link = g.directed ? " -> " : " -- ";
    for (auto& [a, b] : g.edges) os << "  " << a << link << b << ";\n";
    os << "}\n";
    return os.str();
}

std::string evolution_to_dot(const Evolution& evo) {
    std::ostringstream os;
    os << "digraph evolution {\n  rankdir=LR;\n";
    for (std::size_t i = 0; i < evo.stage_count(); ++i)
        os << "  s" << i << " [label=\"stage " << i << "\\n"
           << literal_key(evo.stages[i].payload) << "\"];\n";
    for (std::size_t i = 0; i < evo.step_count(); ++i) {
        const Arrow& a = evo.steps[i];
        os << "  s" << i << " -> s" << i + 1 << " [label=\""
           << (a.kind == ArrowKind::Iso ? "iso: " : "step: ") << a.label;
        if (a.cost != 0) os << " ($" << a.cost << ")";
        os << "\"];\n";
    }
    os << "}\n";
    return os.str();
}

void save_json(const Json& j, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw BadInput("cannot write file '" + path + "'");
    out << j.dump(2) << "\n";
}

Json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw BadInput("cannot read file '" + path + "'");
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw BadInput("invalid JSON in '" + path + "': " + e.what());
    }
    return j;
}

}  // namespace evolve
