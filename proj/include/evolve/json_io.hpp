#ifndef EVOLVE_JSON_IO_HPP
#define EVOLVE_JSON_IO_HPP

#include <string>

#include "json.hpp"

#include "evolve/arrow.hpp"
#include "evolve/evolution.hpp"
#include "evolve/object.hpp"

namespace evolve {

using Json = nlohmann::json;

// Objects serialize with a "kind" tag naming the payload family; arrows and
// evolutions nest those. All encodings round-trip exactly (integer-only).
Json obj_to_json(const Obj& x);
Obj obj_from_json(const Json& j);

Json map_to_json(const MapData& m);
MapData map_from_json(const Json& j);

Json arrow_to_json(const Arrow& a);
Arrow arrow_from_json(const Json& j);

Json path_to_json(const Path& p);
Path path_from_json(const Json& j);

// {"stages": [...], "steps": [...], "audit": [...]}
Json evolution_to_json(const Evolution& evo);
Evolution evolution_from_json(const Json& j);

// Bare graph encoding {"directed": bool, "vertices": [...], "edges": [[a,b]]}
// used by rule files; obj_from_json also accepts it when tagged.
Json graph_to_json(const GraphObj& g);
GraphObj graph_from_json(const Json& j);

// DOT rendering: a graph object renders its own vertices and edges; an
// evolution renders stages as nodes and steps as labeled edges.
std::string graph_to_dot(const GraphObj& g, const std::string& name = "G");
std::string evolution_to_dot(const Evolution& evo);

// File helpers; throw BadInput with the offending path on I/O failure.
void save_json(const Json& j, const std::string& path);
Json load_json(const std::string& path);

}  // namespace evolve

#endif
