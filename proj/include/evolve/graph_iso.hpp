#ifndef EVOLVE_GRAPH_ISO_HPP
#define EVOLVE_GRAPH_ISO_HPP

#include <cstddef>
#include <vector>

#include "evolve/arrow.hpp"
#include "evolve/object.hpp"

namespace evolve {

// Result of a bounded search: `definitive` is false when the node budget ran
// out before the search space was exhausted.
struct MonoSearch {
    std::vector<VertexMap> maps;
    bool definitive = true;
};

// Enumerates injective vertex maps A -> B that preserve edges, extending the
// given pins. With `induced` the maps must also reflect edges (so a bijective
// induced mono is an isomorphism). Stops after `want` solutions.
MonoSearch enumerate_graph_monos(const GraphObj& a, const GraphObj& b,
                                 const VertexMap& pins = {}, bool induced = true,
                                 std::size_t want = 1, long node_budget = 2000000);

// Convenience wrappers.
MonoSearch find_graph_iso(const GraphObj& a, const GraphObj& b,
                          const VertexMap& pins = {}, long node_budget = 2000000);
MonoSearch graph_automorphisms(const GraphObj& g, std::size_t want,
                               long node_budget = 2000000);

}  // namespace evolve

#endif
