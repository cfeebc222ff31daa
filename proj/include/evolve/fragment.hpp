#ifndef EVOLVE_FRAGMENT_HPP
#define EVOLVE_FRAGMENT_HPP

#include <string>
#include <vector>

#include "evolve/arrow.hpp"
#include "evolve/object.hpp"
#include "evolve/system.hpp"

namespace evolve {

// One object discovered during exploration, with the arrow that reached it.
struct FragmentNode {
    Obj obj;
    int depth = 0;   // nontrivial steps from the origin along the discovery path
    int parent = -1;
    Arrow step;      // parent -> obj; identity for the origin
};

// The reachable part of a system, explored breadth-first from the origin up
// to the given bounds. Children reached by transitions are deduplicated by
// canonical key (one representative per isomorphism class); children reached
// by published isomorphism hops are kept per payload, since systems whose
// transition class is not closed under domain relabeling hide distinct
// behavior behind exactly those hops.
struct Fragment {
    std::vector<FragmentNode> nodes;
    // True when nothing inside the requested depth was cut off by the budget
    // or the object cap, so universally quantified checks over the fragment
    // cover their declared scope.
    bool complete = true;
    // Additionally true when the depth frontier has no outgoing nontrivial
    // transitions: the fragment then holds the system's entire reachable
    // world, which claims like termination need.
    bool closed = true;

    int find(const Obj& x) const;
    Path path_to(int idx) const;
};

Fragment explore(const System& sys, int max_depth, int budget, int max_objects);

}  // namespace evolve

#endif
