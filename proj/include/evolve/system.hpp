#ifndef EVOLVE_SYSTEM_HPP
#define EVOLVE_SYSTEM_HPP

#include <cstdlib>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "evolve/arrow.hpp"
#include "evolve/object.hpp"

namespace evolve {

// Outcome of an isomorphism search between two objects. When `definitive` is
// true and `found` is empty, the objects are provably non-isomorphic.
struct IsoSearch {
    std::optional<Arrow> found;
    bool definitive = true;
};

// An evolution system: a class of objects with distinguished transition
// arrows and an origin object. Transition classes contain all identities and
// are closed under postcomposition with isomorphisms, so every isomorphism
// counts as a (trivial) transition.
class System {
  public:
    virtual ~System() = default;

    virtual std::string name() const = 0;
    virtual Obj origin() const = 0;

    // Outgoing transitions from x: the identity first, then at most `budget`
    // non-trivial representatives, pairwise non-isomorphic as arrows. The
    // order is deterministic, and a larger budget extends the smaller list
    // without reordering it.
    virtual std::vector<Arrow> transitions(const Obj& x, int budget) const = 0;

    // Decides membership of f in the transition class (isomorphisms included).
    virtual bool is_transition(const Arrow& f) const = 0;

    virtual IsoSearch find_iso(const Obj& a, const Obj& b) const = 0;

    // Non-identity isomorphisms worth following during exploration, for
    // systems where distinct transition behavior hides behind iso hops.
    virtual std::vector<Arrow> iso_steps(const Obj& x) const {
        (void)x;
        return {};
    }

    // Instance-native amalgamation of a span of single transitions
    // f: X -> Y, g: X -> Z: returns (f': Y -> W, g': Z -> W) with
    // f' o f = g' o g, or nothing to fall back on the generic search.
    virtual std::optional<std::pair<Arrow, Arrow>> amalgamate(const Arrow& f,
                                                             const Arrow& g) const {
        (void)f;
        (void)g;
        return std::nullopt;
    }

    // Instance-native absorption: a path p: cod(t) ~> cod(reach) with
    // p o t = reach, or nothing to fall back on the generic bounded search.
    virtual std::optional<Path> absorb_into(const Arrow& t, const Arrow& reach) const {
        (void)t;
        (void)reach;
        return std::nullopt;
    }

    // Whether absorb_into is a complete decision procedure: when it returns
    // nothing for a genuine transition, no absorbing path exists at all and
    // the generic fallback search can be skipped.
    virtual bool absorb_into_exhaustive() const { return false; }

    // Whether some object isomorphic to x admits a non-iso transition. The
    // default trusts the chosen representative; systems whose transition
    // domains are not closed under isomorphism override this.
    virtual bool class_has_nontrivial_transitions(const Obj& x, int budget) const {
        auto ts = transitions(x, budget);
        for (auto& t : ts)
            if (t.kind == ArrowKind::Transition) return true;
        return false;
    }
};

// Budget used when a caller passes none; overridable via the environment
// variable EVOLVE_BUDGET_DEFAULT.
inline int default_budget() {
    if (const char* env = std::getenv("EVOLVE_BUDGET_DEFAULT")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    return 8;
}

}  // namespace evolve

#endif
