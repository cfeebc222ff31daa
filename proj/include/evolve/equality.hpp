#ifndef EVOLVE_EQUALITY_HPP
#define EVOLVE_EQUALITY_HPP

#include "evolve/arrow.hpp"
#include "evolve/base.hpp"
#include "evolve/object.hpp"
#include "evolve/system.hpp"

namespace evolve {

// Two notions of arrow equality for parallel-ish arrows sharing a domain.
// Relaxed: the arrows agree up to an isomorphism of codomains (there is an
// iso psi with psi o f = g). Strict: additionally the morphism witnesses are
// literally equal and the codomain keys agree, so psi fixes the image.
// Strict implies relaxed; both are invariant under renaming the codomain
// consistently on both sides.
enum class Equality { Strict, Relaxed };

// Searches for an iso psi: cod1 -> cod2 with psi o m1 = m2, where m1 and m2
// are witnesses of arrows out of a common domain.
IsoSearch find_pinned_iso(const Obj& cod1, const Obj& cod2, const MapData& m1,
                          const MapData& m2);

Verdict arrows_equal(const Arrow& f, const Arrow& g, Equality mode);
Verdict paths_equal(const Path& p, const Path& q, Equality mode);

// Single-arrow composite, first then second. Iso only when both factors are.
Arrow fuse(const Arrow& first, const Arrow& second);

// Composite of a whole path as one arrow.
Arrow fuse_path(const Path& p);

// Inverse of an isomorphism arrow; throws on non-isos.
Arrow invert_iso(const Arrow& iso);

// Literal serialization of a morphism witness, for visited-set keys.
std::string map_key(const MapData& m);

}  // namespace evolve

#endif
