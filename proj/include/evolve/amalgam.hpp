#ifndef EVOLVE_AMALGAM_HPP
#define EVOLVE_AMALGAM_HPP

#include <optional>
#include <string>
#include <utility>

#include "evolve/arrow.hpp"
#include "evolve/base.hpp"
#include "evolve/system.hpp"

namespace evolve {

// Attempt to close a span f: X -> Y, g: X -> Z of single transitions with
// single transitions f': Y -> W, g': Z -> W such that f' o f = g' o g holds
// strictly (shared codomain object, equal composite witnesses). When `square`
// is empty, `definitive` distinguishes a proven failure from a truncated
// search.
struct SpanClosure {
    std::optional<std::pair<Arrow, Arrow>> square;
    bool definitive = true;
};

SpanClosure close_span(const System& sys, const Arrow& f, const Arrow& g, int budget);

// Amalgamation of two paths out of a common object by tiling single-step
// squares. On success the first path starts at cod(p) and has at most
// length(q) nontrivial steps, and symmetrically for the second. When the
// tiling dies on a provably unclosable span, that span is reported in
// `failed_span` (first component from the p side, second from the q side).
struct PathAmalgam {
    std::optional<std::pair<Path, Path>> closed;
    bool definitive = true;
    std::optional<std::pair<Arrow, Arrow>> failed_span;
};

PathAmalgam amalgamate_paths(const System& sys, const Path& p, const Path& q,
                             int budget);

// Raised by constructions (notably the limit builder) that cannot proceed
// past a span of transitions with no common extension. Carries the two sides
// of the offending square so callers can name it in diagnostics.
struct AmalgamationFailed : std::runtime_error {
    AmalgamationFailed(std::string what, Arrow first_side, Arrow second_side)
        : std::runtime_error(std::move(what)),
          first(std::move(first_side)),
          second(std::move(second_side)) {}
    Arrow first;
    Arrow second;
};

// Whether every span of single transitions out of x closes; isomorphism steps
// published by the system count as transitions here.
struct TapReport {
    Verdict verdict = Verdict::Unknown;
    std::string detail;
    std::optional<std::pair<Arrow, Arrow>> failed_span;
};

TapReport check_tap_at(const System& sys, const Obj& x, int budget);

// TAP over the fragment explored from the origin.
TapReport check_tap(const System& sys, int depth, int budget, int max_objects = 4000);

}  // namespace evolve

#endif
