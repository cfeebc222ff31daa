#ifndef EVOLVE_REWRITE_HPP
#define EVOLVE_REWRITE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "evolve/fragment.hpp"
#include "evolve/system.hpp"

namespace evolve {

// Tri-state answer of a property check over an explored fragment. A false
// answer always carries a concrete counterexample span; a true answer only
// claims the scope the detail string describes (the fragment's objects),
// and is downgraded to unknown whenever the fragment was truncated by the
// enumeration budget inside that scope.
struct PropertyReport {
    Verdict verdict = Verdict::Unknown;
    std::string detail;
    std::optional<std::pair<Path, Path>> counterexample;
};

// Every pair of transitions out of a common fragment object can be completed
// to a commuting square by paths with up to `depth` further nontrivial steps
// on each side.
PropertyReport is_locally_confluent(const System& sys, const Fragment& frag,
                                    int depth, int budget = default_budget());

// Every pair of paths (up to max_path_len nontrivial steps each) out of a
// common fragment object can be completed to a commuting square by paths
// with up to `depth` further nontrivial steps on each side. False answers
// are definitive when the completion search exhausts without truncation.
PropertyReport is_confluent(const System& sys, const Fragment& frag,
                            int max_path_len, int depth,
                            int budget = default_budget());

// Precomposing any transition with any isomorphism between fragment objects
// (including automorphisms) again yields a transition.
PropertyReport is_regular(const System& sys, const Fragment& frag,
                          int budget = default_budget());

// Every fragment object has at most one nontrivial transition up to
// codomain isomorphism. The eventual variant only quantifies over objects
// at breadth-first depth >= horizon.
PropertyReport is_determined(const System& sys, const Fragment& frag,
                             int budget = default_budget());
PropertyReport eventually_determined(const System& sys, const Fragment& frag,
                                     int horizon, int budget = default_budget());

// Directedness drops the commutativity requirement: the two sides only have
// to reach a common object (up to isomorphism), not equal composites.
PropertyReport is_locally_directed(const System& sys, const Fragment& frag,
                                   int depth, int budget = default_budget());
PropertyReport is_directed(const System& sys, const Fragment& frag,
                           int max_path_len, int depth,
                           int budget = default_budget());

struct TerminationReport {
    Verdict verdict = Verdict::Unknown;
    std::string detail;
    // On a false answer: a path with more than `bound` nontrivial steps.
    std::optional<Path> witness;
};

// True only when the fragment holds the system's whole reachable world
// (closed) and its nontrivial transitions are acyclic, so every run of
// nontrivial steps is finite. False when some path exceeds `bound`
// nontrivial steps, with that path as witness.
TerminationReport is_terminating(const System& sys, const Fragment& frag,
                                 int bound, int budget = default_budget());

// Fragment objects with no nontrivial transitions at all — neither in their
// own enumerated listing nor anywhere in their isomorphism class. One
// representative per isomorphism class, in fragment discovery order.
std::vector<Obj> find_normalized(const System& sys, const Fragment& frag,
                                 int budget = default_budget());

// The strict order used by the confluence-from-local-confluence argument:
// X is below Y when some nontrivial transition goes from Y down to X and Y
// has at least two non-isomorphic nontrivial transitions. Layers come from
// longest descending chains; on a cycle the witness reports non-acyclic.
struct OrderWitness {
    // Edges (upper, lower) over fragment node indices: lower sits below upper.
    std::vector<std::pair<int, int>> edges;
    std::vector<int> layer;  // per fragment node; 0 when not above anything
    bool acyclic = true;
    std::string detail;
};

OrderWitness order_witness(const System& sys, const Fragment& frag,
                           int budget = default_budget());

// One full audit of the confluence criterion: evaluates the hypotheses
// (regular, locally confluent, and eventually determined or terminating)
// and the conclusion (confluent) on the same fragment. A fragment with all
// hypotheses verified true and the conclusion definitively false would be a
// soundness bug and is flagged as a contradiction.
struct NewmanReport {
    PropertyReport regular;
    PropertyReport locally_confluent;
    PropertyReport eventually_det;
    TerminationReport terminating;
    PropertyReport confluent;
    bool hypotheses_hold = false;
    bool confirmed = false;      // hypotheses true and conclusion true
    bool contradiction = false;  // hypotheses true and conclusion false
    std::string detail;
};

NewmanReport verify_newman(const System& sys, const Fragment& frag, int depth,
                           int budget = default_budget());

// Same audit for the directed variant: regular + terminating + locally
// directed against the conclusion directed.
struct DirectedNewmanReport {
    PropertyReport regular;
    PropertyReport locally_directed;
    TerminationReport terminating;
    PropertyReport directed;
    bool hypotheses_hold = false;
    bool confirmed = false;
    bool contradiction = false;
    std::string detail;
};

DirectedNewmanReport verify_directed_newman(const System& sys,
                                            const Fragment& frag, int depth,
                                            int budget = default_budget());

// Thrown by min_cost_normalization when the search space holds no
// normalized object.
struct NoNormalizedObject : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CostedNormalization {
    std::int64_t cost;
    Path path;  // from the origin to a normalized object
};

// Least-cost route from the origin to a normalized object, by uniform-cost
// search over literal states. Isomorphism hops cost zero; negative step
// costs are rejected and any overflow of the 64-bit total is an error, not
// wraparound. The fragment supplies the scope hint for the state cap.
CostedNormalization min_cost_normalization(const System& sys,
                                           const Fragment& frag,
                                           int budget = default_budget());

}  // namespace evolve

#endif
