#ifndef EVOLVE_GENERIC_HPP
#define EVOLVE_GENERIC_HPP

#include <cstddef>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "evolve/amalgam.hpp"
#include "evolve/arrow.hpp"
#include "evolve/base.hpp"
#include "evolve/evolution.hpp"
#include "evolve/system.hpp"

namespace evolve {

// Scheduling policy for discharging queued obligations.
enum class Policy { FIFO, RoundRobinByStage };

Policy parse_policy(const std::string& text);  // "fifo" | "rr"
const char* to_string(Policy p);

// One queued duty: make sure a specific outgoing transition representative of
// a stage object gets amalgamated into the evolution. `hop` selects an
// isomorphism hop published by the system (so paths like "relabel, then
// grow" are covered too); -1 means the representative leaves the stage
// object directly. The indices are re-resolved against the deterministic
// enumeration at discharge time; `serial` orders the audit trail.
struct Obligation {
    std::size_t stage = 0;
    int hop = -1;
    int rep = 0;
    std::uint64_t serial = 0;
};

// Obligation queue with pluggable fairness policy. FIFO serves strictly in
// enqueue order; RoundRobinByStage cycles through stages, serving each
// stage's oldest obligation in turn, so early stages cannot be starved by
// prolific later ones. Either way every obligation is dequeued eventually.
class Schedule {
  public:
    explicit Schedule(Policy policy) : policy_(policy) {}

    void push(Obligation ob);
    void push_front(Obligation ob);  // resume a partially discharged duty
    std::optional<Obligation> pop();
    bool empty() const;
    std::size_t pending() const;
    Policy policy() const { return policy_; }

  private:
    Policy policy_;
    std::deque<Obligation> fifo_;
    std::map<std::size_t, std::deque<Obligation>> buckets_;
    std::size_t cursor_ = 0;
};

// Builds an evolution whose early stages absorb their outgoing transitions:
// each round dequeues the oldest obligation (stage i, representative t),
// amalgamates the obligation path against the composed arrow from stage i to
// the current end, and appends the resulting continuation as new steps; every
// newly created stage enqueues its own representatives. The audit log inside
// the result records each enqueue and which obligation each step discharges.
// Throws AmalgamationFailed when an obligation span provably cannot close,
// and BudgetExceeded when a truncated search blocks progress.
Evolution build_generic(const System& sys, std::size_t steps, int budget,
                        Policy policy = Policy::FIFO);

// Outcome of a bounded path search; when `found` is empty, `definitive`
// distinguishes a proven failure from a truncated search.
struct PathSearch {
    std::optional<Path> found;
    bool definitive = true;
};

// A path g: cod(t) -> stage `target` with g o t equal to the evolution's
// composed arrow from `base` to `target` (strict equality, re-verified).
PathSearch absorb_arrow_into(const System& sys, const Evolution& evo,
                             std::size_t base, const Arrow& t,
                             std::size_t target, int budget);

// Same for an outgoing path p from stage `base`, by peeling one transition at
// a time: absorb the head, shift the tail across the absorbing path by
// amalgamation, recurse on the strictly shorter remainder.
PathSearch absorb_path_into(const System& sys, const Evolution& evo,
                            std::size_t base, const Path& p,
                            std::size_t target, int budget);

// Absorbing path into the smallest stage that accepts it.
struct StagedPath {
    Path path;
    std::size_t stage = 0;
};
std::optional<StagedPath> absorb_path_min(const System& sys, const Evolution& evo,
                                          std::size_t base, const Path& p,
                                          int budget);

// Report of an absorption audit over an evolution prefix.
struct AbsorptionReport {
    Verdict verdict = Verdict::Unknown;
    std::string detail;
    std::optional<Path> witness;  // unabsorbed outgoing path, when one is known
};

// For each stage n <= upto_stage and each enumerated outgoing transition
// representative t, searches for a path g into stage `horizon` with
// g o t equal to the composed arrow; True only when every representative is
// absorbed and no enumeration was truncated.
AbsorptionReport check_absorption(const System& sys, const Evolution& evo,
                                  std::size_t upto_stage, std::size_t horizon,
                                  int budget);

// Same for outgoing paths with up to max_len nontrivial steps (isomorphism
// hops allowed between them). With max_len = 1 and no isomorphism hops this
// coincides with check_absorption.
AbsorptionReport check_path_absorption(const System& sys, const Evolution& evo,
                                       std::size_t upto_stage, int max_len,
                                       std::size_t horizon, int budget);

// Appends to `out` every path from x with 1..max_len nontrivial steps;
// isomorphism hops may be interleaved, never two in a row. Sets `truncated`
// when the output cap or the enumeration budget cut the listing short.
void outgoing_paths(const System& sys, const Obj& x, int max_len, int budget,
                    std::size_t cap, std::vector<Path>& out, bool& truncated);

// Raised when a zig-zag or ladder construction cannot absorb a cross path at
// some round.
struct AbsorptionFailed : std::runtime_error {
    AbsorptionFailed(const std::string& what, std::size_t at_round)
        : std::runtime_error(what), round(at_round) {}
    std::size_t round;
};

// Alternating system of cross maps between two evolutions u and v:
// forward[i]: U_{k[i]} -> V_{l[i]} and backward[i]: V_{l[i]} -> U_{k[i+1]},
// with every triangle commuting against the evolutions' own composed arrows.
struct ZigZag {
    std::vector<Path> forward;
    std::vector<Path> backward;
    std::vector<std::size_t> k;  // stage indices in u
    std::vector<std::size_t> l;  // stage indices in v
    std::size_t rounds = 0;      // commuting triangles built and re-verified
};

// Re-verifies every triangle of a zig-zag between u and v.
Verdict verify_zigzag(const System& sys, const Evolution& u, const Evolution& v,
                      const ZigZag& zz);

// Builds a zig-zag of `rounds` commuting triangles between two evolutions of
// the same system by alternately absorbing the latest cross path into the
// other evolution. Throws AbsorptionFailed at the first round that cannot
// absorb.
ZigZag back_and_forth(const System& sys, const Evolution& u, const Evolution& v,
                      std::size_t rounds, int budget);

// Commuting ladder embedding evolution x cofinally into u: maps[n] is a path
// X_n -> U_{stage[n]} and maps[n+1] o x_n equals u's composed arrow after
// maps[n] on every square (re-verified).
struct Ladder {
    std::vector<Path> maps;
    std::vector<std::size_t> stage;
};

Verdict verify_ladder(const System& sys, const Evolution& x, const Evolution& u,
                      const Ladder& ladder);

Ladder cofinal_embed(const System& sys, const Evolution& x, const Evolution& u,
                     std::size_t rounds, int budget);

// Zig-zag from u to itself seeded by two trajectories i, j out of a common
// finite object into stages of u; the seed map carries i to j's pushforward
// (verified), approximating an automorphism moving i to j.
ZigZag homogeneity_witness(const System& sys, const Evolution& u, const Path& i,
                           const Path& j, std::size_t rounds, int budget);

}  // namespace evolve

#endif
