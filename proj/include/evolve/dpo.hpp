#ifndef EVOLVE_DPO_HPP
#define EVOLVE_DPO_HPP

#include <string>
#include <vector>

#include "evolve/amalgam.hpp"
#include "evolve/fragment.hpp"
#include "evolve/json_io.hpp"
#include "evolve/system.hpp"

namespace evolve {

// A double-pushout rewrite rule: pattern L, preserved interface K, and
// replacement R, with injective graph monomorphisms embedding K into both.
// Applying the rule deletes the matched copy of L outside K, keeps the
// context, and glues in a copy of R along K.
struct Rule {
    std::string name;
    GraphObj L;
    GraphObj K;
    GraphObj R;
    VertexMap k_in_l;
    VertexMap k_in_r;

    // Validates the monomorphisms and the interface-edge invariants;
    // throws BadInput when violated.
    Rule(std::string name, GraphObj L, GraphObj K, GraphObj R, VertexMap k_in_l,
         VertexMap k_in_r);
};

// An injective edge-preserving occurrence of a rule's pattern in a host
// graph that also satisfies the dangling condition: no edge outside the
// matched pattern touches a vertex scheduled for deletion.
struct Match {
    VertexMap m;  // pattern vertex -> host vertex
};

struct InvalidMatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// All matches of the rule's pattern in g, in increasing lexicographic order
// of the image tuple over the pattern's vertices. Matching is injective and
// non-induced: the host may have extra edges among the image vertices.
std::vector<Match> find_matches(const Rule& r, const GraphObj& g);

// True exactly when m would be returned by find_matches(r, g).
bool valid_match(const Rule& r, const GraphObj& g, const Match& m);

struct RewriteResult {
    GraphObj result;
    // The transition record: dom = host, cod = result, map = the identity
    // on the preserved part (partial when the rule deletes vertices).
    Arrow step;
};

// One double-pushout step. Fresh vertices for the replacement-only part get
// the smallest unused positive integers, in increasing order of the
// replacement's own vertex names, so identical inputs rewrite identically.
// Throws InvalidMatch when m fails re-validation.
RewriteResult apply_rule(const Rule& r, const GraphObj& g, const Match& m);

// A set of rewrite rules wrapped as an evolution system on simple directed
// (or undirected) graphs: transitions are the rule applications at valid
// matches, deduplicated up to isomorphism of arrows (an automorphism of the
// host plus an isomorphism of the results that make the square commute).
class DpoSystem : public System {
  public:
    DpoSystem(std::vector<Rule> rules, GraphObj origin, std::string tag);

    std::string name() const override { return "dpo:" + tag_; }
    Obj origin() const override;
    std::vector<Arrow> transitions(const Obj& x, int budget) const override;
    bool is_transition(const Arrow& f) const override;
    IsoSearch find_iso(const Obj& a, const Obj& b) const override;

    const std::vector<Rule>& rules() const { return rules_; }

  private:
    std::vector<Rule> rules_;
    GraphObj origin_;
    std::string tag_;
};

// Span closure over every object of the fragment, under the up-to-vertex-
// relabelling reading: squares may close through any isomorphism of the
// common codomain.
TapReport check_rule_amalgamation(const DpoSystem& sys, const Fragment& frag,
                                  int budget = default_budget());

// Rule files: {"name": str, "L": graph, "K": graph, "R": graph,
// "kL": {"k": l, ...}, "kR": {"k": r, ...}} with graphs encoded as in
// graph_to_json and the interface maps keyed by K-vertex name.
Json rule_to_json(const Rule& r);
Rule rule_from_json(const Json& j);

// Worked fixtures: a growth rule that redirects one edge of a two-pronged
// fork onto a fresh common target, the two-pronged origin it acts on, and a
// two-rule set (merge two sources onto a fresh ancestor / extend a chain by
// a fresh common target) acting on a small mixed host.
Rule demo_rule();
GraphObj demo_origin();
std::vector<Rule> demo_multirules();
GraphObj demo_multi_origin();

}  // namespace evolve

#endif
