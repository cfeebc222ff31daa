#ifndef EVOLVE_INSTANCES_HPP
#define EVOLVE_INSTANCES_HPP

#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "evolve/system.hpp"

namespace evolve {

// Finite simple graphs (directed or not) with induced embeddings; transitions
// are the one-point extensions, so longer embeddings are paths. Origin: the
// empty graph.
class GraphSystem : public System {
  public:
    explicit GraphSystem(bool directed = false) : directed_(directed) {}

    std::string name() const override { return directed_ ? "digraph" : "graph"; }
    Obj origin() const override;
    std::vector<Arrow> transitions(const Obj& x, int budget) const override;
    bool is_transition(const Arrow& f) const override;
    IsoSearch find_iso(const Obj& a, const Obj& b) const override;
    std::optional<std::pair<Arrow, Arrow>> amalgamate(const Arrow& f,
                                                      const Arrow& g) const override;
    std::optional<Path> absorb_into(const Arrow& t, const Arrow& reach) const override;
    bool absorb_into_exhaustive() const override { return true; }

  private:
    bool directed_;
};

// Finite linear orders with order embeddings; transitions insert one point.
// Origin: the empty order.
class LinOrderSystem : public System {
  public:
    std::string name() const override { return "linorder"; }
    Obj origin() const override;
    std::vector<Arrow> transitions(const Obj& x, int budget) const override;
    bool is_transition(const Arrow& f) const override;
    IsoSearch find_iso(const Obj& a, const Obj& b) const override;
    std::optional<std::pair<Arrow, Arrow>> amalgamate(const Arrow& f,
                                                      const Arrow& g) const override;
    std::optional<Path> absorb_into(const Arrow& t, const Arrow& reach) const override;
    bool absorb_into_exhaustive() const override { return true; }
};

// A fixed finite poset viewed as a category: one object per element, one
// arrow per comparable pair. Transitions are the covering steps.
class PosetSystem : public System {
  public:
    // le must contain the reflexive pairs and be transitively closed.
    PosetSystem(std::string tag, std::set<int> elems,
                std::set<std::pair<int, int>> le, int bottom);

    // bottom < a, b < top: every span of covers closes with single covers.
    static PosetSystem diamond();
    // bottom < a, b and nothing above: covers from bottom cannot be rejoined.
    static PosetSystem vee();

    std::string name() const override { return "poset:" + tag_; }
    Obj origin() const override;
    std::vector<Arrow> transitions(const Obj& x, int budget) const override;
    bool is_transition(const Arrow& f) const override;
    IsoSearch find_iso(const Obj& a, const Obj& b) const override;
    std::optional<std::pair<Arrow, Arrow>> amalgamate(const Arrow& f,
                                                      const Arrow& g) const override;

    bool covers(int a, int b) const;  // b covers a

  private:
    std::string tag_;
    std::set<int> elems_;
    std::set<std::pair<int, int>> le_;
    int bottom_;
};

// One object, arrows the nonzero integers under multiplication. Transitions
// multiply by a unit or by a single prime from the generator list (every
// prime when the list is empty).
class MonoidSystem : public System {
  public:
    explicit MonoidSystem(std::vector<std::int64_t> generators = {});

    std::string name() const override;
    Obj origin() const override;
    std::vector<Arrow> transitions(const Obj& x, int budget) const override;
    bool is_transition(const Arrow& f) const override;
    IsoSearch find_iso(const Obj& a, const Obj& b) const override;
    std::optional<std::pair<Arrow, Arrow>> amalgamate(const Arrow& f,
                                                      const Arrow& g) const override;

  private:
    std::vector<std::int64_t> gens_;  // sorted distinct primes; empty = all
};

// Finite sets with all bijections plus two seeded growth steps: {0} extends
// to a two-element set and {1} to a three-element set. The growth steps are
// attached to those literal singletons only, which makes the system locally
// confluent but not confluent, and leaves exactly the two- and three-element
// classes normalized.
class SetForkSystem : public System {
  public:
    std::string name() const override { return "setfork"; }
    Obj origin() const override;
    std::vector<Arrow> transitions(const Obj& x, int budget) const override;
    bool is_transition(const Arrow& f) const override;
    IsoSearch find_iso(const Obj& a, const Obj& b) const override;
    std::vector<Arrow> iso_steps(const Obj& x) const override;
    bool class_has_nontrivial_transitions(const Obj& x, int budget) const override;
};

// States of a matrix chain product; a transition multiplies out two factors
// (adjacent ones, or any shape-compatible pair when free_merges is set) and
// carries the scalar-multiplication cost of that merge.
class ChainSystem : public System {
  public:
    explicit ChainSystem(std::vector<std::int64_t> dims, bool free_merges = false);

    std::string name() const override { return "chain"; }
    Obj origin() const override;
    std::vector<Arrow> transitions(const Obj& x, int budget) const override;
    bool is_transition(const Arrow& f) const override;
    IsoSearch find_iso(const Obj& a, const Obj& b) const override;
    std::optional<std::pair<Arrow, Arrow>> amalgamate(const Arrow& f,
                                                      const Arrow& g) const override;

  private:
    std::vector<std::int64_t> dims_;
    bool free_;
};

// An explicitly tabulated preorder-like category: objects grouped into iso
// classes, classes partially ordered, at most one arrow per ordered pair.
// The nontrivial transitions are a chosen set of strictly-upward arrows,
// closed under postcomposition with isos but (unless regular) not under
// precomposition, so isomorphic objects may have different outgoing steps.
class FiniteCategorySystem : public System {
  public:
    struct Data {
        int n = 0;
        std::vector<int> cls;                    // object -> iso class
        std::set<std::pair<int, int>> class_le;  // reflexive transitive order
        std::set<std::pair<int, int>> steps;     // nontrivial transitions
        std::string tag;
    };

    explicit FiniteCategorySystem(Data d);

    // Random instance on up to max_objects objects. With `regular`, steps are
    // closed under precomposition with isos as well.
    static FiniteCategorySystem random(std::uint64_t seed, bool regular,
                                       int max_objects = 8);
    // Four classes x < {y1 ~ y2} < z, z'; y1 steps only to z and y2 only to
    // z': locally confluent and terminating yet not confluent.
    static FiniteCategorySystem split_fork();

    std::string name() const override { return "cat:" + data_.tag; }
    Obj origin() const override;
    std::vector<Arrow> transitions(const Obj& x, int budget) const override;
    bool is_transition(const Arrow& f) const override;
    IsoSearch find_iso(const Obj& a, const Obj& b) const override;
    std::vector<Arrow> iso_steps(const Obj& x) const override;
    bool class_has_nontrivial_transitions(const Obj& x, int budget) const override;

    const Data& data() const { return data_; }
    bool is_regular() const;

  private:
    Obj object(int id) const;
    Data data_;
};

// Builds a system from a textual description such as "graph", "digraph",
// "linorder", "poset:diamond", "poset:vee", "monoid", "monoid:2,3",
// "setfork" (alias "counterexample"), "chain:10,30,5,60",
// "chain:10,30,5,60:free", "cat:split", "cat:7", "cat:7:regular",
// "dpo:fork", "dpo:multi". Throws BadInput on anything else.
std::unique_ptr<System> make_system(const std::string& spec);

}  // namespace evolve

#endif
