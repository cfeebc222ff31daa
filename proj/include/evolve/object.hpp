#ifndef EVOLVE_OBJECT_HPP
#define EVOLVE_OBJECT_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace evolve {

// Finite simple graph, directed or undirected. Vertices carry stable integer
// names so that arrows can reference them; undirected edges are stored with
// the smaller endpoint first.
struct GraphObj {
    bool directed = false;
    std::set<int> vertices;
    std::set<std::pair<int, int>> edges;

    bool has_edge(int a, int b) const {
        if (!directed && a > b) std::swap(a, b);
        return edges.count({a, b}) > 0;
    }
    void add_edge(int a, int b) {
        if (!directed && a > b) std::swap(a, b);
        edges.insert({a, b});
    }
    bool operator==(const GraphObj&) const = default;
    auto operator<=>(const GraphObj&) const = default;
};

// Finite linear order; points listed from least to greatest.
struct OrderObj {
    std::vector<int> points;
    bool operator==(const OrderObj&) const = default;
    auto operator<=>(const OrderObj&) const = default;
};

// Finite set of integers.
struct SetObj {
    std::set<int> elems;
    bool operator==(const SetObj&) const = default;
    auto operator<=>(const SetObj&) const = default;
};

// Element of a fixed ambient poset held by the owning system.
struct PosetObj {
    int elem = 0;
    bool operator==(const PosetObj&) const = default;
    auto operator<=>(const PosetObj&) const = default;
};

// The unique object of a one-object (monoid) category.
struct MonoidObj {
    bool operator==(const MonoidObj&) const = default;
    auto operator<=>(const MonoidObj&) const = default;
};

// State of a matrix chain: the current sequence of factors, each a
// (rows, cols) shape. Adjacent factors of a well-formed chain satisfy
// cols(i) == rows(i+1).
struct ChainObj {
    std::vector<std::pair<std::int64_t, std::int64_t>> blocks;
    bool operator==(const ChainObj&) const = default;
    auto operator<=>(const ChainObj&) const = default;
};

// Object of an explicitly tabulated finite category; iso_class identifies its
// isomorphism class inside that category.
struct CatObj {
    int id = 0;
    int iso_class = 0;
    bool operator==(const CatObj&) const = default;
    auto operator<=>(const CatObj&) const = default;
};

using Payload =
    std::variant<GraphObj, OrderObj, SetObj, PosetObj, MonoidObj, ChainObj, CatObj>;

// Canonical key: byte string with canon(a) == canon(b) iff a and b are
// isomorphic objects of their instance category. Exact for all sizes; graphs
// use minimal-labeling search with partition-refinement pruning.
std::string canonical_key(const Payload& p);

// Literal serialization: equal exactly when the payloads are equal. Used for
// visited-set deduplication in bounded searches.
std::string literal_key(const Payload& p);

// Canonical labeling of a graph with optional vertex colors (isomorphisms must
// preserve colors). Returns the key and one relabeling realizing it.
struct GraphCanon {
    std::string key;
    std::map<int, int> label;  // original vertex -> canonical position
};
GraphCanon canonical_graph_labeling(const GraphObj& g,
                                    const std::map<int, int>& colors = {});

// An object with a memoized canonical key. size_hint records the discovery
// depth (number of nontrivial transitions from the origin) when known.
struct Obj {
    Payload payload;
    int size_hint = -1;

    Obj() : payload(GraphObj{}) {}
    explicit Obj(Payload p, int hint = -1) : payload(std::move(p)), size_hint(hint) {}

    const std::string& canon() const {
        if (!canon_) canon_ = std::make_shared<const std::string>(canonical_key(payload));
        return *canon_;
    }

    // Concrete identity: equal payloads, regardless of hints or cached keys.
    bool operator==(const Obj& o) const { return payload == o.payload; }
    bool operator!=(const Obj& o) const { return !(*this == o); }

private:
    mutable std::shared_ptr<const std::string> canon_;
};

}  // namespace evolve

#endif  // EVOLVE_OBJECT_HPP
