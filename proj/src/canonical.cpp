#include "evolve/object.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

// Canonical graph labeling via individualization-refinement: refine a vertex
// coloring to equilibrium, branch on the first non-singleton class, and take
// the minimal leaf encoding. Discovered automorphisms prune sibling branches,
// which keeps highly symmetric graphs (many equal leaves) tractable.

namespace evolve {
namespace {

using Colors = std::map<int, int>;

struct Adjacency {
    bool directed;
    std::map<int, std::vector<int>> out;
    std::map<int, std::vector<int>> in;

    explicit Adjacency(const GraphObj& g) : directed(g.directed) {
        for (int v : g.vertices) {
            out[v];
            in[v];
        }
        for (auto& [a, b] : g.edges) {
            out[a].push_back(b);
            in[b].push_back(a);
            if (!g.directed && a != b) {
                out[b].push_back(a);
                in[a].push_back(b);
            }
        }
    }
};

// Equitable refinement: a vertex signature is its color plus the multiset of
// neighbor colors (out and in separately when directed). Ranks are assigned
// by signature value, so equal colorings of isomorphic graphs refine alike.
Colors refine(const Adjacency& adj, Colors colors) {
    for (;;) {
        using Sig = std::tuple<int, std::vector<int>, std::vector<int>>;
        std::map<int, Sig> sig;
        for (auto& [v, outs] : adj.out) {
            std::vector<int> oc, ic;
            for (int w : outs) oc.push_back(colors[w]);
            std::sort(oc.begin(), oc.end());
            if (adj.directed) {
                for (int w : adj.in.at(v)) ic.push_back(colors[w]);
                std::sort(ic.begin(), ic.end());
            }
            sig[v] = Sig{colors[v], std::move(oc), std::move(ic)};
        }
        std::map<Sig, int> rank;
        for (auto& [v, s] : sig) rank[s];
        int r = 0;
        for (auto& [s, idx] : rank) idx = r++;
        Colors next;
        for (auto& [v, s] : sig) next[v] = rank[s];
        if (next == colors) return colors;
        colors = std::move(next);
    }
}

bool is_discrete(const Colors& colors) {
    std::set<int> seen;
    for (auto& [v, c] : colors)
        if (!seen.insert(c).second) return false;
    return true;
}

struct CanonSearch {
    const GraphObj& g;
    Adjacency adj;
    Colors base_colors;  // semantic colors, part of the key
    std::optional<std::string> best;
    std::map<int, int> best_label;
    std::string first_enc;
    std::map<int, int> first_label;
    bool have_first = false;
    std::vector<std::map<int, int>> autos;

    CanonSearch(const GraphObj& graph, const Colors& colors)
        : g(graph), adj(graph), base_colors(colors) {
        for (int v : g.vertices)
            if (!base_colors.count(v)) base_colors[v] = 0;
    }

    std::string encode(const std::map<int, int>& label) const {
        int n = static_cast<int>(g.vertices.size());
        std::vector<int> by_pos(n);
        for (auto& [v, p] : label) by_pos[p] = v;
        std::ostringstream os;
        os << "G;" << (g.directed ? 'd' : 'u') << ';' << n << ';';
        for (int p = 0; p < n; ++p) os << base_colors.at(by_pos[p]) << ',';
        os << ';';
        for (int i = 0; i < n; ++i)
            for (int j = g.directed ? 0 : i + 1; j < n; ++j) {
                if (i == j) continue;
                os << (g.has_edge(by_pos[i], by_pos[j]) ? '1' : '0');
            }
        return os.str();
    }

    bool is_automorphism(const std::map<int, int>& perm) const {
        for (auto& [v, w] : perm)
            if (base_colors.at(v) != base_colors.at(w)) return false;
        for (auto& [a, b] : g.edges)
            if (!g.has_edge(perm.at(a), perm.at(b))) return false;
        return true;
    }

    void leaf(const Colors& colors) {
        std::map<int, int> label;
        for (auto& [v, c] : colors) label[v] = c;
        std::string enc = encode(label);
        if (!have_first) {
            have_first = true;
            first_enc = enc;
            first_label = label;
        } else if (enc == first_enc) {
            // Same encoding as the first leaf: the two labelings differ by an
            // automorphism, worth remembering for pruning.
            std::map<int, int> pos_to_v;
            for (auto& [v, p] : label) pos_to_v[p] = v;
            std::map<int, int> perm;
            for (auto& [v, p] : first_label) perm[v] = pos_to_v[p];
            if (is_automorphism(perm)) autos.push_back(perm);
        }
        if (!best || enc < *best) {
            best = enc;
            best_label = label;
        }
    }

    void recurse(const Colors& colors, const std::vector<int>& prefix) {
        if (is_discrete(colors)) {
            leaf(colors);
            return;
        }
        int target = -1;
        std::map<int, std::vector<int>> classes;
        for (auto& [v, c] : colors) classes[c].push_back(v);
        for (auto& [c, vs] : classes)
            if (vs.size() > 1) {
                target = c;
                break;
            }
        const std::vector<int>& cell = classes[target];
        // Automorphisms fixing the branch prefix pointwise identify candidates
        // whose subtrees would repeat work.
        std::vector<std::map<int, int>> usable;
        for (auto& a : autos) {
            bool fixes = true;
            for (int p : prefix)
                if (a.at(p) != p) {
                    fixes = false;
                    break;
                }
            if (fixes) usable.push_back(a);
        }
        std::set<int> done;
        for (int v : cell) {
            bool skip = false;
            for (auto& a : usable)
                if (done.count(a.at(v))) {
                    skip = true;
                    break;
                }
            if (skip) continue;
            done.insert(v);
            Colors child = colors;
            child[v] = -1;  // individualize, re-ranked by refine
            std::vector<int> next_prefix = prefix;
            next_prefix.push_back(v);
            recurse(refine(adj, child), next_prefix);
            // Newly found automorphisms also prune the remaining candidates.
            usable.clear();
            for (auto& a : autos) {
                bool fixes = true;
                for (int p : prefix)
                    if (a.at(p) != p) {
                        fixes = false;
                        break;
                    }
                if (fixes) usable.push_back(a);
            }
        }
    }

    GraphCanon run() {
        if (g.vertices.empty()) {
            return GraphCanon{std::string("G;") + (g.directed ? 'd' : 'u') + ";0;;", {}};
        }
        recurse(refine(adj, base_colors), {});
        return GraphCanon{*best, best_label};
    }
};

}  // namespace

GraphCanon canonical_graph_labeling(const GraphObj& g, const std::map<int, int>& colors) {
    CanonSearch s(g, colors);
    return s.run();
}

std::string canonical_key(const Payload& p) {
    struct Visitor {
        std::string operator()(const GraphObj& g) const {
            return canonical_graph_labeling(g).key;
        }
        std::string operator()(const OrderObj& o) const {
            return "O;" + std::to_string(o.points.size());
        }
        std::string operator()(const SetObj& s) const {
            return "S;" + std::to_string(s.elems.size());
        }
        std::string operator()(const PosetObj& p) const {
            return "P;" + std::to_string(p.elem);
        }
        std::string operator()(const MonoidObj&) const { return "M"; }
        std::string operator()(const ChainObj& c) const {
            std::ostringstream os;
            os << "C;";
            for (auto& [r, k] : c.blocks) os << r << 'x' << k << ';';
            return os.str();
        }
        std::string operator()(const CatObj& c) const {
            return "K;" + std::to_string(c.iso_class);
        }
    };
    return std::visit(Visitor{}, p);
}

std::string literal_key(const Payload& p) {
    struct Visitor {
        std::string operator()(const GraphObj& g) const {
            std::ostringstream os;
            os << "g;" << (g.directed ? 'd' : 'u') << ';';
            for (int v : g.vertices) os << v << ',';
            os << ';';
            for (auto& [a, b] : g.edges) os << a << '-' << b << ',';
            return os.str();
        }
        std::string operator()(const OrderObj& o) const {
            std::ostringstream os;
            os << "o;";
            for (int x : o.points) os << x << ',';
            return os.str();
        }
        std::string operator()(const SetObj& s) const {
            std::ostringstream os;
            os << "s;";
            for (int x : s.elems) os << x << ',';
            return os.str();
        }
        std::string operator()(const PosetObj& p) const {
            return "p;" + std::to_string(p.elem);
        }
        std::string operator()(const MonoidObj&) const { return "m"; }
        std::string operator()(const ChainObj& c) const {
            std::ostringstream os;
            os << "c;";
            for (auto& [r, k] : c.blocks) os << r << 'x' << k << ';';
            return os.str();
        }
        std::string operator()(const CatObj& c) const {
            return "k;" + std::to_string(c.id) + ';' + std::to_string(c.iso_class);
        }
    };
    return std::visit(Visitor{}, p);
}

}  // namespace evolve
