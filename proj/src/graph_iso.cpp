#include "evolve/graph_iso.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace evolve {
namespace {

struct Degrees {
    std::map<int, int> out, in;
    explicit Degrees(const GraphObj& g) {
        for (int v : g.vertices) out[v] = in[v] = 0;
        for (auto& [a, b] : g.edges) {
            ++out[a];
            ++in[b];
            if (!g.directed && a != b) {
                ++out[b];
                ++in[a];
            }
        }
    }
};

struct MonoCtx {
    const GraphObj& a;
    const GraphObj& b;
    bool induced;
    bool bijective;
    std::size_t want;
    long budget;
    std::vector<int> order;             // free vertices of a, search order
    std::map<int, std::vector<int>> cands;
    VertexMap assign;
    std::set<int> used;
    MonoSearch result;

    bool compatible(int va, int vb) const {
        for (auto& [xa, xb] : assign) {
            bool e1 = a.has_edge(va, xa), e2 = b.has_edge(vb, xb);
            if (e1 && !e2) return false;
            if (induced && e2 && !e1) return false;
            if (a.directed) {
                bool r1 = a.has_edge(xa, va), r2 = b.has_edge(xb, vb);
                if (r1 && !r2) return false;
                if (induced && r2 && !r1) return false;
            }
        }
        return true;
    }

    // Returns false when the caller should stop (budget gone or enough found).
    bool dfs(std::size_t depth) {
        if (depth == order.size()) {
            result.maps.push_back(assign);
            return result.maps.size() < want;
        }
        int va = order[depth];
        for (int vb : cands.at(va)) {
            if (--budget < 0) {
                result.definitive = false;
                return false;
            }
            if (used.count(vb) || !compatible(va, vb)) continue;
            assign[va] = vb;
            used.insert(vb);
            bool keep = dfs(depth + 1);
            assign.erase(va);
            used.erase(vb);
            if (!keep) return false;
        }
        return true;
    }
};

}  // namespace

MonoSearch enumerate_graph_monos(const GraphObj& a, const GraphObj& b,
                                 const VertexMap& pins, bool induced,
                                 std::size_t want, long node_budget) {
    MonoCtx ctx{a, b, induced, false, want, node_budget, {}, {}, {}, {}, {}};
    ctx.bijective = induced && a.vertices.size() == b.vertices.size();
    if (a.directed != b.directed || a.vertices.size() > b.vertices.size())
        return MonoSearch{};
    if (ctx.bijective && a.edges.size() != b.edges.size()) return MonoSearch{};

    for (auto& [va, vb] : pins) {
        if (!a.vertices.count(va) || !b.vertices.count(vb)) return MonoSearch{};
        if (ctx.used.count(vb)) return MonoSearch{};  // pins not injective
        ctx.assign[va] = vb;
        ctx.used.insert(vb);
    }
    for (auto& [va, vb] : pins)
        if (!ctx.compatible(va, vb)) {
            // compatible() skips the pair itself; re-check against the rest by
            // removing and re-testing.
            ctx.assign.erase(va);
            ctx.used.erase(vb);
            bool ok = ctx.compatible(va, vb);
            ctx.assign[va] = vb;
            ctx.used.insert(vb);
            if (!ok) return MonoSearch{};
        }

    Degrees da(a), db(b);
    for (int va : a.vertices) {
        if (ctx.assign.count(va)) continue;
        std::vector<int> cs;
        for (int vb : b.vertices) {
            if (ctx.bijective) {
                if (da.out[va] != db.out[vb] || da.in[va] != db.in[vb]) continue;
            } else {
                if (da.out[va] > db.out[vb] || da.in[va] > db.in[vb]) continue;
            }
            cs.push_back(vb);
        }
        if (cs.empty()) return MonoSearch{};
        ctx.cands[va] = std::move(cs);
        ctx.order.push_back(va);
    }
    std::sort(ctx.order.begin(), ctx.order.end(), [&](int x, int y) {
        auto sx = ctx.cands[x].size(), sy = ctx.cands[y].size();
        return sx != sy ? sx < sy : x < y;
    });
    ctx.dfs(0);
    return std::move(ctx.result);
}

MonoSearch find_graph_iso(const GraphObj& a, const GraphObj& b,
                          const VertexMap& pins, long node_budget) {
    if (a.vertices.size() != b.vertices.size()) return MonoSearch{};
    return enumerate_graph_monos(a, b, pins, true, 1, node_budget);
}

MonoSearch graph_automorphisms(const GraphObj& g, std::size_t want,
                               long node_budget) {
    return enumerate_graph_monos(g, g, {}, true, want, node_budget);
}

}  // namespace evolve
