#include "evolve/fragment.hpp"

#include <deque>
#include <map>

namespace evolve {

int Fragment::find(const Obj& x) const {
    for (int i = 0; i < static_cast<int>(nodes.size()); ++i)
        if (nodes[i].obj == x) return i;
    return -1;
}

Path Fragment::path_to(int idx) const {
    std::vector<const Arrow*> chain;
    for (int i = idx; nodes[i].parent >= 0; i = nodes[i].parent)
        chain.push_back(&nodes[i].step);
    Path p(nodes[0].obj);
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) p.then(**it);
    return p;
}

Fragment explore(const System& sys, int max_depth, int budget, int max_objects) {
    Fragment frag;
    std::map<std::string, std::vector<int>> index;  // canon -> node ids

    auto class_seen = [&](const Obj& x) { return index.count(x.canon()) > 0; };
    auto payload_seen = [&](const Obj& x) {
        auto it = index.find(x.canon());
        if (it != index.end())
            for (int i : it->second)
                if (frag.nodes[i].obj == x) return i;
        return -1;
    };
    auto add = [&](Obj x, int depth, int parent, Arrow step) {
        int id = static_cast<int>(frag.nodes.size());
        index[x.canon()].push_back(id);
        frag.nodes.push_back(FragmentNode{std::move(x), depth, parent, std::move(step)});
        return id;
    };

    Obj o = sys.origin();
    add(o, 0, -1, identity_arrow(o));
    std::deque<int> queue{0};

    while (!queue.empty()) {
        int cur = queue.front();
        queue.pop_front();
        const Obj at = frag.nodes[cur].obj;
        int depth = frag.nodes[cur].depth;

        if (depth >= max_depth) {
            // Not expanded; the world continues past the frontier if anything
            // nontrivial starts here.
            for (auto& t : sys.transitions(at, 1))
                if (t.kind == ArrowKind::Transition) {
                    frag.closed = false;
                    break;
                }
            continue;
        }

        std::vector<Arrow> steps = sys.transitions(at, budget);
        int nontrivial = 0;
        for (auto& t : steps)
            if (t.kind == ArrowKind::Transition) ++nontrivial;
        if (nontrivial >= budget) {  // possibly cut off inside the scope
            frag.complete = false;
            frag.closed = false;
        }
        for (auto& hop : sys.iso_steps(at)) steps.push_back(hop);

        for (auto& t : steps) {
            if (t.cod == at) continue;
            int next_depth = depth + (t.kind == ArrowKind::Transition ? 1 : 0);
            if (t.kind == ArrowKind::Transition) {
                if (class_seen(t.cod)) continue;  // one representative per class
            } else {
                if (payload_seen(t.cod) >= 0) continue;  // keep iso variants
            }
            if (static_cast<int>(frag.nodes.size()) >= max_objects) {
                frag.complete = false;
                frag.closed = false;
                return frag;
            }
            Obj child = t.cod;
            child.size_hint = next_depth;
            queue.push_back(add(std::move(child), next_depth, cur, t));
        }
    }
    return frag;
}

}  // namespace evolve
