#include "evolve/rewrite.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <queue>
#include <set>
#include <sstream>

#include "evolve/equality.hpp"
#include "evolve/generic.hpp"
#include "evolve/graph_iso.hpp"

namespace evolve {

namespace {

Path single(const Arrow& a) {
    Path p(a.dom);
    p.then(a);
    return p;
}

std::string path_label(const Path& p) {
    if (p.empty()) return "id";
    std::string out;
    for (const auto& a : p.arrows()) {
        if (!out.empty()) out += ";";
        out += a.label;
    }
    return out;
}

// Nontrivial transition representatives out of x; sets *truncated when the
// listing may have been cut short by the budget.
std::vector<Arrow> reps_of(const System& sys, const Obj& x, int budget,
                           bool* truncated) {
    std::vector<Arrow> out;
    int nontrivial = 0;
    for (auto& t : sys.transitions(x, budget)) {
        if (t.kind != ArrowKind::Transition) continue;
        ++nontrivial;
        out.push_back(t);
    }
    if (truncated && nontrivial >= budget) *truncated = true;
    return out;
}

bool is_identity_arrow(const Arrow& a) {
    return a.kind == ArrowKind::Iso && a.cod == a.dom &&
           map_key(a.map) == map_key(identity_arrow(a.dom).map);
}

// ---------------------------------------------------------------------------
// Reach sets: everything a span side can evolve into, with the composite map
// from the span's root object tracked so commutativity can be tested.

struct ReachState {
    Obj at;
    MapData composite;
    bool seed = false;  // the untouched span side itself
};

struct ReachSet {
    std::vector<ReachState> states;
    bool truncated = false;
};

ReachSet reach_states(const System& sys, const Path& from, int depth,
                      int budget, std::size_t cap) {
    ReachSet out;
    struct Item {
        Obj at;
        MapData composite;
        int steps;
    };
    std::deque<Item> queue;
    std::set<std::string> seen;
    auto key_of = [](const Obj& o, const MapData& m) {
        return literal_key(o.payload) + "|" + map_key(m);
    };
    Item first{from.cod(), from.composite_map(), 0};
    seen.insert(key_of(first.at, first.composite));
    out.states.push_back(ReachState{first.at, first.composite, true});
    queue.push_back(std::move(first));
    while (!queue.empty()) {
        Item cur = std::move(queue.front());
        queue.pop_front();
        std::vector<Arrow> moves = sys.transitions(cur.at, budget);
        int nontrivial = 0;
        for (auto& t : moves)
            if (t.kind == ArrowKind::Transition) ++nontrivial;
        if (nontrivial >= budget) out.truncated = true;
        for (auto& hop : sys.iso_steps(cur.at)) moves.push_back(hop);
        for (auto& t : moves) {
            if (is_identity_arrow(t)) continue;
            int ns = cur.steps + (t.kind == ArrowKind::Transition ? 1 : 0);
            if (ns > depth) {
                out.truncated = true;  // a live continuation was cut off
                continue;
            }
            MapData comp = compose_maps(cur.composite, t.map);
            if (!seen.insert(key_of(t.cod, comp)).second) continue;
            if (out.states.size() >= cap) {
                out.truncated = true;
                return out;
            }
            out.states.push_back(ReachState{t.cod, comp, false});
            queue.push_back(Item{t.cod, std::move(comp), ns});
        }
    }
    return out;
}

struct MeetResult {
    bool met = false;
    bool definitive = true;
};

// Can the two sides be completed to a commuting square (or, without the
// composite requirement, merely reach a common object up to isomorphism)?
// A connecting isomorphism between two reached states folds into the last
// appended arrow, which transition classes allow; when both states are the
// untouched span sides there is no such arrow, so the isomorphism itself
// must be a transition (or the sides must already be the same arrow).
MeetResult sides_meet(const System& sys, const ReachSet& L, const ReachSet& R,
                      bool need_equal_composites) {
    MeetResult res;
    std::map<std::string, std::vector<const ReachState*>> buckets;
    for (auto& sr : R.states) buckets[sr.at.canon()].push_back(&sr);
    for (auto& sl : L.states) {
        auto it = buckets.find(sl.at.canon());
        if (it == buckets.end()) continue;
        if (!need_equal_composites) {
            res.met = true;
            return res;
        }
        for (const ReachState* sr : it->second) {
            IsoSearch iso =
                find_pinned_iso(sl.at, sr->at, sl.composite, sr->composite);
            if (!iso.definitive) res.definitive = false;
            if (!iso.found) continue;
            if (!sl.seed || !sr->seed) {
                res.met = true;
                return res;
            }
            if (literal_key(sl.at.payload) == literal_key(sr->at.payload) &&
                map_key(sl.composite) == map_key(sr->composite)) {
                res.met = true;  // literally the same composite arrow
                return res;
            }
            if (sys.is_transition(*iso.found) ||
                sys.is_transition(invert_iso(*iso.found))) {
                res.met = true;
                return res;
            }
        }
    }
    return res;
}

struct SpanScan {
    Verdict verdict = Verdict::True;
    std::optional<std::pair<Path, Path>> counterexample;
    bool any_unknown = false;
    std::size_t spans = 0;
};

void scan_span(const System& sys, const Path& p, const Path& q, int depth,
               int budget, bool equal_composites, SpanScan& scan) {
    ++scan.spans;
    ReachSet L = reach_states(sys, p, depth, budget, 4000);
    ReachSet R = reach_states(sys, q, depth, budget, 4000);
    MeetResult m = sides_meet(sys, L, R, equal_composites);
    if (m.met) return;
    if (!L.truncated && !R.truncated && m.definitive) {
        scan.verdict = Verdict::False;
        scan.counterexample = std::make_pair(p, q);
    } else {
        scan.any_unknown = true;
    }
}

PropertyReport span_family_report(const SpanScan& scan, bool enum_truncated,
                                  const std::string& what, int depth,
                                  std::size_t objects) {
    PropertyReport rep;
    rep.counterexample = scan.counterexample;
    std::ostringstream os;
    if (scan.verdict == Verdict::False) {
        rep.verdict = Verdict::False;
        os << what << " fails: the pair ('"
           << path_label(scan.counterexample->first) << "', '"
           << path_label(scan.counterexample->second)
           << "') cannot be completed within depth " << depth;
    } else if (enum_truncated || scan.any_unknown) {
        rep.verdict = Verdict::Unknown;
        os << what << ": " << scan.spans << " spans over " << objects
           << " objects, but enumeration or completion search was truncated";
    } else {
        rep.verdict = Verdict::True;
        os << what << " holds: all " << scan.spans << " spans over " << objects
           << " objects complete within depth " << depth;
    }
    rep.detail = os.str();
    return rep;
}

// Arms of the single-step span family from one object: the nontrivial
// transition representatives plus the published isomorphism moves.
std::vector<Arrow> span_arms(const System& sys, const Obj& x, int budget,
                             bool* truncated) {
    std::vector<Arrow> arms = reps_of(sys, x, budget, truncated);
    for (auto& hop : sys.iso_steps(x))
        if (!is_identity_arrow(hop)) arms.push_back(hop);
    return arms;
}

PropertyReport local_span_check(const System& sys, const Fragment& frag,
                                int depth, int budget, bool equal_composites,
                                const std::string& what) {
    SpanScan scan;
    bool enum_truncated = !frag.complete;
    for (auto& node : frag.nodes) {
        bool tr = false;
        std::vector<Arrow> arms = span_arms(sys, node.obj, budget, &tr);
        if (tr) enum_truncated = true;
        for (std::size_t i = 0; i < arms.size(); ++i) {
            for (std::size_t j = i + 1; j < arms.size(); ++j) {
                scan_span(sys, single(arms[i]), single(arms[j]), depth, budget,
                          equal_composites, scan);
                if (scan.verdict == Verdict::False) break;
            }
            if (scan.verdict == Verdict::False) break;
        }
        if (scan.verdict == Verdict::False) break;
    }
    return span_family_report(scan, enum_truncated, what, depth,
                              frag.nodes.size());
}

PropertyReport path_span_check(const System& sys, const Fragment& frag,
                               int max_path_len, int depth, int budget,
                               bool equal_composites, const std::string& what) {
    if (max_path_len < 1) throw BadInput("max_path_len must be at least 1");
    SpanScan scan;
    bool enum_truncated = !frag.complete;
    for (auto& node : frag.nodes) {
        bool tr = false;
        std::vector<Path> ps;
        outgoing_paths(sys, node.obj, max_path_len, budget, 400, ps, tr);
        if (tr) enum_truncated = true;
        for (std::size_t i = 0; i < ps.size(); ++i) {
            for (std::size_t j = i + 1; j < ps.size(); ++j) {
                scan_span(sys, ps[i], ps[j], depth, budget, equal_composites,
                          scan);
                if (scan.verdict == Verdict::False) break;
            }
            if (scan.verdict == Verdict::False) break;
        }
        if (scan.verdict == Verdict::False) break;
    }
    return span_family_report(scan, enum_truncated, what, depth,
                              frag.nodes.size());
}

Path chain_to_path(const std::vector<std::pair<int, Arrow>>& parents, int idx,
                   const Obj& root) {
    std::vector<const Arrow*> chain;
    for (int i = idx; parents[i].first >= 0; i = parents[i].first)
        chain.push_back(&parents[i].second);
    Path p(root);
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) p.then(**it);
    return p;
}

}  // namespace

PropertyReport is_locally_confluent(const System& sys, const Fragment& frag,
                                    int depth, int budget) {
    return local_span_check(sys, frag, depth, budget, true, "local confluence");
}

PropertyReport is_confluent(const System& sys, const Fragment& frag,
                            int max_path_len, int depth, int budget) {
    return path_span_check(sys, frag, max_path_len, depth, budget, true,
                           "confluence");
}

PropertyReport is_locally_directed(const System& sys, const Fragment& frag,
                                   int depth, int budget) {
    return local_span_check(sys, frag, depth, budget, false,
                            "local directedness");
}

PropertyReport is_directed(const System& sys, const Fragment& frag,
                           int max_path_len, int depth, int budget) {
    return path_span_check(sys, frag, max_path_len, depth, budget, false,
                           "directedness");
}

PropertyReport is_regular(const System& sys, const Fragment& frag, int budget) {
    PropertyReport rep;
    bool enum_truncated = !frag.complete;
    bool any_unknown = false;
    std::size_t tested = 0;
    for (std::size_t j = 0; j < frag.nodes.size(); ++j) {
        const Obj& y = frag.nodes[j].obj;
        bool tr = false;
        std::vector<Arrow> ts = reps_of(sys, y, budget, &tr);
        if (tr) enum_truncated = true;
        if (ts.empty()) continue;

        std::vector<Arrow> isos;
        for (std::size_t i = 0; i < frag.nodes.size(); ++i) {
            if (i == j) continue;
            if (frag.nodes[i].obj.canon() != y.canon()) continue;
            IsoSearch s = sys.find_iso(frag.nodes[i].obj, y);
            if (!s.definitive) any_unknown = true;
            if (s.found) isos.push_back(*s.found);
        }
        for (std::size_t i = 0; i < frag.nodes.size(); ++i)
            for (auto& hop : sys.iso_steps(frag.nodes[i].obj))
                if (hop.cod == y && !is_identity_arrow(hop))
                    isos.push_back(hop);
        if (auto* g = std::get_if<GraphObj>(&y.payload)) {
            MonoSearch autos = graph_automorphisms(*g, 16);
            if (!autos.definitive) any_unknown = true;
            for (auto& m : autos.maps)
                isos.push_back(Arrow{y, y, m, ArrowKind::Iso, "aut", 0});
        }

        for (auto& h : isos) {
            for (auto& t : ts) {
                ++tested;
                Arrow composite = fuse(h, t);
                if (!sys.is_transition(composite)) {
                    rep.verdict = Verdict::False;
                    rep.counterexample = std::make_pair(single(t), single(h));
                    std::ostringstream os;
                    os << "regularity fails: transition '" << t.label
                       << "' precomposed with isomorphism '" << h.label
                       << "' (from " << literal_key(h.dom.payload)
                       << ") is not a transition";
                    rep.detail = os.str();
                    return rep;
                }
            }
        }
    }
    std::ostringstream os;
    if (enum_truncated || any_unknown) {
        rep.verdict = Verdict::Unknown;
        os << "regularity: " << tested
           << " composites checked, but some enumeration was truncated";
    } else {
        rep.verdict = Verdict::True;
        if (tested == 0)
            os << "regularity holds vacuously: no nontrivial isomorphism "
                  "reaches an object with transitions";
        else
            os << "regularity holds on " << tested
               << " isomorphism-transition composites";
    }
    rep.detail = os.str();
    return rep;
}

namespace {

PropertyReport determined_core(const System& sys, const Fragment& frag,
                               int horizon, int budget) {
    PropertyReport rep;
    bool any_unknown = !frag.complete;
    std::size_t checked = 0;
    for (auto& node : frag.nodes) {
        if (node.depth < horizon) continue;
        ++checked;
        bool tr = false;
        std::vector<Arrow> ts = reps_of(sys, node.obj, budget, &tr);
        if (ts.size() >= 2) {
            rep.verdict = Verdict::False;
            rep.counterexample = std::make_pair(single(ts[0]), single(ts[1]));
            std::ostringstream os;
            os << "object at depth " << node.depth
               << " admits non-isomorphic nontrivial transitions '"
               << ts[0].label << "' and '" << ts[1].label << "'";
            rep.detail = os.str();
            return rep;
        }
        if (tr) any_unknown = true;
    }
    std::ostringstream os;
    if (any_unknown) {
        rep.verdict = Verdict::Unknown;
        os << "determination: enumeration truncated among " << checked
           << " objects";
    } else {
        rep.verdict = Verdict::True;
        os << "every one of " << checked << " objects at depth >= " << horizon
           << " has at most one nontrivial transition up to isomorphism";
        if (checked == 0) os << " (no objects that deep in the fragment)";
    }
    rep.detail = os.str();
    return rep;
}

}  // namespace

PropertyReport is_determined(const System& sys, const Fragment& frag,
                             int budget) {
    return determined_core(sys, frag, 0, budget);
}

PropertyReport eventually_determined(const System& sys, const Fragment& frag,
                                     int horizon, int budget) {
    if (horizon < 0) throw BadInput("horizon must be nonnegative");
    return determined_core(sys, frag, horizon, budget);
}

TerminationReport is_terminating(const System& sys, const Fragment& frag,
                                 int bound, int budget) {
    if (bound < 0) throw BadInput("bound must be nonnegative");
    TerminationReport rep;
    const Obj root = sys.origin();

    // Greedy probe first: chase first nontrivial transitions; a run that
    // makes bound+1 steps settles the answer immediately.
    {
        Path probe(root);
        for (int k = 0; k <= bound; ++k) {
            std::vector<Arrow> ts = reps_of(sys, probe.cod(), budget, nullptr);
            if (ts.empty()) break;
            probe.then(ts.front());
        }
        if (probe.length() > static_cast<std::size_t>(bound)) {
            rep.verdict = Verdict::False;
            rep.witness = probe;
            std::ostringstream os;
            os << "a run reaches " << probe.length()
               << " nontrivial steps (bound " << bound << ")";
            rep.detail = os.str();
            return rep;
        }
    }

    // Level-by-level closure: level k holds every literal object reachable
    // with exactly k nontrivial steps (isomorphism moves stay in-level).
    struct Rec {
        Obj at;
        int level;
    };
    std::vector<Rec> recs;
    std::vector<std::pair<int, Arrow>> parents;  // (parent index, arrow)
    std::deque<int> queue;
    std::set<std::string> seen;
    bool truncated = false;
    int deepest = 0;
    auto key = [](const Obj& o, int lvl) {
        return literal_key(o.payload) + "|" + std::to_string(lvl);
    };
    recs.push_back(Rec{root, 0});
    parents.push_back({-1, identity_arrow(root)});
    seen.insert(key(root, 0));
    queue.push_back(0);
    while (!queue.empty()) {
        int idx = queue.front();
        queue.pop_front();
        Obj at = recs[idx].at;
        int lvl = recs[idx].level;
        std::vector<Arrow> moves = sys.transitions(at, budget);
        int nontrivial = 0;
        for (auto& t : moves)
            if (t.kind == ArrowKind::Transition) ++nontrivial;
        if (nontrivial >= budget) truncated = true;
        for (auto& hop : sys.iso_steps(at)) moves.push_back(hop);
        for (auto& t : moves) {
            if (is_identity_arrow(t)) continue;
            int nl = lvl + (t.kind == ArrowKind::Transition ? 1 : 0);
            if (nl > bound) {
                Path w = chain_to_path(parents, idx, root);
                w.then(t);
                rep.verdict = Verdict::False;
                rep.witness = w;
                std::ostringstream os;
                os << "a run reaches " << nl << " nontrivial steps (bound "
                   << bound << ")";
                rep.detail = os.str();
                return rep;
            }
            if (!seen.insert(key(t.cod, nl)).second) continue;
            if (recs.size() >= 20000) {
                truncated = true;
                queue.clear();
                break;
            }
            deepest = std::max(deepest, nl);
            recs.push_back(Rec{t.cod, nl});
            parents.push_back({idx, t});
            queue.push_back(static_cast<int>(recs.size()) - 1);
        }
    }
    std::ostringstream os;
    if (truncated) {
        rep.verdict = Verdict::Unknown;
        os << "run search truncated before exhausting the state space";
    } else if (!frag.closed) {
        rep.verdict = Verdict::Unknown;
        os << "fragment does not hold the whole reachable world, so runs "
              "past its frontier stay unexamined";
    } else {
        rep.verdict = Verdict::True;
        os << "every run stops after at most " << deepest
           << " nontrivial steps";
    }
    rep.detail = os.str();
    return rep;
}

std::vector<Obj> find_normalized(const System& sys, const Fragment& frag,
                                 int budget) {
    if (budget <= 0) throw BadInput("budget must be positive");
    std::vector<Obj> out;
    std::set<std::string> classes;
    for (auto& node : frag.nodes) {
        if (!reps_of(sys, node.obj, budget, nullptr).empty()) continue;
        if (sys.class_has_nontrivial_transitions(node.obj, budget)) continue;
        if (classes.insert(node.obj.canon()).second) out.push_back(node.obj);
    }
    return out;
}

OrderWitness order_witness(const System& sys, const Fragment& frag,
                           int budget) {
    OrderWitness w;
    auto locate = [&](const Obj& o) -> int {
        for (std::size_t i = 0; i < frag.nodes.size(); ++i)
            if (frag.nodes[i].obj == o) return static_cast<int>(i);
        for (std::size_t i = 0; i < frag.nodes.size(); ++i)
            if (frag.nodes[i].obj.canon() == o.canon())
                return static_cast<int>(i);
        return -1;
    };
    for (std::size_t y = 0; y < frag.nodes.size(); ++y) {
        std::vector<Arrow> ts = reps_of(sys, frag.nodes[y].obj, budget, nullptr);
        if (ts.size() < 2) continue;  // needs a second non-isomorphic step
        for (auto& t : ts) {
            int x = locate(t.cod);
            if (x < 0) continue;
            if (x == static_cast<int>(y)) {
                w.acyclic = false;
                continue;
            }
            w.edges.push_back({static_cast<int>(y), x});
        }
    }

    std::vector<std::vector<int>> below(frag.nodes.size());
    for (auto& [upper, lower] : w.edges) below[upper].push_back(lower);
    w.layer.assign(frag.nodes.size(), 0);
    std::vector<int> state(frag.nodes.size(), 0);  // 0 new, 1 open, 2 done
    std::function<int(int)> height = [&](int u) -> int {
        if (state[u] == 1) {
            w.acyclic = false;
            return 0;
        }
        if (state[u] == 2) return w.layer[u];
        state[u] = 1;
        int h = 0;
        for (int l : below[u]) h = std::max(h, height(l) + 1);
        state[u] = 2;
        w.layer[u] = h;
        return h;
    };
    int top = 0;
    for (std::size_t u = 0; u < frag.nodes.size(); ++u)
        top = std::max(top, height(static_cast<int>(u)));
    std::ostringstream os;
    os << w.edges.size() << " ordered pairs over " << frag.nodes.size()
       << " objects, " << (w.acyclic ? "acyclic" : "cyclic") << ", height "
       << top;
    w.detail = os.str();
    return w;
}

NewmanReport verify_newman(const System& sys, const Fragment& frag, int depth,
                           int budget) {
    NewmanReport r;
    r.regular = is_regular(sys, frag, budget);
    r.locally_confluent = is_locally_confluent(sys, frag, depth, budget);
    r.eventually_det = eventually_determined(sys, frag, 1, budget);
    r.terminating = is_terminating(
        sys, frag, static_cast<int>(frag.nodes.size()) + 1, budget);
    r.confluent = is_confluent(sys, frag, 2, depth, budget);
    r.hypotheses_hold = r.regular.verdict == Verdict::True &&
                        r.locally_confluent.verdict == Verdict::True &&
                        (r.eventually_det.verdict == Verdict::True ||
                         r.terminating.verdict == Verdict::True);
    r.confirmed = r.hypotheses_hold && r.confluent.verdict == Verdict::True;
    r.contradiction = r.hypotheses_hold && r.confluent.verdict == Verdict::False;
    std::ostringstream os;
    os << "regular=" << to_string(r.regular.verdict)
       << " locally-confluent=" << to_string(r.locally_confluent.verdict)
       << " eventually-determined=" << to_string(r.eventually_det.verdict)
       << " terminating=" << to_string(r.terminating.verdict)
       << " confluent=" << to_string(r.confluent.verdict) << " => ";
    if (r.contradiction)
        os << "CONTRADICTION: hypotheses hold but confluence fails";
    else if (r.confirmed)
        os << "implication instance confirmed";
    else if (r.hypotheses_hold)
        os << "hypotheses hold; conclusion not settled at this depth";
    else
        os << "hypotheses not established; no claim";
    r.detail = os.str();
    return r;
}

DirectedNewmanReport verify_directed_newman(const System& sys,
                                            const Fragment& frag, int depth,
                                            int budget) {
    DirectedNewmanReport r;
    r.regular = is_regular(sys, frag, budget);
    r.locally_directed = is_locally_directed(sys, frag, depth, budget);
    r.terminating = is_terminating(
        sys, frag, static_cast<int>(frag.nodes.size()) + 1, budget);
    r.directed = is_directed(sys, frag, 2, depth, budget);
    r.hypotheses_hold = r.regular.verdict == Verdict::True &&
                        r.locally_directed.verdict == Verdict::True &&
                        r.terminating.verdict == Verdict::True;
    r.confirmed = r.hypotheses_hold && r.directed.verdict == Verdict::True;
    r.contradiction = r.hypotheses_hold && r.directed.verdict == Verdict::False;
    std::ostringstream os;
    os << "regular=" << to_string(r.regular.verdict)
       << " locally-directed=" << to_string(r.locally_directed.verdict)
       << " terminating=" << to_string(r.terminating.verdict)
       << " directed=" << to_string(r.directed.verdict) << " => ";
    if (r.contradiction)
        os << "CONTRADICTION: hypotheses hold but directedness fails";
    else if (r.confirmed)
        os << "implication instance confirmed";
    else if (r.hypotheses_hold)
        os << "hypotheses hold; conclusion not settled at this depth";
    else
        os << "hypotheses not established; no claim";
    r.detail = os.str();
    return r;
}

CostedNormalization min_cost_normalization(const System& sys,
                                           const Fragment& frag, int budget) {
    if (budget <= 0) throw BadInput("budget must be positive");
    struct Rec {
        Obj at;
        std::int64_t cost;
        int parent;
        Arrow step;
        bool done = false;
    };
    std::vector<Rec> recs;
    std::map<std::string, int> index;
    auto key = [](const Obj& o) { return literal_key(o.payload); };
    using QE = std::pair<std::int64_t, int>;
    std::priority_queue<QE, std::vector<QE>, std::greater<QE>> pq;
    const Obj root = sys.origin();
    recs.push_back(Rec{root, 0, -1, identity_arrow(root), false});
    index[key(root)] = 0;
    pq.push({0, 0});
    const std::size_t cap = std::max<std::size_t>(20000, frag.nodes.size() * 64);
    bool truncated = false;

    while (!pq.empty()) {
        auto [c, idx] = pq.top();
        pq.pop();
        if (recs[idx].done || c > recs[idx].cost) continue;
        recs[idx].done = true;
        Obj at = recs[idx].at;

        bool tr = false;
        std::vector<Arrow> ts = reps_of(sys, at, budget, &tr);
        if (tr) truncated = true;
        if (ts.empty() && !sys.class_has_nontrivial_transitions(at, budget)) {
            if (truncated)
                throw BudgetExceeded(
                    "normalization search truncated; least cost not assured");
            std::vector<const Arrow*> chain;
            for (int i = idx; recs[i].parent >= 0; i = recs[i].parent)
                chain.push_back(&recs[i].step);
            Path p(root);
            for (auto it = chain.rbegin(); it != chain.rend(); ++it)
                p.then(**it);
            return CostedNormalization{c, std::move(p)};
        }

        std::vector<Arrow> moves = std::move(ts);
        for (auto& hop : sys.iso_steps(at)) moves.push_back(hop);
        for (auto& t : moves) {
            if (is_identity_arrow(t)) continue;
            std::int64_t step_cost = t.kind == ArrowKind::Iso ? 0 : t.cost;
            if (step_cost < 0) throw BadInput("negative transition cost");
            std::int64_t nc = 0;
            if (__builtin_add_overflow(c, step_cost, &nc))
                throw std::overflow_error(
                    "accumulated cost overflows 64-bit range");
            auto it = index.find(key(t.cod));
            if (it == index.end()) {
                if (recs.size() >= cap) {
                    truncated = true;
                    continue;
                }
                index[key(t.cod)] = static_cast<int>(recs.size());
                recs.push_back(Rec{t.cod, nc, idx, t, false});
                pq.push({nc, static_cast<int>(recs.size()) - 1});
            } else if (nc < recs[it->second].cost && !recs[it->second].done) {
                recs[it->second].cost = nc;
                recs[it->second].parent = idx;
                recs[it->second].step = t;
                pq.push({nc, it->second});
            }
        }
    }
    if (truncated)
        throw BudgetExceeded(
            "normalization search truncated before reaching a normalized "
            "object");
    throw NoNormalizedObject("no normalized object reachable from the origin");
}

}  // namespace evolve
