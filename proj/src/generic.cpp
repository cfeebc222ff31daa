#include "evolve/generic.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <string>
#include <utility>

#include "evolve/equality.hpp"

namespace evolve {
namespace {

std::string describe_path(const Path& p) {
    if (p.arrows().empty()) return "id";
    std::string s;
    for (const auto& a : p.arrows()) {
        if (!s.empty()) s += ";";
        s += a.label.empty() ? "?" : a.label;
    }
    return s;
}

// Nontrivial representatives out of x, in enumeration order. Sets *truncated
// when the enumeration may have been cut off by the budget.
std::vector<Arrow> nontrivial_reps(const System& sys, const Obj& x, int budget,
                                   bool* truncated = nullptr) {
    std::vector<Arrow> out;
    for (const auto& a : sys.transitions(x, budget))
        if (a.kind == ArrowKind::Transition) out.push_back(a);
    if (truncated && static_cast<int>(out.size()) >= budget) *truncated = true;
    return out;
}

}  // namespace

Policy parse_policy(const std::string& text) {
    if (text == "fifo") return Policy::FIFO;
    if (text == "rr") return Policy::RoundRobinByStage;
    throw BadInput("unknown policy '" + text + "' (expected fifo or rr)");
}

const char* to_string(Policy p) { return p == Policy::FIFO ? "fifo" : "rr"; }

void Schedule::push(Obligation ob) {
    if (policy_ == Policy::FIFO)
        fifo_.push_back(ob);
    else
        buckets_[ob.stage].push_back(ob);
}

void Schedule::push_front(Obligation ob) {
    if (policy_ == Policy::FIFO)
        fifo_.push_front(ob);
    else
        buckets_[ob.stage].push_front(ob);
}

std::optional<Obligation> Schedule::pop() {
    if (policy_ == Policy::FIFO) {
        if (fifo_.empty()) return std::nullopt;
        Obligation ob = fifo_.front();
        fifo_.pop_front();
        return ob;
    }
    if (buckets_.empty()) return std::nullopt;
    auto it = buckets_.lower_bound(cursor_);
    if (it == buckets_.end()) it = buckets_.begin();
    Obligation ob = it->second.front();
    it->second.pop_front();
    cursor_ = it->first + 1;
    if (it->second.empty()) buckets_.erase(it);
    return ob;
}

bool Schedule::empty() const {
    if (policy_ == Policy::FIFO) return fifo_.empty();
    return buckets_.empty();
}

std::size_t Schedule::pending() const {
    if (policy_ == Policy::FIFO) return fifo_.size();
    std::size_t n = 0;
    for (const auto& [s, q] : buckets_) n += q.size();
    return n;
}

namespace {

// Rebuilds an obligation's outgoing path from its stage object: an optional
// isomorphism hop followed by the rep-th nontrivial representative. Stage
// objects are immutable once appended, so the deterministic enumeration
// resolves to the same arrow that was seen at enqueue time.
std::optional<Path> resolve_obligation(const System& sys, const Evolution& evo,
                                       const Obligation& ob, int budget) {
    const Obj& at = evo.stages[ob.stage];
    if (ob.hop < 0) {
        auto reps = nontrivial_reps(sys, at, budget);
        if (ob.rep >= static_cast<int>(reps.size())) return std::nullopt;
        return Path(reps[ob.rep]);
    }
    auto hops = sys.iso_steps(at);
    if (ob.hop >= static_cast<int>(hops.size())) return std::nullopt;
    auto reps = nontrivial_reps(sys, hops[ob.hop].cod, budget);
    if (ob.rep >= static_cast<int>(reps.size())) return std::nullopt;
    Path p(hops[ob.hop]);
    p.then(reps[ob.rep]);
    return p;
}

}  // namespace

Evolution build_generic(const System& sys, std::size_t steps, int budget,
                        Policy policy) {
    Evolution evo(sys.origin());
    Schedule sched(policy);
    std::uint64_t next_serial = 0;

    auto enqueue_stage = [&](std::size_t s) {
        const Obj& at = evo.stages[s];
        bool truncated = false;
        auto reps = nontrivial_reps(sys, at, budget, &truncated);
        for (int r = 0; r < static_cast<int>(reps.size()); ++r) {
            Obligation ob{s, -1, r, next_serial++};
            sched.push(ob);
            std::ostringstream os;
            os << "enqueue o" << ob.serial << " (stage " << s << ", "
               << reps[r].label << ")";
            evo.audit.push_back(os.str());
        }
        auto hops = sys.iso_steps(at);
        for (int h = 0; h < static_cast<int>(hops.size()); ++h) {
            bool also = false;
            auto hreps = nontrivial_reps(sys, hops[h].cod, budget, &also);
            truncated = truncated || also;
            for (int r = 0; r < static_cast<int>(hreps.size()); ++r) {
                Obligation ob{s, h, r, next_serial++};
                sched.push(ob);
                std::ostringstream os;
                os << "enqueue o" << ob.serial << " (stage " << s << ", "
                   << hops[h].label << ";" << hreps[r].label << ")";
                evo.audit.push_back(os.str());
            }
        }
        if (truncated) {
            std::ostringstream os;
            os << "stage " << s << ": enumeration truncated at budget " << budget;
            evo.audit.push_back(os.str());
        }
    };

    enqueue_stage(0);
    while (evo.step_count() < steps) {
        auto ob = sched.pop();
        if (!ob) {
            std::ostringstream os;
            os << "step " << evo.step_count() << ": identity (no pending obligations)";
            evo.append(identity_arrow(evo.last()));
            evo.audit.push_back(os.str());
            continue;
        }
        auto duty = resolve_obligation(sys, evo, *ob, budget);
        if (!duty) {
            std::ostringstream os;
            os << "o" << ob->serial << ": representative no longer enumerable, skipped";
            evo.audit.push_back(os.str());
            continue;
        }
        const std::size_t base = ob->stage;
        const std::size_t current = evo.stage_count() - 1;
        Path reach = evo.composed(base, current);
        PathAmalgam pa = amalgamate_paths(sys, *duty, reach, budget);
        if (!pa.closed) {
            std::ostringstream os;
            os << "cannot amalgamate obligation o" << ob->serial << " path '"
               << describe_path(*duty) << "' from stage " << base
               << " against the evolution";
            if (pa.definitive && pa.failed_span) {
                const Arrow& lhs = pa.failed_span->first;
                const Arrow& rhs = pa.failed_span->second;
                os << ": the square (" << lhs.label << ", " << rhs.label
                   << ") provably cannot be closed";
                throw AmalgamationFailed(os.str(), lhs, rhs);
            }
            os << ": search truncated at budget " << budget;
            throw BudgetExceeded(os.str());
        }
        const Path& primed = pa.closed->second;  // continues from the current end
        if (primed.arrows().empty()) {
            std::ostringstream os;
            os << "o" << ob->serial << " (stage " << base << ", '"
               << describe_path(*duty) << "'): already absorbed, no new steps";
            evo.audit.push_back(os.str());
            continue;
        }
        std::size_t added = 0;
        for (const auto& a : primed.arrows()) {
            std::ostringstream os;
            os << "step " << evo.step_count() << ": discharges o" << ob->serial
               << " (stage " << base << ", '" << describe_path(*duty) << "') arrow "
               << ++added << "/" << primed.arrows().size() << " [" << a.label << "]";
            evo.append(a);
            evo.audit.push_back(os.str());
        }
        for (std::size_t s = current + 1; s < evo.stage_count(); ++s) enqueue_stage(s);
    }
    return evo;
}

namespace {

// True when g is a valid absorbing path for p at (base, target): correct
// endpoints, every factor accepted, and g o p strictly equal to the
// evolution's composed arrow.
bool absorption_verified(const System& sys, const Evolution& evo, std::size_t base,
                         const Path& p, std::size_t target, const Path& g) {
    if (!(g.dom() == p.cod()) || !(g.cod() == evo.stages[target])) return false;
    for (const auto& a : g.arrows())
        if (!sys.is_transition(a)) return false;
    Arrow whole = fuse(p.composite(), g.composite());
    return arrows_equal(whole, evo.reach(base, target), Equality::Strict) ==
           Verdict::True;
}

}  // namespace

PathSearch absorb_arrow_into(const System& sys, const Evolution& evo,
                             std::size_t base, const Arrow& t,
                             std::size_t target, int budget) {
    if (base > target || target >= evo.stage_count())
        throw std::out_of_range("stage indices out of range");
    if (!(t.dom == evo.stages[base]))
        throw NonComposable("transition does not leave the given stage");

    PathSearch out;
    Arrow reach = evo.reach(base, target);
    Path as_path(t);

    if (t.kind == ArrowKind::Iso) {
        Path g(invert_iso(t));
        g.then(evo.composed(base, target));
        if (absorption_verified(sys, evo, base, as_path, target, g)) {
            out.found = std::move(g);
            return out;
        }
    }
    std::optional<Path> native = sys.absorb_into(t, reach);
    if (native) {
        if (absorption_verified(sys, evo, base, as_path, target, *native)) {
            out.found = std::move(*native);
            out.definitive = true;
            return out;
        }
    } else if (sys.absorb_into_exhaustive() && t.kind == ArrowKind::Transition &&
               sys.is_transition(t)) {
        // The instance decision procedure is complete: a miss rules out every
        // absorbing path, so the bounded fallback search below is pointless.
        out.definitive = true;
        return out;
    }

    // Bounded breadth-first search over composites out of cod(t), deduplicated
    // by (object, composite-so-far); a node is accepted when an isomorphism
    // pinned by the two composites lands it on the target stage.
    struct Node {
        Obj at;
        Path path;
        int depth;
    };
    const int max_depth = static_cast<int>(target - base) + 4;
    const int node_cap = 20000;
    bool truncated = false;
    std::deque<Node> queue;
    std::set<std::string> seen;
    auto key_of = [&](const Obj& o, const Path& p) {
        return literal_key(o.payload) + "|" +
               map_key(compose_maps(t.map, p.composite_map()));
    };
    {
        Node start{t.cod, Path(t.cod), 0};
        seen.insert(key_of(start.at, start.path));
        queue.push_back(std::move(start));
    }
    int processed = 0;
    while (!queue.empty()) {
        Node cur = std::move(queue.front());
        queue.pop_front();
        if (++processed > node_cap) {
            truncated = true;
            break;
        }
        MapData composite = compose_maps(t.map, cur.path.composite_map());
        IsoSearch psi =
            find_pinned_iso(cur.at, evo.stages[target], composite, reach.map);
        if (!psi.definitive) truncated = true;
        if (psi.found) {
            Path adjusted(t.cod);
            const auto& arrs = cur.path.arrows();
            if (arrs.empty()) {
                adjusted.then(*psi.found);
            } else {
                for (std::size_t i = 0; i + 1 < arrs.size(); ++i)
                    adjusted.then(arrs[i]);
                adjusted.then(fuse(arrs.back(), *psi.found));
            }
            if (absorption_verified(sys, evo, base, as_path, target, adjusted)) {
                out.found = std::move(adjusted);
                out.definitive = true;
                return out;
            }
        }
        if (cur.depth >= max_depth) {
            truncated = true;
            continue;
        }
        std::vector<Arrow> succ = sys.transitions(cur.at, budget);
        int nontrivial = 0;
        for (const auto& a : succ)
            if (a.kind == ArrowKind::Transition) ++nontrivial;
        if (nontrivial >= budget) truncated = true;
        for (const auto& hop : sys.iso_steps(cur.at)) succ.push_back(hop);
        for (const auto& a : succ) {
            Path np = cur.path;
            np.then(a);
            std::string k = key_of(a.cod, np);
            if (!seen.insert(k).second) continue;
            queue.push_back(Node{a.cod, std::move(np), cur.depth + 1});
        }
    }
    out.definitive = !truncated;
    return out;
}

namespace {

PathSearch absorb_path_inner(const System& sys, const Evolution& evo,
                             std::size_t base, const Path& p, std::size_t target,
                             int budget, int fuel) {
    PathSearch out;
    if (fuel <= 0) {
        out.definitive = false;
        return out;
    }
    if (!(p.dom() == evo.stages[base]))
        throw NonComposable("path does not leave the given stage");

    // Base case: a path of isomorphisms is undone by its inverse, then the
    // evolution's own steps close the gap.
    if (p.length() == 0) {
        Arrow c = p.composite();
        Path g(invert_iso(c));
        g.then(evo.composed(base, target));
        if (absorption_verified(sys, evo, base, p, target, g)) {
            out.found = std::move(g);
            return out;
        }
        out.definitive = false;
        return out;
    }

    const auto& arrs = p.arrows();
    std::size_t lead = 0;
    while (lead < arrs.size() && arrs[lead].kind == ArrowKind::Iso) ++lead;

    if (lead > 0) {
        // Transport the remainder across the leading isomorphism run, then
        // absorb the transported path, which leaves the stage object directly.
        Path run(p.dom());
        for (std::size_t i = 0; i < lead; ++i) run.then(arrs[i]);
        Path rest(arrs[lead].dom);
        for (std::size_t i = lead; i < arrs.size(); ++i) rest.then(arrs[i]);
        Arrow gamma = run.composite();
        PathAmalgam pa =
            amalgamate_paths(sys, rest, Path(invert_iso(gamma)), budget);
        if (!pa.closed) {
            out.definitive = pa.definitive;
            return out;
        }
        const Path& phi = pa.closed->first;    // p.cod() -> W, isomorphisms only
        const Path& moved = pa.closed->second;  // stage object -> W
        PathSearch sub =
            absorb_path_inner(sys, evo, base, moved, target, budget, fuel - 1);
        if (!sub.found) {
            out.definitive = sub.definitive;
            return out;
        }
        Path g = phi;
        g.then(*sub.found);
        if (absorption_verified(sys, evo, base, p, target, g)) {
            out.found = std::move(g);
            return out;
        }
        out.definitive = false;
        return out;
    }

    // Head transition first. Absorb it at some intermediate stage, shift the
    // tail across the absorbing path, and recurse on the strictly shorter
    // remainder.
    Arrow head = arrs.front();
    Path rest(head.cod);
    for (std::size_t i = 1; i < arrs.size(); ++i) rest.then(arrs[i]);
    if (rest.arrows().empty())
        return absorb_arrow_into(sys, evo, base, head, target, budget);

    bool all_definitive = true;
    for (std::size_t mid = base + 1; mid <= target; ++mid) {
        PathSearch first = absorb_arrow_into(sys, evo, base, head, mid, budget);
        if (!first.found) {
            all_definitive = all_definitive && first.definitive;
            continue;
        }
        PathAmalgam pa = amalgamate_paths(sys, rest, *first.found, budget);
        if (!pa.closed) {
            all_definitive = all_definitive && pa.definitive;
            continue;
        }
        const Path& cont = pa.closed->first;    // p.cod() -> W
        const Path& moved = pa.closed->second;  // stage mid -> W, shorter
        PathSearch sub =
            absorb_path_inner(sys, evo, mid, moved, target, budget, fuel - 1);
        if (!sub.found) {
            all_definitive = all_definitive && sub.definitive;
            continue;
        }
        Path g = cont;
        g.then(*sub.found);
        if (absorption_verified(sys, evo, base, p, target, g)) {
            out.found = std::move(g);
            return out;
        }
        all_definitive = false;
    }
    out.definitive = all_definitive;
    return out;
}

}  // namespace

PathSearch absorb_path_into(const System& sys, const Evolution& evo,
                            std::size_t base, const Path& p, std::size_t target,
                            int budget) {
    if (base > target || target >= evo.stage_count())
        throw std::out_of_range("stage indices out of range");
    return absorb_path_inner(sys, evo, base, p, target, budget,
                             8 + 2 * static_cast<int>(p.arrows().size()));
}

namespace {

std::optional<StagedPath> absorb_path_min_from(const System& sys,
                                               const Evolution& evo,
                                               std::size_t base, const Path& p,
                                               std::size_t min_stage, int budget) {
    for (std::size_t m = std::max(base, min_stage); m < evo.stage_count(); ++m) {
        PathSearch s = absorb_path_into(sys, evo, base, p, m, budget);
        if (s.found) return StagedPath{std::move(*s.found), m};
    }
    return std::nullopt;
}

}  // namespace

std::optional<StagedPath> absorb_path_min(const System& sys, const Evolution& evo,
                                          std::size_t base, const Path& p,
                                          int budget) {
    return absorb_path_min_from(sys, evo, base, p, base, budget);
}

AbsorptionReport check_absorption(const System& sys, const Evolution& evo,
                                  std::size_t upto_stage, std::size_t horizon,
                                  int budget) {
    AbsorptionReport rep;
    if (!(upto_stage < horizon) || horizon > evo.step_count())
        throw BadInput("require upto_stage < horizon <= evolution length");

    bool any_unknown = false;
    std::size_t tested = 0;
    for (std::size_t n = 0; n <= upto_stage; ++n) {
        bool truncated = false;
        auto reps = nontrivial_reps(sys, evo.stages[n], budget, &truncated);
        if (truncated) any_unknown = true;
        for (const auto& t : reps) {
            ++tested;
            PathSearch s = absorb_arrow_into(sys, evo, n, t, horizon, budget);
            if (s.found) continue;
            if (s.definitive) {
                rep.verdict = Verdict::False;
                rep.witness = Path(t);
                std::ostringstream os;
                os << "transition '" << t.label << "' out of stage " << n
                   << " is provably never absorbed by stage " << horizon;
                rep.detail = os.str();
                return rep;
            }
            any_unknown = true;
            if (!rep.witness) rep.witness = Path(t);
        }
    }
    std::ostringstream os;
    if (any_unknown) {
        rep.verdict = Verdict::Unknown;
        os << "no provably unabsorbable transition among " << tested
           << " representatives, but some searches were truncated";
    } else {
        rep.verdict = Verdict::True;
        os << "all " << tested << " transition representatives out of stages 0.."
           << upto_stage << " are absorbed by stage " << horizon;
    }
    rep.detail = os.str();
    return rep;
}

// All outgoing paths from x with 1..max_len nontrivial steps; isomorphism
// hops may be interleaved, never two in a row.
void outgoing_paths(const System& sys, const Obj& x, int max_len, int budget,
                    std::size_t cap, std::vector<Path>& out, bool& truncated) {
    struct Item {
        Path p;
        int len;
        bool last_iso;
    };
    std::vector<Item> stack;
    stack.push_back(Item{Path(x), 0, false});
    while (!stack.empty()) {
        Item cur = std::move(stack.back());
        stack.pop_back();
        if (out.size() >= cap) {
            truncated = true;
            return;
        }
        if (cur.len > 0) out.push_back(cur.p);
        if (cur.len < max_len) {
            bool tr = false;
            for (const auto& t : nontrivial_reps(sys, cur.p.cod(), budget, &tr)) {
                Path np = cur.p;
                np.then(t);
                stack.push_back(Item{std::move(np), cur.len + 1, false});
            }
            if (tr) truncated = true;
        }
        if (!cur.last_iso) {
            for (const auto& hop : sys.iso_steps(cur.p.cod())) {
                Path np = cur.p;
                np.then(hop);
                stack.push_back(Item{std::move(np), cur.len, true});
            }
        }
    }
}

AbsorptionReport check_path_absorption(const System& sys, const Evolution& evo,
                                       std::size_t upto_stage, int max_len,
                                       std::size_t horizon, int budget) {
    AbsorptionReport rep;
    if (!(upto_stage < horizon) || horizon > evo.step_count())
        throw BadInput("require upto_stage < horizon <= evolution length");
    if (max_len < 1) throw BadInput("max_len must be at least 1");

    bool any_unknown = false;
    std::size_t tested = 0;
    for (std::size_t n = 0; n <= upto_stage; ++n) {
        bool truncated = false;
        std::vector<Path> ps;
        outgoing_paths(sys, evo.stages[n], max_len, budget, 400, ps, truncated);
        if (truncated) any_unknown = true;
        for (const auto& p : ps) {
            ++tested;
            PathSearch s = absorb_path_into(sys, evo, n, p, horizon, budget);
            if (s.found) continue;
            if (s.definitive) {
                rep.verdict = Verdict::False;
                rep.witness = p;
                std::ostringstream os;
                os << "path '" << describe_path(p) << "' out of stage " << n
                   << " is provably never absorbed by stage " << horizon;
                rep.detail = os.str();
                return rep;
            }
            any_unknown = true;
            if (!rep.witness) rep.witness = p;
        }
    }
    std::ostringstream os;
    if (any_unknown) {
        rep.verdict = Verdict::Unknown;
        os << "no provably unabsorbable path among " << tested
           << " candidates, but some searches were truncated";
    } else {
        rep.verdict = Verdict::True;
        os << "all " << tested << " outgoing paths (up to " << max_len
           << " nontrivial steps) from stages 0.." << upto_stage
           << " are absorbed by stage " << horizon;
    }
    rep.detail = os.str();
    return rep;
}

Verdict verify_zigzag(const System& sys, const Evolution& u, const Evolution& v,
                      const ZigZag& zz) {
    (void)sys;
    if (zz.forward.empty() || zz.k.empty() || zz.l.empty()) return Verdict::False;
    if (zz.k.size() != zz.backward.size() + 1) return Verdict::False;
    if (zz.l.size() != zz.forward.size()) return Verdict::False;
    bool any_unknown = false;
    for (std::size_t i = 0; i < zz.forward.size(); ++i) {
        if (!(zz.forward[i].dom() == u.stages[zz.k[i]])) return Verdict::False;
        if (!(zz.forward[i].cod() == v.stages[zz.l[i]])) return Verdict::False;
    }
    for (std::size_t i = 0; i < zz.backward.size(); ++i) {
        if (!(zz.backward[i].dom() == v.stages[zz.l[i]])) return Verdict::False;
        if (!(zz.backward[i].cod() == u.stages[zz.k[i + 1]])) return Verdict::False;
        Arrow lhs = fuse(zz.forward[i].composite(), zz.backward[i].composite());
        Verdict tri =
            arrows_equal(lhs, u.reach(zz.k[i], zz.k[i + 1]), Equality::Strict);
        if (tri == Verdict::False) return Verdict::False;
        if (tri == Verdict::Unknown) any_unknown = true;
    }
    for (std::size_t i = 1; i < zz.forward.size(); ++i) {
        Arrow lhs = fuse(zz.backward[i - 1].composite(), zz.forward[i].composite());
        Verdict tri =
            arrows_equal(lhs, v.reach(zz.l[i - 1], zz.l[i]), Equality::Strict);
        if (tri == Verdict::False) return Verdict::False;
        if (tri == Verdict::Unknown) any_unknown = true;
    }
    return any_unknown ? Verdict::Unknown : Verdict::True;
}

namespace {

ZigZag zigzag_core(const System& sys, const Evolution& u, const Evolution& v,
                   Path seed, std::size_t k0, std::size_t l0, std::size_t rounds,
                   int budget) {
    ZigZag zz;
    zz.forward.push_back(std::move(seed));
    zz.k.push_back(k0);
    zz.l.push_back(l0);
    for (std::size_t r = 0; r < rounds; ++r) {
        if (r % 2 == 0) {
            const Path cross = zz.forward.back();
            const std::size_t base = zz.k.back();
            auto got = absorb_path_min_from(sys, u, base, cross, base + 1, budget);
            if (!got) {
                std::ostringstream os;
                os << "round " << r << ": cannot absorb cross path '"
                   << describe_path(cross) << "' into the first evolution";
                throw AbsorptionFailed(os.str(), r);
            }
            Arrow lhs = fuse(cross.composite(), got->path.composite());
            if (arrows_equal(lhs, u.reach(base, got->stage), Equality::Strict) !=
                Verdict::True) {
                std::ostringstream os;
                os << "round " << r << ": triangle failed re-verification";
                throw AbsorptionFailed(os.str(), r);
            }
            zz.backward.push_back(got->path);
            zz.k.push_back(got->stage);
        } else {
            const Path cross = zz.backward.back();
            const std::size_t base = zz.l.back();
            auto got = absorb_path_min_from(sys, v, base, cross, base + 1, budget);
            if (!got) {
                std::ostringstream os;
                os << "round " << r << ": cannot absorb cross path '"
                   << describe_path(cross) << "' into the second evolution";
                throw AbsorptionFailed(os.str(), r);
            }
            Arrow lhs = fuse(cross.composite(), got->path.composite());
            if (arrows_equal(lhs, v.reach(base, got->stage), Equality::Strict) !=
                Verdict::True) {
                std::ostringstream os;
                os << "round " << r << ": triangle failed re-verification";
                throw AbsorptionFailed(os.str(), r);
            }
            zz.forward.push_back(got->path);
            zz.l.push_back(got->stage);
        }
        zz.rounds = r + 1;
    }
    return zz;
}

}  // namespace

ZigZag back_and_forth(const System& sys, const Evolution& u, const Evolution& v,
                      std::size_t rounds, int budget) {
    if (u.stages.empty() || v.stages.empty() || !(u.stages[0] == v.stages[0]))
        throw BadInput("evolutions must share their origin");
    return zigzag_core(sys, u, v, Path(u.stages[0]), 0, 0, rounds, budget);
}

Verdict verify_ladder(const System& sys, const Evolution& x, const Evolution& u,
                      const Ladder& ladder) {
    (void)sys;
    if (ladder.maps.empty() || ladder.maps.size() != ladder.stage.size())
        return Verdict::False;
    bool any_unknown = false;
    for (std::size_t n = 0; n < ladder.maps.size(); ++n) {
        if (!(ladder.maps[n].dom() == x.stages[n])) return Verdict::False;
        if (!(ladder.maps[n].cod() == u.stages[ladder.stage[n]]))
            return Verdict::False;
    }
    for (std::size_t n = 0; n + 1 < ladder.maps.size(); ++n) {
        Arrow lhs = fuse(x.steps[n], ladder.maps[n + 1].composite());
        Arrow rhs = fuse(ladder.maps[n].composite(),
                         u.reach(ladder.stage[n], ladder.stage[n + 1]));
        Verdict sq = arrows_equal(lhs, rhs, Equality::Strict);
        if (sq == Verdict::False) return Verdict::False;
        if (sq == Verdict::Unknown) any_unknown = true;
    }
    return any_unknown ? Verdict::Unknown : Verdict::True;
}

Ladder cofinal_embed(const System& sys, const Evolution& x, const Evolution& u,
                     std::size_t rounds, int budget) {
    if (x.stages.empty() || u.stages.empty() || !(x.stages[0] == u.stages[0]))
        throw BadInput("evolutions must share their origin");
    if (rounds > x.step_count())
        throw BadInput("not enough steps in the embedded evolution");

    Ladder lad;
    lad.maps.push_back(Path(x.stages[0]));
    lad.stage.push_back(0);
    for (std::size_t n = 0; n < rounds; ++n) {
        const Arrow& step = x.steps[n];
        PathAmalgam pa = amalgamate_paths(sys, Path(step), lad.maps.back(), budget);
        if (!pa.closed) {
            std::ostringstream os;
            os << "round " << n << ": cannot amalgamate step '" << step.label
               << "' with the current rung";
            throw AbsorptionFailed(os.str(), n);
        }
        const Path& cont = pa.closed->first;   // X_{n+1} -> W
        const Path& rung = pa.closed->second;  // U_{stage[n]} -> W
        auto got = absorb_path_min(sys, u, lad.stage.back(), rung, budget);
        if (!got) {
            std::ostringstream os;
            os << "round " << n << ": cannot absorb the amalgamated rung";
            throw AbsorptionFailed(os.str(), n);
        }
        Path next = cont;
        next.then(got->path);
        Arrow lhs = fuse(step, next.composite());
        Arrow rhs = fuse(lad.maps.back().composite(),
                         u.reach(lad.stage.back(), got->stage));
        if (arrows_equal(lhs, rhs, Equality::Strict) != Verdict::True) {
            std::ostringstream os;
            os << "round " << n << ": square failed re-verification";
            throw AbsorptionFailed(os.str(), n);
        }
        lad.maps.push_back(std::move(next));
        lad.stage.push_back(got->stage);
    }
    return lad;
}

ZigZag homogeneity_witness(const System& sys, const Evolution& u, const Path& i,
                           const Path& j, std::size_t rounds, int budget) {
    if (!(i.dom() == j.dom()))
        throw BadInput("trajectories must share their domain");
    auto stage_of = [&](const Obj& o) -> std::optional<std::size_t> {
        for (std::size_t s = 0; s < u.stage_count(); ++s)
            if (u.stages[s] == o) return s;
        return std::nullopt;
    };
    auto a = stage_of(i.cod());
    auto b = stage_of(j.cod());
    if (!a || !b)
        throw BadInput("trajectory codomains must be stages of the evolution");

    PathAmalgam pa = amalgamate_paths(sys, i, j, budget);
    if (!pa.closed)
        throw AbsorptionFailed("seed: cannot amalgamate the trajectories", 0);
    const Path& from_i = pa.closed->first;  // U_a -> W
    const Path& from_j = pa.closed->second;  // U_b -> W
    auto got = absorb_path_min(sys, u, *b, from_j, budget);
    if (!got)
        throw AbsorptionFailed("seed: cannot absorb the amalgamated trajectory", 0);
    Path seed = from_i;
    seed.then(got->path);  // U_a -> U_m

    Arrow lhs = fuse(i.composite(), seed.composite());
    Arrow rhs = fuse(j.composite(), u.reach(*b, got->stage));
    if (arrows_equal(lhs, rhs, Equality::Strict) != Verdict::True)
        throw AbsorptionFailed(
            "seed map fails to carry the first trajectory onto the second", 0);
    return zigzag_core(sys, u, u, std::move(seed), *a, got->stage, rounds, budget);
}

}  // namespace evolve
