#include "evolve/game.hpp"

#include <random>
#include <sstream>

#include "evolve/amalgam.hpp"
#include "evolve/equality.hpp"

namespace evolve {
namespace {

std::vector<Arrow> nontrivial_reps(const System& sys, const Obj& x, int budget) {
    std::vector<Arrow> out;
    for (const auto& a : sys.transitions(x, budget))
        if (a.kind == ArrowKind::Transition) out.push_back(a);
    return out;
}

std::string describe_path(const Path& p) {
    if (p.arrows().empty()) return "id";
    std::string s;
    for (const auto& a : p.arrows()) {
        if (!s.empty()) s += ";";
        s += a.label.empty() ? "?" : a.label;
    }
    return s;
}

class IdentityStrategy final : public Strategy {
  public:
    std::string describe() const override { return "identity"; }
    Arrow next_move(const GameState& state, const System&, int) override {
        return identity_arrow(state.history.last());
    }
};

class RandomStrategy final : public Strategy {
  public:
    explicit RandomStrategy(std::uint64_t seed) : seed_(seed), rng_(seed) {}
    std::string describe() const override {
        return "random:" + std::to_string(seed_);
    }
    Arrow next_move(const GameState& state, const System& sys,
                    int budget) override {
        auto reps = nontrivial_reps(sys, state.history.last(), budget);
        if (reps.empty()) return identity_arrow(state.history.last());
        std::uniform_int_distribution<std::size_t> pick(0, reps.size() - 1);
        return reps[pick(rng_)];
    }

  private:
    std::uint64_t seed_;
    std::mt19937_64 rng_;
};

class TopStrategy final : public Strategy {
  public:
    std::string describe() const override { return "top"; }
    Arrow next_move(const GameState& state, const System& sys,
                    int budget) override {
        auto reps = nontrivial_reps(sys, state.history.last(), budget);
        if (reps.empty()) return identity_arrow(state.history.last());
        return reps.back();
    }
};

// See the header: queue obligations for every stage seen, keep
// re-amalgamating the oldest one against the frontier, play the first
// continuation arrow, retire obligations with nothing nontrivial left.
class BookkeepingStrategy final : public Strategy {
  public:
    std::string describe() const override { return "bookkeeping"; }

    Arrow next_move(const GameState& state, const System& sys,
                    int budget) override {
        const Evolution& evo = state.history;
        for (; synced_ < evo.stage_count(); ++synced_) enqueue_stage(sys, evo, budget);

        std::size_t attempts = sched_.pending();
        while (attempts-- > 0) {
            auto ob = sched_.pop();
            if (!ob) break;
            auto duty = resolve(sys, evo, *ob, budget);
            if (!duty) continue;  // defensive; stages are immutable
            Path reach = evo.composed(ob->stage, evo.stage_count() - 1);
            PathAmalgam pa = amalgamate_paths(sys, *duty, reach, budget);
            if (!pa.closed) {
                std::ostringstream os;
                os << "cannot amalgamate obligation o" << ob->serial << " path '"
                   << describe_path(*duty) << "' from stage " << ob->stage;
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
            const Path& primed = pa.closed->second;
            if (primed.length() == 0) continue;  // retired: nothing nontrivial left
            sched_.push_front(*ob);              // resume next turn
            return primed.arrows().front();
        }
        return identity_arrow(evo.last());
    }

  private:
    void enqueue_stage(const System& sys, const Evolution& evo, int budget) {
        const Obj& at = evo.stages[synced_];
        auto reps = nontrivial_reps(sys, at, budget);
        for (int r = 0; r < static_cast<int>(reps.size()); ++r)
            sched_.push(Obligation{synced_, -1, r, serial_++});
        auto hops = sys.iso_steps(at);
        for (int h = 0; h < static_cast<int>(hops.size()); ++h) {
            auto hreps = nontrivial_reps(sys, hops[h].cod, budget);
            for (int r = 0; r < static_cast<int>(hreps.size()); ++r)
                sched_.push(Obligation{synced_, h, r, serial_++});
        }
    }

    static std::optional<Path> resolve(const System& sys, const Evolution& evo,
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

    Schedule sched_{Policy::FIFO};
    std::size_t synced_ = 0;
    std::uint64_t serial_ = 0;
};

}  // namespace

std::unique_ptr<Strategy> identity_strategy() {
    return std::make_unique<IdentityStrategy>();
}

std::unique_ptr<Strategy> random_strategy(std::uint64_t seed) {
    return std::make_unique<RandomStrategy>(seed);
}

std::unique_ptr<Strategy> top_strategy() {
    return std::make_unique<TopStrategy>();
}

std::unique_ptr<Strategy> odd_bookkeeping_strategy() {
    return std::make_unique<BookkeepingStrategy>();
}

PlayResult play(const System& sys, Strategy& eve, Strategy& odd,
                std::size_t rounds, int budget) {
    if (rounds < 1) throw BadInput("rounds must be at least 1");
    PlayResult result;
    result.evo = Evolution(sys.origin());
    result.transcript.push_back("eve: " + eve.describe());
    result.transcript.push_back("odd: " + odd.describe());

    for (std::size_t r = 0; r < rounds; ++r) {
        PlayerTag tag = (r % 2 == 0) ? PlayerTag::Eve : PlayerTag::Odd;
        Strategy& player = (tag == PlayerTag::Eve) ? eve : odd;
        GameState state{result.evo, tag, r};
        Arrow move = identity_arrow(result.evo.last());
        try {
            move = player.next_move(state, sys, budget);
        } catch (const AmalgamationFailed& e) {
            result.forfeit = Forfeit{tag, r,
                                     std::string("amalgamation failed: ") + e.what()};
            break;
        } catch (const BudgetExceeded& e) {
            result.forfeit =
                Forfeit{tag, r, std::string("budget exceeded: ") + e.what()};
            break;
        }
        if (!(move.dom == result.evo.last()) || !sys.is_transition(move)) {
            result.forfeit =
                Forfeit{tag, r,
                        "illegal move '" + move.label + "' (not a transition from "
                        "the frontier)"};
            break;
        }
        result.evo.append(move);
        std::ostringstream os;
        os << "round " << r << " (" << to_string(tag) << "): " << move.label;
        result.transcript.push_back(os.str());
    }
    if (result.forfeit) {
        std::ostringstream os;
        os << "round " << result.forfeit->round << " ("
           << to_string(result.forfeit->player)
           << "): forfeits — " << result.forfeit->reason;
        result.transcript.push_back(os.str());
    }
    result.evo.audit = result.transcript;
    return result;
}

AbsorptionReport genericity_verdict(const System& sys, const Evolution& evo,
                                    std::size_t upto_stage, std::size_t horizon,
                                    int budget) {
    if (evo.step_count() < horizon)
        throw BadInput("evolution shorter than the requested horizon");
    return check_absorption(sys, evo, upto_stage, horizon, budget);
}

}  // namespace evolve
