#ifndef EVOLVE_GAME_HPP
#define EVOLVE_GAME_HPP

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "evolve/arrow.hpp"
#include "evolve/base.hpp"
#include "evolve/evolution.hpp"
#include "evolve/generic.hpp"
#include "evolve/system.hpp"

namespace evolve {

// The two players of the alternating transition game. Eve moves on even
// rounds, Odd on odd rounds.
enum class PlayerTag { Eve, Odd };

inline const char* to_string(PlayerTag p) {
    return p == PlayerTag::Eve ? "Eve" : "Odd";
}

// Read-only view of the game handed to a strategy: the evolution built so
// far, whose turn it is, and the round number.
struct GameState {
    const Evolution& history;
    PlayerTag to_move = PlayerTag::Eve;
    std::size_t round = 0;
};

// A player: asked for one arrow out of the current frontier per turn. The
// arrow must be accepted by the system as a transition; anything else
// forfeits. Strategies may keep internal state across turns.
class Strategy {
  public:
    virtual ~Strategy() = default;
    virtual std::string describe() const = 0;
    virtual Arrow next_move(const GameState& state, const System& sys,
                            int budget) = 0;
};

// Always plays the identity at the frontier.
std::unique_ptr<Strategy> identity_strategy();

// Plays a uniformly random nontrivial representative (identity when none),
// deterministically from the seed.
std::unique_ptr<Strategy> random_strategy(std::uint64_t seed);

// Adversarial: always plays the last enumerated representative (for linear
// orders, the insertion at the top).
std::unique_ptr<Strategy> top_strategy();

// The bookkeeping player: maintains an obligation queue over every stage
// seen so far (including stages created by the opponent) and, each turn,
// re-amalgamates the oldest pending obligation against the current frontier,
// playing the first arrow of the continuation; obligations whose continuation
// has no nontrivial arrows left are retired. Throws AmalgamationFailed when
// an obligation span provably cannot close.
std::unique_ptr<Strategy> odd_bookkeeping_strategy();

// A finished (or forfeited) play.
struct Forfeit {
    PlayerTag player = PlayerTag::Eve;
    std::size_t round = 0;
    std::string reason;
};

struct PlayResult {
    Evolution evo;  // audit holds the transcript
    std::vector<std::string> transcript;
    std::optional<Forfeit> forfeit;
};

// Runs the alternating game for `rounds` turns. An illegal arrow — or an
// amalgamation failure inside a strategy — forfeits for the player on turn;
// the evolution always ends at the last legal move.
PlayResult play(const System& sys, Strategy& eve, Strategy& odd,
                std::size_t rounds, int budget);

// Finite stand-in for the game's winning condition: audits the played
// evolution for the absorption property on its early stages. True means
// "consistent with genericity to the audited depth", never a proof.
AbsorptionReport genericity_verdict(const System& sys, const Evolution& evo,
                                    std::size_t upto_stage, std::size_t horizon,
                                    int budget);

}  // namespace evolve

#endif
