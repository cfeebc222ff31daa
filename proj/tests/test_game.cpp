// The alternating transition game: strategies, forfeits, and the bounded
// genericity audit of played evolutions.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <memory>
#include <string>

#include "evolve/game.hpp"
#include "evolve/instances.hpp"

using namespace evolve;

TEST_CASE("identity versus bookkeeping plays a legal, verifiable game") {
    LinOrderSystem sys;
    auto eve = identity_strategy();
    auto odd = odd_bookkeeping_strategy();
    PlayResult res = play(sys, *eve, *odd, 8, 8);
    CHECK_FALSE(res.forfeit.has_value());
    CHECK(verify_evolution(sys, res.evo) == Verdict::True);
    CHECK(res.evo.step_count() == 8);
    CHECK(res.transcript.size() >= 8);

    // Eve moves on even rounds and always plays an identity.
    for (std::size_t r = 0; r < res.evo.step_count(); r += 2)
        CHECK(res.evo.steps[r].kind == ArrowKind::Iso);
}

TEST_CASE("random strategies are deterministic in their seed") {
    LinOrderSystem sys;
    auto odd1 = odd_bookkeeping_strategy();
    auto odd2 = odd_bookkeeping_strategy();
    auto eve1 = random_strategy(42);
    auto eve2 = random_strategy(42);
    PlayResult a = play(sys, *eve1, *odd1, 10, 8);
    PlayResult b = play(sys, *eve2, *odd2, 10, 8);
    REQUIRE(a.evo.step_count() == b.evo.step_count());
    for (std::size_t i = 0; i < a.evo.step_count(); ++i)
        CHECK(a.evo.steps[i].same_arrow(b.evo.steps[i]));

    auto eve3 = random_strategy(43);
    auto odd3 = odd_bookkeeping_strategy();
    PlayResult c = play(sys, *eve3, *odd3, 10, 8);
    bool all_same = a.evo.step_count() == c.evo.step_count();
    if (all_same)
        for (std::size_t i = 0; i < a.evo.step_count(); ++i)
            all_same = all_same && a.evo.steps[i].same_arrow(c.evo.steps[i]);
    CHECK_FALSE(all_same);

    CHECK(random_strategy(7)->describe() != identity_strategy()->describe());
}

TEST_CASE("the adversarial strategy always plays the last representative") {
    LinOrderSystem sys;
    auto eve = top_strategy();
    auto odd = odd_bookkeeping_strategy();
    PlayResult res = play(sys, *eve, *odd, 6, 8);
    CHECK_FALSE(res.forfeit.has_value());
    CHECK(verify_evolution(sys, res.evo) == Verdict::True);

    // On Eve's turns the move is the final enumerated representative.
    for (std::size_t r = 0; r < res.evo.step_count(); r += 2) {
        std::vector<Arrow> ts = sys.transitions(res.evo.stages[r], 8);
        CHECK(res.evo.steps[r].same_arrow(ts.back()));
    }
}

TEST_CASE("the bookkeeping player keeps play generic to the audited depth") {
    LinOrderSystem sys;
    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
        auto eve = random_strategy(seed);
        auto odd = odd_bookkeeping_strategy();
        PlayResult res = play(sys, *eve, *odd, 14, 8);
        CAPTURE(seed);
        REQUIRE_FALSE(res.forfeit.has_value());
        AbsorptionReport rep =
            genericity_verdict(sys, res.evo, 2, res.evo.step_count(), 8);
        CHECK(rep.verdict == Verdict::True);
    }
}

TEST_CASE("an unclosable obligation square forfeits for the bookkeeper") {
    SetForkSystem sys;
    auto eve = random_strategy(1);
    auto odd = odd_bookkeeping_strategy();
    PlayResult res = play(sys, *eve, *odd, 8, 8);
    REQUIRE(res.forfeit.has_value());
    CHECK(res.forfeit->player == PlayerTag::Odd);
    CHECK(res.forfeit->reason.find("cannot") != std::string::npos);
    CHECK(res.forfeit->reason.find("grow") != std::string::npos);
    // The evolution still ends at the last legal move and verifies.
    CHECK(verify_evolution(sys, res.evo) == Verdict::True);
}

TEST_CASE("the genericity audit rejects horizons beyond the played prefix") {
    LinOrderSystem sys;
    auto eve = identity_strategy();
    auto odd = odd_bookkeeping_strategy();
    PlayResult res = play(sys, *eve, *odd, 4, 8);
    CHECK_THROWS_AS(genericity_verdict(sys, res.evo, 2, res.evo.step_count() + 1, 8),
                    BadInput);
}

TEST_CASE("play records a readable transcript") {
    LinOrderSystem sys;
    auto eve = random_strategy(5);
    auto odd = odd_bookkeeping_strategy();
    PlayResult res = play(sys, *eve, *odd, 4, 8);
    REQUIRE_FALSE(res.transcript.empty());
    bool saw_eve = false, saw_odd = false;
    for (const std::string& line : res.transcript) {
        if (line.find("Eve") != std::string::npos) saw_eve = true;
        if (line.find("Odd") != std::string::npos) saw_odd = true;
    }
    CHECK(saw_eve);
    CHECK(saw_odd);
}
