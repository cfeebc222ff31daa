// Least-cost normalization versus an independent dynamic-programming oracle
// for matrix-chain multiplication.
//
// The oracle is the textbook interval DP over dimension lists; it shares no
// code with the uniform-cost search in the library.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "evolve/fragment.hpp"
#include "evolve/instances.hpp"
#include "evolve/rewrite.hpp"

using namespace evolve;

namespace {

// Minimal number of scalar multiplications to collapse the chain described
// by `dims` (dims.size() - 1 factors, factor i has shape dims[i] x dims[i+1]).
std::int64_t chain_oracle(const std::vector<std::int64_t>& dims) {
    int n = static_cast<int>(dims.size()) - 1;  // number of factors
    if (n <= 1) return 0;
    std::vector<std::vector<std::int64_t>> m(
        n + 1, std::vector<std::int64_t>(n + 1, 0));
    for (int len = 2; len <= n; ++len)
        for (int i = 1; i + len - 1 <= n; ++i) {
            int j = i + len - 1;
            std::int64_t best = std::numeric_limits<std::int64_t>::max();
            for (int k = i; k < j; ++k) {
                std::int64_t c =
                    m[i][k] + m[k + 1][j] + dims[i - 1] * dims[k] * dims[j];
                if (c < best) best = c;
            }
            m[i][j] = best;
        }
    return m[1][n];
}

std::vector<std::int64_t> random_dims(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> len(2, 6);
    std::uniform_int_distribution<std::int64_t> dim(1, 50);
    std::vector<std::int64_t> dims(len(rng));
    for (auto& d : dims) d = dim(rng);
    return dims;
}

std::int64_t engine_min_cost(const std::vector<std::int64_t>& dims,
                             bool free_merges = false) {
    ChainSystem sys(dims, free_merges);
    Fragment frag = explore(sys, static_cast<int>(dims.size()), 32, 4000);
    return min_cost_normalization(sys, frag, 32).cost;
}

}  // namespace

TEST_CASE("oracle fixed points") {
    CHECK(chain_oracle({10, 30}) == 0);           // a single factor
    CHECK(chain_oracle({10, 20, 30}) == 6000);    // one merge, one choice
    CHECK(chain_oracle({10, 30, 5, 60}) == 4500); // split at the 5
    CHECK(chain_oracle({10, 20, 30, 40, 30}) == 30000);
    CHECK(chain_oracle({30, 35, 15, 5, 10, 20, 25}) == 15125);
}

TEST_CASE("search agrees with the oracle on the worked chain") {
    ChainSystem sys({10, 30, 5, 60});
    Fragment frag = explore(sys, 4, 32, 4000);
    CostedNormalization best = min_cost_normalization(sys, frag, 32);
    CHECK(best.cost == 4500);
    CHECK(best.cost == chain_oracle({10, 30, 5, 60}));

    // The witness path must really be a run of the system ending normalized.
    CHECK(best.path.total_cost() == best.cost);
    const Obj& start = best.path.dom();
    CHECK(start == sys.origin());
    for (const Arrow& a : best.path.arrows()) CHECK(sys.is_transition(a));
    std::vector<Arrow> ts = sys.transitions(best.path.cod(), 8);
    for (const Arrow& t : ts) CHECK(t.kind == ArrowKind::Iso);
}

TEST_CASE("search agrees with the oracle on random chains") {
    std::mt19937_64 rng(20240817);
    for (int trial = 0; trial < 40; ++trial) {
        std::vector<std::int64_t> dims = random_dims(rng);
        CAPTURE(trial);
        CHECK(engine_min_cost(dims) == chain_oracle(dims));
    }
}

TEST_CASE("free merging never beats adjacent merging by being worse") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 12; ++trial) {
        std::vector<std::int64_t> dims = random_dims(rng);
        CAPTURE(trial);
        // Every adjacent merge is also legal under free merging, so the free
        // optimum is at most the adjacent optimum.
        CHECK(engine_min_cost(dims, true) <= engine_min_cost(dims, false));
    }
}

TEST_CASE("a truncated search scope raises a budget error, not absence") {
    // Graphs always extend, so a bounded fragment never proves anything is
    // normalized; the search reports its own truncation.
    GraphSystem sys(false);
    Fragment frag = explore(sys, 2, 6, 200);
    CHECK_THROWS_AS(min_cost_normalization(sys, frag, 6), BudgetExceeded);
}

TEST_CASE("a fully explored cycle with no normalized object reports absence") {
    FiniteCategorySystem::Data d;
    d.n = 2;
    d.cls = {0, 1};
    d.class_le = {{0, 0}, {1, 1}, {0, 1}, {1, 0}};
    d.steps = {{0, 1}, {1, 0}};
    d.tag = "cycle";
    FiniteCategorySystem sys(std::move(d));
    Fragment frag = explore(sys, 6, 8, 50);
    REQUIRE(frag.complete);
    CHECK_THROWS_AS(min_cost_normalization(sys, frag, 8), NoNormalizedObject);
}

TEST_CASE("chain construction rejects malformed dimension lists") {
    CHECK_THROWS_AS(ChainSystem({10}), BadInput);
    CHECK_THROWS_AS(ChainSystem({10, 0, 5}), BadInput);
    CHECK_THROWS_AS(ChainSystem({10, -3}), BadInput);
}
