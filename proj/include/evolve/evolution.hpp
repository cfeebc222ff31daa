#ifndef EVOLVE_EVOLUTION_HPP
#define EVOLVE_EVOLUTION_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "evolve/arrow.hpp"
#include "evolve/base.hpp"
#include "evolve/system.hpp"

namespace evolve {

// A finite prefix of a transition sequence out of an origin object: stage
// objects plus the step arrows between consecutive stages. The audit log
// keeps one human-readable line per recorded construction event.
struct Evolution {
    std::vector<Obj> stages;
    std::vector<Arrow> steps;  // steps[n] : stages[n] -> stages[n+1]
    std::vector<std::string> audit;

    Evolution() = default;
    explicit Evolution(Obj origin) { stages.push_back(std::move(origin)); }

    std::size_t stage_count() const { return stages.size(); }
    std::size_t step_count() const { return steps.size(); }
    const Obj& last() const;

    // Appends one step; the new stage is the step's codomain.
    void append(const Arrow& step);

    // Path holding exactly the steps n, n+1, ..., m-1; identity path at
    // stage n when n == m.
    Path composed(std::size_t n, std::size_t m) const;

    // Single composite arrow of composed(n, m).
    Arrow reach(std::size_t n, std::size_t m) const;
};

// Structural check: stages chain through the steps and every step is
// accepted by the system as a transition (isos included).
Verdict verify_evolution(const System& sys, const Evolution& evo);

// Evolution whose every step is the identity at the origin.
Evolution identity_evolution(const System& sys, std::size_t step_total);

}  // namespace evolve

#endif
