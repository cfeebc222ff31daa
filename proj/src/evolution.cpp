#include "evolve/evolution.hpp"

#include <sstream>
#include <stdexcept>

namespace evolve {

const Obj& Evolution::last() const {
    if (stages.empty()) throw std::logic_error("evolution has no stages");
    return stages.back();
}

void Evolution::append(const Arrow& step) {
    if (stages.empty()) throw std::logic_error("evolution has no stages");
    if (!(step.dom == stages.back()))
        throw NonComposable("step domain does not match the current stage");
    steps.push_back(step);
    stages.push_back(step.cod);
}

Path Evolution::composed(std::size_t n, std::size_t m) const {
    if (n > m || m >= stages.size())
        throw std::out_of_range("stage indices out of range");
    Path p(stages[n]);
    for (std::size_t i = n; i < m; ++i) p.then(steps[i]);
    return p;
}

Arrow Evolution::reach(std::size_t n, std::size_t m) const {
    return composed(n, m).composite();
}

Verdict verify_evolution(const System& sys, const Evolution& evo) {
    if (evo.stages.empty()) return Verdict::False;
    if (evo.steps.size() + 1 != evo.stages.size()) return Verdict::False;
    for (std::size_t i = 0; i < evo.steps.size(); ++i) {
        const Arrow& s = evo.steps[i];
        if (!(s.dom == evo.stages[i]) || !(s.cod == evo.stages[i + 1]))
            return Verdict::False;
        if (!sys.is_transition(s)) return Verdict::False;
    }
    return Verdict::True;
}

Evolution identity_evolution(const System& sys, std::size_t step_total) {
    Evolution evo(sys.origin());
    for (std::size_t i = 0; i < step_total; ++i) {
        evo.append(identity_arrow(evo.last()));
        std::ostringstream os;
        os << "step " << i << ": identity";
        evo.audit.push_back(os.str());
    }
    return evo;
}

}  // namespace evolve
