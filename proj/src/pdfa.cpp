#include "pdfa/pdfa.hpp"

#include <algorithm>

namespace pdfa {

const PdfaTransition* Pdfa::transition(StateId q, Symbol a) const {
    const auto& ts = state(q).transitions;
    auto it = std::lower_bound(ts.begin(), ts.end(), a,
                               [](const PdfaTransition& t, Symbol s) { return t.symbol < s; });
    if (it == ts.end() || it->symbol != a) return nullptr;
    return &*it;
}

void Pdfa::validate() const {
    if (alphabet_size < 1) throw ModelError("alphabet size must be positive");
    if (states.empty()) throw ModelError("model has no states");
    const auto n = static_cast<StateId>(states.size());
    if (start < 0 || start >= n) throw ModelError("start state out of range");
    for (std::size_t i = 0; i < states.size(); ++i) {
        const PdfaState& s = states[i];
        const std::string where = "state " + std::to_string(s.id);
        if (s.id != static_cast<StateId>(i)) throw ModelError(where + ": ids must be dense and ordered");
        if (s.path_count < 0 || s.final_count < 0) throw ModelError(where + ": negative count");
        long sum = s.final_count;
        Symbol prev = -1;
        for (const auto& t : s.transitions) {
            if (t.symbol < 0 || t.symbol >= alphabet_size) throw ModelError(where + ": symbol outside alphabet");
            if (t.symbol <= prev) throw ModelError(where + ": transitions not sorted or duplicated");
            prev = t.symbol;
            if (t.target < 0 || t.target >= n) {
                throw ModelError(where + ": transition to unknown state " + std::to_string(t.target));
            }
            if (t.count < 0) throw ModelError(where + ": negative transition count");
            sum += t.count;
        }
        if (sum != s.path_count) throw ModelError(where + ": transition and final counts do not add up");
    }
}

}  // namespace pdfa
