#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "pdfa/traces.hpp"

namespace pdfa {

using StateId = std::int32_t;
inline constexpr StateId kNoState = -1;

struct PdfaTransition {
    Symbol symbol = 0;
    StateId target = kNoState;
    long count = 0;

    friend bool operator==(const PdfaTransition&, const PdfaTransition&) = default;
};

struct PdfaState {
    StateId id = kNoState;
    long path_count = 0;
    long final_count = 0;
    bool sink = false;
    std::vector<PdfaTransition> transitions;  // sorted by symbol

    friend bool operator==(const PdfaState&, const PdfaState&) = default;
};

class ModelError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A finalized, read-only probabilistic automaton. State ids equal their index.
struct Pdfa {
    int alphabet_size = 1;
    bool finalprob = false;
    StateId start = 0;
    std::vector<PdfaState> states;

    const PdfaTransition* transition(StateId q, Symbol a) const;
    const PdfaState& state(StateId q) const { return states.at(static_cast<std::size_t>(q)); }

    /// Throws ModelError on dangling targets, negative counts, or broken count conservation.
    void validate() const;

    friend bool operator==(const Pdfa&, const Pdfa&) = default;
};

}  // namespace pdfa
