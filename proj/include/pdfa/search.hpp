#pragma once

#include <span>
#include <vector>

#include "pdfa/merger.hpp"

namespace pdfa {

struct SearchResult {
    Pdfa model;
    std::vector<Action> path;  // replayable from the fresh prefix tree
    double aic = 0.0;
};

/* Best-first beam search over merge sequences. Partial paths are ranked by
 * their current AIC (ties: shorter path, then lexicographic path) and the
 * beam keeps the `beam_width` best. The greedy descent is the initial
 * incumbent, so the result is never worse than greedy under AIC. */
SearchResult best_first_search(const TraceSet& ts, const Evaluator& eval, const EvalParams& params,
                               int beam_width, const Reporter& report = {});

/// Re-applies a recorded action path to a fresh prefix tree.
Pdfa replay(const TraceSet& ts, const Evaluator& eval, const EvalParams& params, std::span<const Action> path);

}  // namespace pdfa
