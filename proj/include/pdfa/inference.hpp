#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "pdfa/pdfa.hpp"

namespace pdfa {

/* Per-trace output of predict mode. `states` holds the state reached after
 * each symbol followed by the end state once more (n + 1 entries); states
 * after a missing transition are kNoState. `scores` are natural-log
 * probabilities, one per symbol plus the final slot when the model uses
 * final probabilities. */
struct PredictionRecord {
    std::vector<StateId> states;
    std::vector<double> scores;
    bool unseen_symbol = false;

    friend bool operator==(const PredictionRecord&, const PredictionRecord&) = default;
};

/// Smoothing over each state's own support: (C(q,a)+c) / (C(q) + c*|support|).
PredictionRecord trace_scores(const Pdfa& model, std::span<const Symbol> trace, double correction);

/// Product of transition and final probabilities along the trace (0 on a missing transition).
double trace_probability(const Pdfa& model, std::span<const Symbol> trace);

/* Laplace smoothing over the full alphabet (plus the final slot), used for
 * perplexity where no trace may get probability zero. A missing transition
 * takes the smoothed mass c/D and the walk stays in the current state. */
double smoothed_probability(const Pdfa& model, std::span<const Symbol> trace, double correction);

/// 2^(-sum P_T(x) log2 P_C(x)) with both lists normalized to sum one first.
double perplexity(std::span<const double> candidate_probs, std::span<const double> target_probs);

enum class AnomalyReason { none, missing_transition, zero_final, unseen_symbol };

struct AnomalyVerdict {
    bool anomalous = false;
    AnomalyReason reason = AnomalyReason::none;

    friend bool operator==(const AnomalyVerdict&, const AnomalyVerdict&) = default;
};

AnomalyVerdict is_anomaly(const Pdfa& model, std::span<const Symbol> trace);
std::string_view to_string(AnomalyReason r);

}  // namespace pdfa
