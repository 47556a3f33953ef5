#pragma once

#include <compare>
#include <functional>
#include <optional>
#include <vector>

#include "pdfa/apta.hpp"
#include "pdfa/evaluators.hpp"
#include "pdfa/params.hpp"
#include "pdfa/pdfa.hpp"

namespace pdfa {

struct MergeOptions {
    bool check = true;      // run the evaluation function on every pair
    bool track_aic = false; // accumulate exact likelihood/parameter deltas
};

struct MergeOutcome {
    bool consistent = false;
    double score = 0.0;
    MergeLog log;
    EvalState state;
    double exact_loglik_delta = 0.0;
    long exact_param_delta = 0;
};

/* Merges `merged` into `q` and determinizes (depth first, in
 * symbol order). On inconsistency everything is rolled back before returning. */
MergeOutcome merge(Apta& apta, NodeId q, NodeId merged, const Evaluator& eval, const EvalParams& params,
                   MergeOptions options = {});
void undo_merge(Apta& apta, MergeLog& log);

bool is_sink(const Apta& apta, NodeId q, const EvalParams& params);

/// A candidate merge of a blue state into a red state (or another blue one).
struct Candidate {
    NodeId blue = kNoNode;
    NodeId target = kNoNode;
    bool blueblue = false;

    // red-blue pairs sort before blue-blue pairs
    auto operator<=>(const Candidate& o) const {
        if (auto c = blueblue <=> o.blueblue; c != 0) return c;
        if (auto c = blue <=> o.blue; c != 0) return c;
        return target <=> o.target;
    }
    bool operator==(const Candidate&) const = default;
};

/// Non-sink blue states in the active order (largestblue / shallowfirst narrow it to one).
std::vector<NodeId> candidate_blues(const Apta& apta, const EvalParams& params);
std::vector<Candidate> candidate_order(const Apta& apta, const EvalParams& params);

enum class ActionKind { extend, merge };

struct Action {
    ActionKind kind = ActionKind::merge;
    Candidate candidate;  // extend uses candidate.blue only

    auto operator<=>(const Action&) const = default;
};

struct ProgressEvent {
    ActionKind kind;
    NodeId blue;
    NodeId target;
    double score;
    long frequency;
};

using Reporter = std::function<void(const ProgressEvent&)>;

/// Red-blue state merger over one Apta with an undoable action history.
class StateMerger {
public:
    StateMerger(const TraceSet& ts, const Evaluator& eval, EvalParams params, bool track_aic = false);

    struct ScoredMerge {
        Candidate candidate;
        double score = 0.0;
        double aic_decrease = 0.0;
    };

    const Apta& apta() const { return apta_; }
    const EvalParams& params() const { return params_; }
    const std::vector<Action>& history() const { return history_; }

    bool has_candidates() const { return !candidate_blues(apta_, params_).empty(); }
    std::vector<ScoredMerge> consistent_merges();
    std::optional<ScoredMerge> best_merge();

    /// Performs a merge; throws std::logic_error if it turns out inconsistent.
    MergeOutcome perform(const Candidate& c);
    void extend(NodeId blue);
    void apply(const Action& a);
    void undo_last();

    /// Current 2*|A| - 2*LL (only maintained when constructed with track_aic).
    double aic() const { return aic_.back(); }

private:
    Apta apta_;
    const Evaluator& eval_;
    EvalParams params_;
    bool track_aic_;
    std::vector<Action> history_;
    std::vector<MergeLog> logs_;
    std::vector<double> aic_;
};

/// Snapshot of the current hypothesis: every reachable class, renumbered breadth first.
Pdfa finalize(const Apta& apta, const EvalParams& params);

/// Greedy red-blue loop. Emits one event per extend or merge.
Pdfa greedy_run(const TraceSet& ts, const Evaluator& eval, const EvalParams& params,
                const Reporter& report = {});

/// AIC of a finalized model computed from its counts.
double model_aic(const Pdfa& model);

}  // namespace pdfa
