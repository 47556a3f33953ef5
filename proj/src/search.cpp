#include "pdfa/search.hpp"

#include <algorithm>
#include <stdexcept>

namespace pdfa {

namespace {

struct PathNode {
    std::vector<Action> path;
    double aic = 0.0;
};

bool better(const PathNode& a, const PathNode& b) {
    if (a.aic != b.aic) return a.aic < b.aic;
    if (a.path.size() != b.path.size()) return a.path.size() < b.path.size();
    return a.path < b.path;
}

// Moves the merger to `path` by undoing back to the shared prefix and redoing the rest.
void switch_to(StateMerger& merger, const std::vector<Action>& path) {
    const auto& current = merger.history();
    std::size_t common = 0;
    while (common < current.size() && common < path.size() && current[common] == path[common]) ++common;
    while (merger.history().size() > common) merger.undo_last();
    for (std::size_t i = common; i < path.size(); ++i) merger.apply(path[i]);
}

}  // namespace

SearchResult best_first_search(const TraceSet& ts, const Evaluator& eval, const EvalParams& params,
                               int beam_width, const Reporter& report) {
    if (beam_width < 1) throw std::invalid_argument("beam width must be at least 1");
    StateMerger merger(ts, eval, params, /*track_aic=*/true);

    // Greedy incumbent.
    while (merger.has_candidates()) {
        if (auto best = merger.best_merge()) {
            merger.perform(best->candidate);
        } else if (params.extend) {
            merger.extend(candidate_blues(merger.apta(), params).front());
        } else {
            break;
        }
    }
    PathNode incumbent{merger.history(), merger.aic()};

    std::vector<PathNode> frontier{PathNode{{}, 0.0}};
    switch_to(merger, {});
    frontier.front().aic = merger.aic();

    while (!frontier.empty()) {
        std::vector<PathNode> children;
        for (const PathNode& node : frontier) {
            switch_to(merger, node.path);
            if (!merger.has_candidates()) {
                if (better(node, incumbent)) incumbent = node;
                continue;
            }
            const auto merges = merger.consistent_merges();
            if (merges.empty()) {
                if (!params.extend) {
                    if (better(node, incumbent)) incumbent = node;
                    continue;
                }
                PathNode child = node;
                child.path.push_back({ActionKind::extend, {candidate_blues(merger.apta(), params).front(), kNoNode}});
                children.push_back(std::move(child));
                continue;
            }
            for (const auto& m : merges) {
                PathNode child{node.path, node.aic - m.aic_decrease};
                child.path.push_back({ActionKind::merge, m.candidate});
                children.push_back(std::move(child));
            }
        }
        std::sort(children.begin(), children.end(), better);
        if (children.size() > static_cast<std::size_t>(beam_width)) children.resize(static_cast<std::size_t>(beam_width));
        frontier = std::move(children);
    }

    // Replay the winner from scratch so that events carry their scores.
    switch_to(merger, {});
    for (const Action& a : incumbent.path) {
        if (a.kind == ActionKind::extend) {
            const long freq = merger.apta().node(a.candidate.blue).path_count;
            merger.extend(a.candidate.blue);
            if (report) report({ActionKind::extend, a.candidate.blue, kNoNode, 0.0, freq});
        } else {
            const MergeOutcome m = merger.perform(a.candidate);
            if (report) {
                report({ActionKind::merge, a.candidate.blue, a.candidate.target, m.score,
                        merger.apta().node(a.candidate.target).path_count});
            }
        }
    }

    SearchResult result;
    result.model = finalize(merger.apta(), params);
    result.path = incumbent.path;
    result.aic = model_aic(result.model);
    return result;
}

Pdfa replay(const TraceSet& ts, const Evaluator& eval, const EvalParams& params, std::span<const Action> path) {
    StateMerger merger(ts, eval, params);
    for (const Action& a : path) merger.apply(a);
    return finalize(merger.apta(), params);
}

}  // namespace pdfa
