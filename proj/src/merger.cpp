#include "pdfa/merger.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>
#include <unordered_map>

namespace pdfa {

namespace {

// Last min(d, depth) incoming symbols of both prefixes agree.
bool markov_compatible(const Apta& apta, NodeId a, NodeId b, int d) {
    const int k = std::min({d, apta.node(a).depth, apta.node(b).depth});
    for (int i = 0; i < k; ++i) {
        if (apta.node(a).incoming != apta.node(b).incoming) return false;
        a = apta.node(a).parent;
        b = apta.node(b).parent;
    }
    return true;
}

struct Frame {
    NodeId receiver;
    std::map<Symbol, NodeId>::const_iterator it;
    std::map<Symbol, NodeId>::const_iterator end;
    int depth;
};

}  // namespace

MergeOutcome merge(Apta& apta, NodeId q, NodeId merged, const Evaluator& eval, const EvalParams& params,
                   MergeOptions options) {
    if (q == merged || !apta.is_representative(q) || !apta.is_representative(merged)) {
        throw std::logic_error("merge requires two distinct representatives");
    }
    if (eval.uses_reference_weights() && !apta.has_reference_weights()) {
        throw std::logic_error("evaluation function needs prefix-tree reference weights");
    }

    MergeOutcome out;
    std::vector<Frame> stack;

    auto enter = [&](NodeId a, NodeId b, int depth) {
        // red states stay representatives; two red states never collapse
        if (apta.node(b).color == Color::red) {
            if (apta.node(a).color == Color::red) return false;
            std::swap(a, b);
        }
        if (params.markovian > 0 && !markov_compatible(apta, a, b, params.markovian)) return false;
        if (options.check && (params.ktail == 0 || depth < params.ktail)) {
            if (!eval.pair_consistent(apta.node(a), apta.node(b), params, out.state)) return false;
        }
        if (options.track_aic) {
            const LoglikDelta d = ll_delta_unchecked(apta.node(a), apta.node(b), params.finalprob);
            out.exact_loglik_delta += d.loglik;
            out.exact_param_delta += d.params;
        }
        apta.set_representative(a, b, out.log);
        const auto& children = apta.node(b).children;
        stack.push_back({a, children.begin(), children.end(), depth});
        return true;
    };

    auto fail = [&] {
        apta.rollback_partial(out.log);
        out.consistent = false;
        out.score = 0.0;
        return std::move(out);
    };

    if (!enter(q, merged, 0)) return fail();

    while (!stack.empty()) {
        Frame& f = stack.back();
        if (f.it == f.end) {
            stack.pop_back();
            continue;
        }
        const auto [symbol, raw_child] = *f.it;
        ++f.it;
        const int depth = f.depth;
        const NodeId receiver = apta.find(f.receiver);
        const NodeId child = apta.find(raw_child);
        const auto target = apta.resolve(receiver, symbol);
        if (!target) {
            if (params.redfixed && apta.node(receiver).color == Color::red) return fail();
            apta.add_child(receiver, symbol, raw_child, out.log);
        } else if (*target != child) {
            if (!enter(*target, child, depth + 1)) return fail();
        }
    }

    if (options.check) {
        const Verdict v = eval.evaluate(out.state, params);
        if (!v.consistent) return fail();
        out.score = v.score;
    }
    apta.commit(out.log);
    out.consistent = true;
    return out;
}

void undo_merge(Apta& apta, MergeLog& log) { apta.undo(log); }

bool is_sink(const Apta& apta, NodeId q, const EvalParams& params) {
    return params.sinkson && apta.node(q).path_count < params.sink_count;
}

std::vector<NodeId> candidate_blues(const Apta& apta, const EvalParams& params) {
    std::vector<NodeId> blues;
    for (NodeId b : apta.blue_states()) {
        if (!is_sink(apta, b, params)) blues.push_back(b);
    }
    if (blues.empty()) return blues;
    if (params.largestblue) {
        auto best = std::min_element(blues.begin(), blues.end(), [&](NodeId x, NodeId y) {
            const long cx = apta.node(x).path_count;
            const long cy = apta.node(y).path_count;
            return cx != cy ? cx > cy : x < y;
        });
        return {*best};
    }
    if (params.shallowfirst) {
        auto best = std::min_element(blues.begin(), blues.end(), [&](NodeId x, NodeId y) {
            const int dx = apta.node(x).depth;
            const int dy = apta.node(y).depth;
            return dx != dy ? dx < dy : x < y;
        });
        return {*best};
    }
    return blues;
}

std::vector<Candidate> candidate_order(const Apta& apta, const EvalParams& params) {
    const auto blues = candidate_blues(apta, params);
    std::vector<NodeId> reds = apta.red_states();
    std::sort(reds.begin(), reds.end());

    std::vector<Candidate> out;
    for (NodeId b : blues) {
        for (NodeId r : reds) out.push_back({b, r, false});
    }
    if (params.blueblue) {
        std::vector<NodeId> others;
        for (NodeId b : apta.blue_states()) {
            if (!is_sink(apta, b, params)) others.push_back(b);
        }
        for (NodeId b : blues) {
            for (NodeId o : others) {
                if (o != b) out.push_back({b, o, true});
            }
        }
    }
    return out;
}

StateMerger::StateMerger(const TraceSet& ts, const Evaluator& eval, EvalParams params, bool track_aic)
    : apta_(Apta::build(ts)), eval_(eval), params_(params), track_aic_(track_aic) {
    if (eval_.uses_reference_weights()) apta_.compute_reference_weights(params_.finalprob);
    aic_.push_back(track_aic_ ? 2.0 * static_cast<double>(model_size(apta_, params_.finalprob)) -
                                    2.0 * total_loglik(apta_, params_.finalprob)
                              : 0.0);
}

std::vector<StateMerger::ScoredMerge> StateMerger::consistent_merges() {
    std::vector<ScoredMerge> out;
    const MergeOptions opts{true, track_aic_};
    for (const Candidate& c : candidate_order(apta_, params_)) {
        MergeOutcome m = merge(apta_, c.target, c.blue, eval_, params_, opts);
        if (!m.consistent) continue;
        out.push_back({c, m.score, 2.0 * static_cast<double>(m.exact_param_delta) - 2.0 * m.exact_loglik_delta});
        undo_merge(apta_, m.log);
    }
    return out;
}

std::optional<StateMerger::ScoredMerge> StateMerger::best_merge() {
    std::optional<ScoredMerge> best;
    for (const auto& m : consistent_merges()) {
        if (!best || m.score > best->score || (m.score == best->score && m.candidate < best->candidate)) {
            best = m;
        }
    }
    return best;
}

MergeOutcome StateMerger::perform(const Candidate& c) {
    MergeOutcome m = merge(apta_, c.target, c.blue, eval_, params_, {true, track_aic_});
    if (!m.consistent) throw std::logic_error("performed merge is inconsistent");
    apta_.refresh_blue();
    history_.push_back({ActionKind::merge, c});
    aic_.push_back(aic_.back() -
                   (2.0 * static_cast<double>(m.exact_param_delta) - 2.0 * m.exact_loglik_delta));
    logs_.push_back(std::move(m.log));
    m.log = {};
    return m;
}

void StateMerger::extend(NodeId blue) {
    if (apta_.node(blue).color != Color::blue) throw std::logic_error("only blue states can be extended");
    apta_.color_red(blue);
    history_.push_back({ActionKind::extend, {blue, kNoNode, false}});
    aic_.push_back(aic_.back());
    logs_.emplace_back();
}

void StateMerger::apply(const Action& a) {
    if (a.kind == ActionKind::extend) {
        extend(a.candidate.blue);
    } else {
        perform(a.candidate);
    }
}

void StateMerger::undo_last() {
    if (history_.empty()) throw std::logic_error("nothing to undo");
    const Action a = history_.back();
    history_.pop_back();
    aic_.pop_back();
    MergeLog log = std::move(logs_.back());
    logs_.pop_back();
    if (a.kind == ActionKind::extend) {
        apta_.uncolor_red(a.candidate.blue);
    } else {
        undo_merge(apta_, log);
        apta_.refresh_blue();
    }
}

Pdfa finalize(const Apta& apta, const EvalParams& params) {
    Pdfa model;
    model.alphabet_size = apta.alphabet_size();
    model.finalprob = params.finalprob;
    model.start = 0;

    std::unordered_map<NodeId, StateId> ids;
    std::vector<NodeId> order{apta.find(apta.root())};
    ids.emplace(order.front(), 0);
    for (std::size_t i = 0; i < order.size(); ++i) {
        for (const auto& [a, raw] : apta.node(order[i]).children) {
            const NodeId t = apta.find(raw);
            if (ids.emplace(t, static_cast<StateId>(order.size())).second) order.push_back(t);
        }
    }

    model.states.reserve(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        const AptaNode& n = apta.node(order[i]);
        PdfaState s;
        s.id = static_cast<StateId>(i);
        s.path_count = n.path_count;
        s.final_count = n.final_count;
        s.sink = n.color != Color::red && is_sink(apta, n.id, params);
        for (const auto& [a, raw] : n.children) {
            s.transitions.push_back({a, ids.at(apta.find(raw)), n.count(a)});
        }
        model.states.push_back(std::move(s));
    }
    return model;
}

Pdfa greedy_run(const TraceSet& ts, const Evaluator& eval, const EvalParams& params, const Reporter& report) {
    StateMerger merger(ts, eval, params);
    while (merger.has_candidates()) {
        if (auto best = merger.best_merge()) {
            merger.perform(best->candidate);
            if (report) {
                report({ActionKind::merge, best->candidate.blue, best->candidate.target, best->score,
                        merger.apta().node(best->candidate.target).path_count});
            }
        } else if (params.extend) {
            const NodeId b = candidate_blues(merger.apta(), params).front();
            const long freq = merger.apta().node(b).path_count;
            merger.extend(b);
            if (report) report({ActionKind::extend, b, kNoNode, 0.0, freq});
        } else {
            break;
        }
    }
    return finalize(merger.apta(), params);
}

double model_aic(const Pdfa& model) {
    double ll = 0.0;
    long size = 0;
    for (const auto& s : model.states) {
        const long den = model.finalprob ? s.path_count : s.path_count - s.final_count;
        for (const auto& t : s.transitions) {
            if (t.count <= 0) continue;
            ++size;
            ll += static_cast<double>(t.count) * std::log(static_cast<double>(t.count) / static_cast<double>(den));
        }
        if (model.finalprob && s.final_count > 0) {
            ++size;
            ll += static_cast<double>(s.final_count) *
                  std::log(static_cast<double>(s.final_count) / static_cast<double>(den));
        }
    }
    return 2.0 * static_cast<double>(size) - 2.0 * ll;
}

}  // namespace pdfa
