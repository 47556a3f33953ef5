#include "pdfa/inference.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace pdfa {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

long denominator(const Pdfa& m, const PdfaState& s) {
    return m.finalprob ? s.path_count : s.path_count - s.final_count;
}

double log_ratio(double num, double den) {
    if (!(den > 0.0) || !(num > 0.0)) return kNegInf;
    return std::log(num / den);
}

}  // namespace

PredictionRecord trace_scores(const Pdfa& model, std::span<const Symbol> trace, double correction) {
    PredictionRecord rec;
    rec.states.reserve(trace.size() + 1);
    rec.scores.reserve(trace.size() + 1);

    StateId q = model.start;
    bool alive = true;
    for (Symbol a : trace) {
        if (!alive) {
            rec.states.push_back(kNoState);
            rec.scores.push_back(kNegInf);
            continue;
        }
        const PdfaTransition* t = nullptr;
        if (a < 0 || a >= model.alphabet_size) {
            rec.unseen_symbol = true;
        } else {
            t = model.transition(q, a);
        }
        if (t == nullptr) {
            alive = false;
            rec.states.push_back(kNoState);
            rec.scores.push_back(kNegInf);
            continue;
        }
        const PdfaState& s = model.state(q);
        const double support = static_cast<double>(s.transitions.size() + (model.finalprob ? 1 : 0));
        rec.scores.push_back(log_ratio(static_cast<double>(t->count) + correction,
                                       static_cast<double>(denominator(model, s)) + correction * support));
        q = t->target;
        rec.states.push_back(q);
    }
    rec.states.push_back(alive ? q : kNoState);
    if (model.finalprob) {
        if (alive) {
            const PdfaState& s = model.state(q);
            const double support = static_cast<double>(s.transitions.size() + 1);
            rec.scores.push_back(log_ratio(static_cast<double>(s.final_count) + correction,
                                           static_cast<double>(denominator(model, s)) + correction * support));
        } else {
            rec.scores.push_back(kNegInf);
        }
    }
    return rec;
}

double trace_probability(const Pdfa& model, std::span<const Symbol> trace) {
    const PredictionRecord rec = trace_scores(model, trace, 0.0);
    return std::exp(std::accumulate(rec.scores.begin(), rec.scores.end(), 0.0));
}

double smoothed_probability(const Pdfa& model, std::span<const Symbol> trace, double correction) {
    const double slots = static_cast<double>(model.alphabet_size + (model.finalprob ? 1 : 0));
    double logp = 0.0;
    StateId q = model.start;
    for (Symbol a : trace) {
        const PdfaState& s = model.state(q);
        const double den = static_cast<double>(denominator(model, s)) + correction * slots;
        const PdfaTransition* t = (a >= 0 && a < model.alphabet_size) ? model.transition(q, a) : nullptr;
        if (t != nullptr) {
            logp += log_ratio(static_cast<double>(t->count) + correction, den);
            q = t->target;
        } else {
            logp += log_ratio(correction, den);
        }
    }
    if (model.finalprob) {
        const PdfaState& s = model.state(q);
        logp += log_ratio(static_cast<double>(s.final_count) + correction,
                          static_cast<double>(denominator(model, s)) + correction * slots);
    }
    return std::exp(logp);
}

double perplexity(std::span<const double> candidate_probs, std::span<const double> target_probs) {
    if (candidate_probs.size() != target_probs.size()) {
        throw std::invalid_argument("perplexity: probability lists differ in length");
    }
    if (candidate_probs.empty()) throw std::invalid_argument("perplexity: empty test set");
    const double c_sum = std::accumulate(candidate_probs.begin(), candidate_probs.end(), 0.0);
    const double t_sum = std::accumulate(target_probs.begin(), target_probs.end(), 0.0);
    if (!(t_sum > 0.0)) throw std::domain_error("perplexity: target probabilities sum to zero");
    double cross = 0.0;
    for (std::size_t i = 0; i < candidate_probs.size(); ++i) {
        if (!(candidate_probs[i] > 0.0)) throw std::domain_error("perplexity: candidate probability is zero");
        const double pt = target_probs[i] / t_sum;
        if (pt > 0.0) cross += pt * std::log2(candidate_probs[i] / c_sum);
    }
    return std::exp2(-cross);
}

AnomalyVerdict is_anomaly(const Pdfa& model, std::span<const Symbol> trace) {
    StateId q = model.start;
    for (Symbol a : trace) {
        if (a < 0 || a >= model.alphabet_size) return {true, AnomalyReason::unseen_symbol};
        const PdfaTransition* t = model.transition(q, a);
        if (t == nullptr) return {true, AnomalyReason::missing_transition};
        q = t->target;
    }
    if (model.state(q).final_count == 0) return {true, AnomalyReason::zero_final};
    return {};
}

std::string_view to_string(AnomalyReason r) {
    switch (r) {
        case AnomalyReason::none: return "none";
        case AnomalyReason::missing_transition: return "missing_transition";
        case AnomalyReason::zero_final: return "zero_final";
        case AnomalyReason::unseen_symbol: return "unseen_symbol";
    }
    return "unknown";
}

}  // namespace pdfa
