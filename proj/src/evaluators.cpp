#include "pdfa/evaluators.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace pdfa {

PooledCounts pool_counts(std::span<const SymbolPair> counts, long threshold) {
    PooledCounts out;
    for (const auto& c : counts) {
        const bool rare_left = c.left < threshold;
        const bool rare_right = c.right < threshold;
        if (rare_right) {
            out.pool1_left += c.left;
            out.pool1_right += c.right;
            out.has_pool1 = true;
        }
        if (rare_left) {
            out.pool2_left += c.left;
            out.pool2_right += c.right;
            out.has_pool2 = true;
        }
        if (!rare_left && !rare_right) out.survivors.push_back(c);
    }
    return out;
}

PooledCounts pool_counts(std::span<const long> left, std::span<const long> right, long threshold) {
    if (left.size() != right.size()) throw std::invalid_argument("count vectors differ in length");
    std::vector<SymbolPair> joint;
    joint.reserve(left.size());
    for (std::size_t i = 0; i < left.size(); ++i) {
        joint.push_back({static_cast<Symbol>(i), left[i], right[i]});
    }
    return pool_counts(joint, threshold);
}

std::vector<SymbolPair> joint_counts(const AptaNode& left, const AptaNode& right) {
    std::vector<SymbolPair> out;
    auto l = left.symbol_counts.begin();
    auto r = right.symbol_counts.begin();
    while (l != left.symbol_counts.end() || r != right.symbol_counts.end()) {
        if (r == right.symbol_counts.end() || (l != left.symbol_counts.end() && l->first < r->first)) {
            out.push_back({l->first, l->second, 0});
            ++l;
        } else if (l == left.symbol_counts.end() || r->first < l->first) {
            out.push_back({r->first, 0, r->second});
            ++r;
        } else {
            out.push_back({l->first, l->second, r->second});
            ++l;
            ++r;
        }
    }
    return out;
}

double hoeffding_bound(double alpha, double n1, double n2) {
    return std::sqrt(0.5 * std::log(2.0 / alpha)) * (1.0 / std::sqrt(n1) + 1.0 / std::sqrt(n2));
}

PairTest alergia_pair_test(const AptaNode& left, const AptaNode& right, const EvalParams& params) {
    PairTest result;
    if (left.path_count < params.state_count || right.path_count < params.state_count) {
        result.skipped = true;
        return result;
    }

    const auto joint = joint_counts(left, right);
    const PooledCounts pooled = pool_counts(joint, params.symbol_count);

    std::vector<std::pair<long, long>> bins;
    bins.reserve(pooled.survivors.size() + 3);
    for (const auto& s : pooled.survivors) bins.emplace_back(s.left, s.right);
    if (pooled.has_pool1) bins.emplace_back(pooled.pool1_left, pooled.pool1_right);
    if (pooled.has_pool2) bins.emplace_back(pooled.pool2_left, pooled.pool2_right);
    if (params.finalprob) bins.emplace_back(left.final_count, right.final_count);

    const double c = params.correction;
    const double nbins = static_cast<double>(bins.size());
    const double n_left =
        static_cast<double>(params.finalprob ? left.path_count : left.outgoing_count()) + c * nbins;
    const double n_right =
        static_cast<double>(params.finalprob ? right.path_count : right.outgoing_count()) + c * nbins;
    if (bins.empty() || n_left <= 0.0 || n_right <= 0.0) {
        result.skipped = true;
        return result;
    }

    const double bound = hoeffding_bound(params.confidence_bound, n_left, n_right);
    for (const auto& [x, y] : bins) {
        const double diff =
            std::abs((static_cast<double>(x) + c) / n_left - (static_cast<double>(y) + c) / n_right);
        if (!(diff < bound)) result.consistent = false;
        result.margin += bound - diff;
    }
    return result;
}

double state_loglik(long total, long final, const SymbolCounts& counts, bool finalprob) {
    const long den = finalprob ? total : total - final;
    if (den <= 0) return 0.0;
    const double n = static_cast<double>(den);
    double ll = 0.0;
    for (const auto& [a, c] : counts) {
        if (c > 0) ll += static_cast<double>(c) * std::log(static_cast<double>(c) / n);
    }
    if (finalprob && final > 0) ll += static_cast<double>(final) * std::log(static_cast<double>(final) / n);
    return ll;
}

double state_loglik(const AptaNode& n, bool finalprob) {
    return state_loglik(n.path_count, n.final_count, n.symbol_counts, finalprob);
}

LoglikDelta ll_delta_unchecked(const AptaNode& left, const AptaNode& right, bool finalprob) {
    SymbolCounts merged = left.symbol_counts;
    long common = 0;
    for (const auto& [a, c] : right.symbol_counts) {
        auto [it, inserted] = merged.try_emplace(a, 0);
        if (!inserted && it->second > 0 && c > 0) ++common;
        it->second += c;
    }
    if (finalprob && left.final_count > 0 && right.final_count > 0) ++common;
    const double after = state_loglik(left.path_count + right.path_count, left.final_count + right.final_count,
                                      merged, finalprob);
    return {state_loglik(left, finalprob) + state_loglik(right, finalprob) - after, common};
}

LoglikDelta ll_delta(const AptaNode& left, const AptaNode& right, const EvalParams& params) {
    if (left.path_count < params.state_count || right.path_count < params.state_count) return {};
    return ll_delta_unchecked(left, right, params.finalprob);
}

double chi2_sf(double v, int df) {
    if (df < 1) throw std::domain_error("chi2_sf: degrees of freedom must be >= 1");
    if (!(v > 0.0)) return 1.0;
    if (std::isinf(v)) return 0.0;
    return boost::math::gamma_q(0.5 * df, 0.5 * v);
}

Verdict likelihood_ratio_test(double loglik_delta, long param_delta, double alpha) {
    const double v = std::max(0.0, 2.0 * loglik_delta);
    if (param_delta <= 0) return {v <= 1e-12, 0.0};
    const double p = chi2_sf(v, static_cast<int>(param_delta));
    return {p > alpha, 1.0 - p};
}

Verdict aic_test(double loglik_delta, long param_delta) {
    const double value = 2.0 * static_cast<double>(param_delta) - 2.0 * loglik_delta;
    return {value > 0.0, value};
}

Verdict mdi_test(double numerator, long param_delta, double alpha) {
    if (param_delta < 1) return {false, 0.0};
    const double value = numerator / static_cast<double>(param_delta);
    return {value < alpha, alpha - value};
}

double mdi_pair_numerator(const AptaNode& left, const AptaNode& right, bool finalprob) {
    const long den_l = finalprob ? left.path_count : left.outgoing_count();
    const long den_r = finalprob ? right.path_count : right.outgoing_count();
    const double den_m = static_cast<double>(den_l + den_r);
    double sum = 0.0;

    auto shift = [&](const AptaNode& n, long den) {
        double s = 0.0;
        for (const auto& [a, w] : n.ref_weight) {
            if (w == 0.0) continue;
            const double own = static_cast<double>(n.count(a)) / static_cast<double>(den);
            const double merged = static_cast<double>(left.count(a) + right.count(a)) / den_m;
            s += w * (std::log(own) - std::log(merged));
        }
        if (finalprob && n.ref_final_weight != 0.0) {
            const double own = static_cast<double>(n.final_count) / static_cast<double>(den);
            const double merged = static_cast<double>(left.final_count + right.final_count) / den_m;
            s += n.ref_final_weight * (std::log(own) - std::log(merged));
        }
        return s;
    };
    if (den_l > 0) sum += shift(left, den_l);
    if (den_r > 0) sum += shift(right, den_r);
    return sum;
}

double total_loglik(const Apta& apta, bool finalprob) {
    double ll = 0.0;
    for (const auto& n : apta.nodes()) {
        if (n.representative == kNoNode) ll += state_loglik(n, finalprob);
    }
    return ll;
}

long model_size(const Apta& apta, bool finalprob) {
    long size = 0;
    for (const auto& n : apta.nodes()) {
        if (n.representative != kNoNode) continue;
        for (const auto& [a, c] : n.symbol_counts) {
            if (c > 0) ++size;
        }
        if (finalprob && n.final_count > 0) ++size;
    }
    return size;
}

bool AlergiaEvaluator::pair_consistent(const AptaNode& left, const AptaNode& right, const EvalParams& params,
                                       EvalState& state) const {
    const PairTest t = alergia_pair_test(left, right, params);
    if (t.skipped) {
        ++state.pairs_skipped;
        return true;
    }
    ++state.pairs_tested;
    state.score += t.margin;
    if (!t.consistent) state.inconsistent = true;
    return t.consistent;
}

Verdict AlergiaEvaluator::evaluate(const EvalState& state, const EvalParams&) const {
    return {!state.inconsistent, state.score};
}

bool LikelihoodRatioEvaluator::pair_consistent(const AptaNode& left, const AptaNode& right,
                                               const EvalParams& params, EvalState& state) const {
    if (left.path_count < params.state_count || right.path_count < params.state_count) {
        ++state.pairs_skipped;
        return true;
    }
    const LoglikDelta d = ll_delta_unchecked(left, right, params.finalprob);
    ++state.pairs_tested;
    state.loglik_delta += d.loglik;
    state.param_delta += d.params;
    return true;
}

Verdict LikelihoodRatioEvaluator::evaluate(const EvalState& state, const EvalParams& params) const {
    if (state.inconsistent) return {false, 0.0};
    return likelihood_ratio_test(state.loglik_delta, state.param_delta, params.confidence_bound);
}

Verdict AicEvaluator::evaluate(const EvalState& state, const EvalParams&) const {
    if (state.inconsistent) return {false, 0.0};
    return aic_test(state.loglik_delta, state.param_delta);
}

bool MdiEvaluator::pair_consistent(const AptaNode& left, const AptaNode& right, const EvalParams& params,
                                   EvalState& state) const {
    if (left.path_count < params.state_count || right.path_count < params.state_count) {
        ++state.pairs_skipped;
        return true;
    }
    LikelihoodRatioEvaluator::pair_consistent(left, right, params, state);
    state.mdi_numerator += mdi_pair_numerator(left, right, params.finalprob);
    return true;
}

Verdict MdiEvaluator::evaluate(const EvalState& state, const EvalParams& params) const {
    if (state.inconsistent) return {false, 0.0};
    return mdi_test(state.mdi_numerator, state.param_delta, params.confidence_bound);
}

namespace {

struct Registry {
    std::mutex mutex;
    std::map<std::string, EvaluatorFactory, std::less<>> factories{
        {"alergia", [] { return std::make_unique<AlergiaEvaluator>(); }},
        {"likelihoodratio", [] { return std::make_unique<LikelihoodRatioEvaluator>(); }},
        {"mdi", [] { return std::make_unique<MdiEvaluator>(); }},
        {"aic", [] { return std::make_unique<AicEvaluator>(); }},
    };
};

Registry& registry() {
    static Registry r;
    return r;
}

}  // namespace

std::unique_ptr<Evaluator> make_evaluator(std::string_view name) {
    auto& r = registry();
    std::lock_guard lock(r.mutex);
    auto it = r.factories.find(name);
    if (it == r.factories.end()) throw std::invalid_argument("unknown heuristic: " + std::string(name));
    return it->second();
}

void register_evaluator(std::string name, EvaluatorFactory factory) {
    auto& r = registry();
    std::lock_guard lock(r.mutex);
    r.factories[std::move(name)] = std::move(factory);
}

std::vector<std::string> evaluator_names() {
    auto& r = registry();
    std::lock_guard lock(r.mutex);
    std::vector<std::string> out;
    for (const auto& [name, f] : r.factories) out.push_back(name);
    return out;
}

}  // namespace pdfa
