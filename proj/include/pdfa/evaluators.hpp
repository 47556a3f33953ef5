#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pdfa/apta.hpp"
#include "pdfa/params.hpp"

namespace pdfa {

/// Running aggregates for one candidate merge. A fresh value is used per merge attempt.
struct EvalState {
    double score = 0.0;          // Alergia: summed margins
    double loglik_delta = 0.0;   // LL(before) - LL(after) over tested pairs
    long param_delta = 0;        // transitions removed over tested pairs
    double mdi_numerator = 0.0;  // weighted log-probability shift against the prefix tree
    int pairs_tested = 0;
    int pairs_skipped = 0;
    bool inconsistent = false;
};

struct SymbolPair {
    Symbol symbol;
    long left;
    long right;
};

struct PooledCounts {
    long pool1_left = 0;
    long pool1_right = 0;
    long pool2_left = 0;
    long pool2_right = 0;
    bool has_pool1 = false;
    bool has_pool2 = false;
    std::vector<SymbolPair> survivors;
};

/* Two-pool frequency pooling. pool1 collects symbols infrequent (< threshold)
 * in the right state, pool2 those infrequent in the left state; symbols
 * infrequent in both feed both pools. Symbols frequent in both survive. */
PooledCounts pool_counts(std::span<const SymbolPair> counts, long threshold);
PooledCounts pool_counts(std::span<const long> left, std::span<const long> right, long threshold);

/// Union of the symbol supports of two states, in symbol order.
std::vector<SymbolPair> joint_counts(const AptaNode& left, const AptaNode& right);

/// sqrt(1/2 ln(2/alpha)) * (1/sqrt(n1) + 1/sqrt(n2))
double hoeffding_bound(double alpha, double n1, double n2);

struct PairTest {
    bool consistent = true;
    double margin = 0.0;
    bool skipped = false;
};

/// Hoeffding test over pooled, Laplace-corrected bins of one state pair.
PairTest alergia_pair_test(const AptaNode& left, const AptaNode& right, const EvalParams& params);

/// Sum of c*ln(c/n) over the state's symbols (and final slot with finalprob); 0*ln0 = 0.
double state_loglik(const AptaNode& n, bool finalprob);
double state_loglik(long total, long final, const SymbolCounts& counts, bool finalprob);

struct LoglikDelta {
    double loglik = 0.0;
    long params = 0;
};

/// Likelihood lost and parameters removed by combining two states' counts.
LoglikDelta ll_delta(const AptaNode& left, const AptaNode& right, const EvalParams& params);
LoglikDelta ll_delta_unchecked(const AptaNode& left, const AptaNode& right, bool finalprob);

/// Upper tail of the chi-squared distribution. Throws std::domain_error for df < 1.
double chi2_sf(double v, int df);

struct Verdict {
    bool consistent = false;
    double score = 0.0;
};

Verdict likelihood_ratio_test(double loglik_delta, long param_delta, double alpha);
Verdict aic_test(double loglik_delta, long param_delta);
Verdict mdi_test(double numerator, long param_delta, double alpha);

/// Weighted log-probability shift of two classes against their merged distribution.
double mdi_pair_numerator(const AptaNode& left, const AptaNode& right, bool finalprob);

/// Log-likelihood and transition count of the current model (all representatives).
double total_loglik(const Apta& apta, bool finalprob);
long model_size(const Apta& apta, bool finalprob);

class Evaluator {
public:
    virtual ~Evaluator() = default;

    virtual std::string_view name() const = 0;

    /// Called for every determinization pair before their counts are combined.
    virtual bool pair_consistent(const AptaNode& left, const AptaNode& right, const EvalParams& params,
                                 EvalState& state) const = 0;

    virtual Verdict evaluate(const EvalState& state, const EvalParams& params) const = 0;

    virtual bool uses_reference_weights() const { return false; }
};

class AlergiaEvaluator : public Evaluator {
public:
    std::string_view name() const override { return "alergia"; }
    bool pair_consistent(const AptaNode& left, const AptaNode& right, const EvalParams& params,
                         EvalState& state) const override;
    Verdict evaluate(const EvalState& state, const EvalParams& params) const override;
};

class LikelihoodRatioEvaluator : public Evaluator {
public:
    std::string_view name() const override { return "likelihoodratio"; }
    bool pair_consistent(const AptaNode& left, const AptaNode& right, const EvalParams& params,
                         EvalState& state) const override;
    Verdict evaluate(const EvalState& state, const EvalParams& params) const override;
};

class AicEvaluator : public LikelihoodRatioEvaluator {
public:
    std::string_view name() const override { return "aic"; }
    Verdict evaluate(const EvalState& state, const EvalParams& params) const override;
};

class MdiEvaluator : public LikelihoodRatioEvaluator {
public:
    std::string_view name() const override { return "mdi"; }
    bool pair_consistent(const AptaNode& left, const AptaNode& right, const EvalParams& params,
                         EvalState& state) const override;
    Verdict evaluate(const EvalState& state, const EvalParams& params) const override;
    bool uses_reference_weights() const override { return true; }
};

using EvaluatorFactory = std::function<std::unique_ptr<Evaluator>()>;

/// Registry keyed by heuristic name. Throws std::invalid_argument for unknown names.
std::unique_ptr<Evaluator> make_evaluator(std::string_view name);
void register_evaluator(std::string name, EvaluatorFactory factory);
std::vector<std::string> evaluator_names();

}  // namespace pdfa
