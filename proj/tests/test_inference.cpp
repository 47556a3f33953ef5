#include <limits>

#include "doctest.h"
#include "pdfa/inference.hpp"
#include "pdfa/merger.hpp"
#include "support.hpp"

using namespace pdfa;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Pdfa random_small_model(std::mt19937_64& rng, bool finalprob) {
    Pdfa m = testsupport::random_target(rng, 1 + testsupport::below(rng, 4), 2 + testsupport::below(rng, 2), 37);
    m.finalprob = finalprob;
    return m;
}

}  // namespace

TEST_CASE("predict output of the example model") {
    const Pdfa m = testsupport::example_model();
    REQUIRE_NOTHROW(m.validate());
    const PredictionRecord r = trace_scores(m, std::vector<Symbol>{0, 1, 0, 1, 0}, 0.0);
    CHECK(r.states == std::vector<StateId>{1, 2, 1, 2, 1, 1});
    const std::vector<double> expected{0, -0.510826, -1.60944, -0.510826, -1.60944};
    REQUIRE(r.scores.size() == 6);
    for (std::size_t i = 0; i < expected.size(); ++i) CHECK(r.scores[i] == doctest::Approx(expected[i]).epsilon(1e-5));
    CHECK(r.scores[5] == -kInf);
    CHECK_FALSE(r.unseen_symbol);
}

TEST_CASE("empty trace on an always-stopping model") {
    Pdfa m;
    m.finalprob = true;
    m.states = {PdfaState{0, 5, 5, false, {}}};
    const PredictionRecord r = trace_scores(m, std::vector<Symbol>{}, 0.0);
    CHECK(r.scores == std::vector<double>{0.0});
    CHECK(r.states == std::vector<StateId>{0});
}

TEST_CASE("score list length") {
    Pdfa m = testsupport::example_model();
    CHECK(trace_scores(m, std::vector<Symbol>{0, 1}, 1.0).scores.size() == 3);
    m.finalprob = false;
    CHECK(trace_scores(m, std::vector<Symbol>{0, 1}, 1.0).scores.size() == 2);
}

TEST_CASE("missing transitions and unseen symbols") {
    const Pdfa m = testsupport::example_model();
    const PredictionRecord miss = trace_scores(m, std::vector<Symbol>{1, 0}, 0.0);
    CHECK(miss.states == std::vector<StateId>{kNoState, kNoState, kNoState});
    CHECK(miss.scores == std::vector<double>{-kInf, -kInf, -kInf});
    const PredictionRecord unseen = trace_scores(m, std::vector<Symbol>{0, 7}, 1.0);
    CHECK(unseen.unseen_symbol);
    CHECK(unseen.scores[1] == -kInf);
}

TEST_CASE("smoothing uses the state's own support") {
    const Pdfa m = testsupport::example_model();
    const PredictionRecord r = trace_scores(m, std::vector<Symbol>{0, 1}, 1.0);
    CHECK(r.scores[0] == doctest::Approx(std::log(21.0 / 22.0)));
    CHECK(r.scores[1] == doctest::Approx(std::log(31.0 / 53.0)));
    CHECK(r.scores[2] == doctest::Approx(std::log(21.0 / 53.0)));
}

TEST_CASE("unsmoothed prefix tree gives empirical log-probabilities") {
    std::mt19937_64 rng(67);
    for (int i = 0; i < 40; ++i) {
        const TraceSet ts = testsupport::random_traceset(rng, 50, 3, 6);
        if (ts.traces.empty()) continue;
        EvalParams p;
        p.finalprob = true;
        const Pdfa model = finalize(Apta::build(ts), p);
        std::map<std::vector<Symbol>, int> occurrences;
        for (const auto& t : ts.traces) ++occurrences[t.symbols];
        for (const auto& [s, n] : occurrences) {
            const PredictionRecord r = trace_scores(model, s, 0.0);
            double total = 0.0;
            for (double x : r.scores) total += x;
            CHECK(total ==
                  doctest::Approx(std::log(static_cast<double>(n) / static_cast<double>(ts.traces.size()))).epsilon(1e-12));
        }
    }
}

TEST_CASE("trace probabilities match the count product exhaustively") {
    std::mt19937_64 rng(71);
    for (int i = 0; i < 40; ++i) {
        const Pdfa m = random_small_model(rng, i % 2 == 0);
        for (const auto& s : testsupport::all_strings(m.alphabet_size, 6)) {
            const double oracle = testsupport::def1_probability(m, s);
            CHECK(std::abs(trace_probability(m, s) - oracle) <= 1e-12);
        }
    }
}

TEST_CASE("finite-support models define a distribution") {
    std::mt19937_64 rng(73);
    for (int i = 0; i < 20; ++i) {
        TraceSet ts = testsupport::random_traceset(rng, 30, 3, 5);
        ts.traces.push_back(Trace{1, {}});
        EvalParams p;
        p.finalprob = true;
        const Pdfa model = finalize(Apta::build(ts), p);
        double total = 0.0;
        for (const auto& s : testsupport::all_strings(ts.alphabet_size, 5)) total += trace_probability(model, s);
        CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("full-alphabet smoothing is a sub-distribution that never vanishes") {
    std::mt19937_64 rng(79);
    for (int i = 0; i < 20; ++i) {
        const Pdfa m = random_small_model(rng, true);
        double total = 0.0;
        for (const auto& s : testsupport::all_strings(m.alphabet_size, 5)) {
            const double p = smoothed_probability(m, s, 1.0);
            CHECK(p > 0.0);
            total += p;
        }
        CHECK(total <= 1.0 + 1e-12);
        CHECK(total > 0.3);
    }
    // with zero correction it is the plain model probability
    const Pdfa example = testsupport::example_model();
    const std::vector<Symbol> s{0, 1, 0, 1};
    CHECK(smoothed_probability(example, s, 0.0) == doctest::Approx(trace_probability(example, s)).epsilon(1e-12));
}

TEST_CASE("perplexity") {
    CHECK(perplexity(std::vector<double>{1.0}, std::vector<double>{1.0}) == doctest::Approx(1.0));
    const double two = perplexity(std::vector<double>{0.25, 0.75}, std::vector<double>{0.5, 0.5});
    CHECK(two == doctest::Approx(std::exp2(-(0.5 * std::log2(0.25) + 0.5 * std::log2(0.75)))).epsilon(1e-12));
    CHECK(two == doctest::Approx(2.3094).epsilon(1e-4));
    CHECK_THROWS(perplexity(std::vector<double>{0.0, 1.0}, std::vector<double>{0.5, 0.5}));
    CHECK_THROWS(perplexity(std::vector<double>{1.0}, std::vector<double>{0.5, 0.5}));

    // Gibbs: the target itself scores lowest
    std::mt19937_64 rng(83);
    std::vector<double> target(20);
    for (auto& x : target) x = 0.01 + testsupport::unit(rng);
    const double best = perplexity(target, target);
    for (int k = 0; k < 50; ++k) {
        std::vector<double> cand = target;
        for (auto& x : cand) x *= std::exp(0.3 * (testsupport::unit(rng) - 0.5));
        CHECK(perplexity(cand, target) >= best - 1e-12);
    }
}

TEST_CASE("anomaly verdicts") {
    const Pdfa m = testsupport::example_model();
    CHECK(is_anomaly(m, std::vector<Symbol>{0, 1}) == AnomalyVerdict{});
    CHECK(is_anomaly(m, std::vector<Symbol>{0, 1, 0}) == AnomalyVerdict{true, AnomalyReason::zero_final});
    CHECK(is_anomaly(m, std::vector<Symbol>{1}) == AnomalyVerdict{true, AnomalyReason::missing_transition});
    CHECK(is_anomaly(m, std::vector<Symbol>{0, 2}) == AnomalyVerdict{true, AnomalyReason::unseen_symbol});
    CHECK(to_string(AnomalyReason::zero_final) == "zero_final");

    std::mt19937_64 rng(89);
    const TraceSet ts = testsupport::random_traceset(rng, 50, 4, 7);
    const Pdfa tree = finalize(Apta::build(ts), EvalParams{});
    for (const auto& t : ts.traces) CHECK_FALSE(is_anomaly(tree, t.symbols).anomalous);
}

TEST_CASE("adding a transition never creates an anomaly") {
    std::mt19937_64 rng(97);
    for (int i = 0; i < 30; ++i) {
        const Pdfa m = random_small_model(rng, true);
        Pdfa bigger = m;
        bool added = false;
        for (auto& st : bigger.states) {
            for (Symbol a = 0; a < bigger.alphabet_size && !added; ++a) {
                if (bigger.transition(st.id, a) == nullptr) {
                    st.transitions.push_back({a, testsupport::below(rng, static_cast<int>(bigger.states.size())), 3});
                    std::sort(st.transitions.begin(), st.transitions.end(),
                              [](const auto& x, const auto& y) { return x.symbol < y.symbol; });
                    st.path_count += 3;
                    added = true;
                }
            }
        }
        for (const auto& s : testsupport::all_strings(m.alphabet_size, 5)) {
            if (!is_anomaly(m, s).anomalous) CHECK_FALSE(is_anomaly(bigger, s).anomalous);
        }
    }
}
