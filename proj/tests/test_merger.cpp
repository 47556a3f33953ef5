#include <set>

#include "doctest.h"
#include "pdfa/merger.hpp"
#include "support.hpp"

using namespace pdfa;

namespace {

TraceSet small_sample() {
    return parse_abbadingo(
        "6 2\n"
        "1 2 0 1\n"
        "1 3 0 0 1\n"
        "1 5 0 0 0 1 1\n"
        "1 5 0 0 0 1 1\n"
        "1 5 0 0 0 1 1\n"
        "1 4 0 1 0 1\n");
}

const AlergiaEvaluator kAlergia;
const MergeOptions kUnchecked{false, false};

NodeId pick(std::mt19937_64& rng, const std::vector<NodeId>& v) {
    return v[static_cast<std::size_t>(testsupport::below(rng, static_cast<int>(v.size())))];
}

}  // namespace

TEST_CASE("red-blue state after merging aa into a") {
    Apta apta = Apta::build(small_sample());
    apta.color_red(1);
    const auto before = apta.structural_hash();
    EvalParams p;
    p.largestblue = false;

    MergeOutcome m1 = merge(apta, 1, 2, kAlergia, p, kUnchecked);
    REQUIRE(m1.consistent);
    apta.refresh_blue();
    CHECK(apta.blue_states() == std::vector<NodeId>{3});
    CHECK(candidate_order(apta, p) == std::vector<Candidate>{{3, 0, false}, {3, 1, false}});

    MergeOutcome m2 = merge(apta, 1, 3, kAlergia, p, kUnchecked);
    REQUIRE(m2.consistent);
    undo_merge(apta, m2.log);
    undo_merge(apta, m1.log);
    apta.refresh_blue();
    CHECK(apta.structural_hash() == before);
}

TEST_CASE("undo order is enforced") {
    Apta apta = Apta::build(small_sample());
    MergeOutcome m1 = merge(apta, 1, 2, kAlergia, EvalParams{}, kUnchecked);
    MergeOutcome m2 = merge(apta, 1, 3, kAlergia, EvalParams{}, kUnchecked);
    REQUIRE(m1.consistent);
    REQUIRE(m2.consistent);
    CHECK_THROWS_AS(undo_merge(apta, m1.log), std::logic_error);
    MergeLog empty;
    CHECK_NOTHROW(undo_merge(apta, empty));
}

TEST_CASE("merging two childless leaves does not recurse") {
    Apta apta = Apta::build(parse_abbadingo("2 2\n1 1 0\n1 1 1\n"));
    MergeOutcome m = merge(apta, 1, 2, kAlergia, EvalParams{}, kUnchecked);
    CHECK(m.consistent);
    CHECK(m.log.actions.size() == 1);
}

TEST_CASE("merge followed by undo restores the tree exactly") {
    std::mt19937_64 rng(101);
    int performed = 0;
    for (int i = 0; i < 1000; ++i) {
        const TraceSet ts = testsupport::random_traceset(rng, 25, 3, 7);
        Apta apta = Apta::build(ts);
        if (apta.size() < 2) continue;
        // a few committed merges first so the pair may involve non-trivial classes
        std::vector<MergeOutcome> done;
        for (int k = 0; k < testsupport::below(rng, 3); ++k) {
            const auto reps = apta.representatives();
            const NodeId a = pick(rng, reps), b = pick(rng, reps);
            if (a != b) done.push_back(merge(apta, a, b, kAlergia, EvalParams{}, kUnchecked));
        }
        const auto reps = apta.representatives();
        const NodeId a = pick(rng, reps), b = pick(rng, reps);
        if (a == b) continue;
        const auto before = apta.structural_hash();
        MergeOutcome m = merge(apta, a, b, kAlergia, EvalParams{}, kUnchecked);
        if (m.consistent) ++performed;
        undo_merge(apta, m.log);
        CHECK(apta.structural_hash() == before);
    }
    CHECK(performed > 500);
}

TEST_CASE("inconsistent merges leave the tree untouched") {
    std::mt19937_64 rng(7);
    EvalParams p;
    p.confidence_bound = 0.9;
    int failures = 0;
    for (int i = 0; i < 500; ++i) {
        const Pdfa target = testsupport::random_target(rng, 4, 3);
        TraceSet ts{3, {}};
        for (int k = 0; k < 300; ++k) ts.traces.push_back(testsupport::sample_trace(target, rng, 6));
        Apta apta = Apta::build(ts);
        const auto reps = apta.representatives();
        if (reps.size() < 2) continue;
        const NodeId a = pick(rng, reps), b = pick(rng, reps);
        if (a == b) continue;
        const auto before = apta.structural_hash();
        MergeOutcome m = merge(apta, a, b, kAlergia, p);
        if (!m.consistent) {
            ++failures;
            CHECK(m.log.empty());
            CHECK(apta.structural_hash() == before);
        }
    }
    CHECK(failures > 20);
}

TEST_CASE("candidate order") {
    EvalParams p;
    SUBCASE("single blue, single red") {
        const Apta apta = Apta::build(parse_abbadingo("1 1\n1 1 0\n"));
        CHECK(candidate_order(apta, p) == std::vector<Candidate>{{1, 0, false}});
    }
    SUBCASE("largestblue keeps the most frequent blue") {
        std::string text = "17 2\n";
        for (int i = 0; i < 10; ++i) text += "1 1 1\n";
        for (int i = 0; i < 7; ++i) text += "1 1 0\n";
        const Apta apta = Apta::build(parse_abbadingo(text));
        CHECK(apta.node(1).path_count == 7);
        CHECK(apta.node(2).path_count == 10);
        CHECK(candidate_order(apta, p) == std::vector<Candidate>{{2, 0, false}});
        p.largestblue = false;
        CHECK(candidate_order(apta, p) == std::vector<Candidate>{{1, 0, false}, {2, 0, false}});
        p.blueblue = true;
        CHECK(candidate_order(apta, p) ==
              std::vector<Candidate>{{1, 0, false}, {2, 0, false}, {1, 2, true}, {2, 1, true}});
    }
    SUBCASE("ties go to the smallest id") {
        const Apta apta = Apta::build(parse_abbadingo("2 2\n1 1 1\n1 1 0\n"));
        CHECK(candidate_order(apta, p) == std::vector<Candidate>{{1, 0, false}});
    }
    SUBCASE("shallowfirst") {
        Apta apta = Apta::build(parse_abbadingo("3 2\n1 3 0 0 0\n1 3 0 0 0\n1 1 1\n"));
        apta.color_red(1);  // blues are now "aa" (depth 2) and "b" (depth 1)
        p.largestblue = false;
        p.shallowfirst = true;
        CHECK(candidate_blues(apta, p) == std::vector<NodeId>{2});
    }
    SUBCASE("sinks are not candidates") {
        std::string text = "30 2\n";
        for (int i = 0; i < 26; ++i) text += "1 1 0\n";
        for (int i = 0; i < 4; ++i) text += "1 1 1\n";
        const Apta apta = Apta::build(parse_abbadingo(text));
        p.sinkson = true;
        p.largestblue = false;
        CHECK(candidate_blues(apta, p) == std::vector<NodeId>{1});
    }
}

TEST_CASE("sink threshold is strict") {
    std::string text = "49 2\n";
    for (int i = 0; i < 25; ++i) text += "1 1 0\n";
    for (int i = 0; i < 24; ++i) text += "1 1 1\n";
    const Apta apta = Apta::build(parse_abbadingo(text));
    EvalParams p;
    p.sinkson = true;
    p.sink_count = 25;
    CHECK_FALSE(is_sink(apta, 1, p));
    CHECK(is_sink(apta, 2, p));
    p.sinkson = false;
    CHECK_FALSE(is_sink(apta, 2, p));
}

TEST_CASE("greedy run on an empty sample") {
    int events = 0;
    const Pdfa m = greedy_run(TraceSet{}, kAlergia, EvalParams{}, [&](const ProgressEvent&) { ++events; });
    CHECK(m.states.size() == 1);
    CHECK(events == 0);
}

TEST_CASE("every state of a finished run was extended (or is the root)") {
    std::mt19937_64 rng(29);
    for (int i = 0; i < 100; ++i) {
        const TraceSet ts = testsupport::random_traceset(rng, 60, 3, 6);
        EvalParams p;
        p.confidence_bound = 0.05 + 0.9 * testsupport::unit(rng);
        p.finalprob = i % 2 == 0;
        int extends = 0;
        const Pdfa m = greedy_run(ts, kAlergia, p, [&](const ProgressEvent& e) {
            if (e.kind == ActionKind::extend) ++extends;
        });
        CHECK(m.states.size() == static_cast<std::size_t>(extends) + 1);
        CHECK_NOTHROW(m.validate());
    }
}

TEST_CASE("constraints hold for every performed merge") {
    std::mt19937_64 rng(31);
    for (int i = 0; i < 60; ++i) {
        const TraceSet ts = testsupport::random_traceset(rng, 60, 3, 6);
        EvalParams p;
        p.confidence_bound = 0.5;
        p.largestblue = i % 3 != 0;
        p.markovian = i % 2 == 0 ? 1 : 0;
        p.redfixed = i % 4 < 2;
        p.ktail = i % 5 == 0 ? 1 : 0;
        StateMerger sm(ts, kAlergia, p);
        while (sm.has_candidates()) {
            auto best = sm.best_merge();
            if (!best) {
                sm.extend(candidate_blues(sm.apta(), p).front());
                continue;
            }
            const auto reps_before = sm.apta().representatives().size();
            std::map<NodeId, std::set<Symbol>> red_symbols;
            for (NodeId r : sm.apta().red_states()) {
                for (const auto& [a, c] : sm.apta().node(r).children) red_symbols[r].insert(a);
            }
            const MergeOutcome m = sm.perform(best->candidate);
            if (p.ktail == 1) CHECK(m.state.pairs_tested + m.state.pairs_skipped <= 1);
            CHECK(sm.apta().representatives().size() < reps_before);
            if (p.redfixed) {
                for (const auto& [r, syms] : red_symbols) {
                    std::set<Symbol> now;
                    for (const auto& [a, c] : sm.apta().node(r).children) now.insert(a);
                    CHECK(now == syms);
                }
            }
            if (p.markovian == 1) {
                // the root has no incoming symbol, so only classes of deeper states are constrained
                for (NodeId r : sm.apta().representatives()) {
                    if (sm.apta().node(r).depth == 0) continue;
                    for (NodeId member : sm.apta().class_members(r)) {
                        CHECK(sm.apta().node(member).incoming == sm.apta().node(r).incoming);
                    }
                }
            }
        }
    }
}

TEST_CASE("undo_last walks the history back to the prefix tree") {
    std::mt19937_64 rng(37);
    for (int i = 0; i < 30; ++i) {
        const TraceSet ts = testsupport::random_traceset(rng, 40, 3, 6);
        EvalParams p;
        p.confidence_bound = 0.3;
        StateMerger sm(ts, kAlergia, p);
        const auto fresh = sm.apta().structural_hash();
        std::vector<std::uint64_t> hashes{fresh};
        while (sm.has_candidates()) {
            if (auto best = sm.best_merge()) sm.perform(best->candidate);
            else sm.extend(candidate_blues(sm.apta(), p).front());
            hashes.push_back(sm.apta().structural_hash());
        }
        while (!sm.history().empty()) {
            hashes.pop_back();
            sm.undo_last();
            CHECK(sm.apta().structural_hash() == hashes.back());
        }
    }
}
