#pragma once
// Fixtures and independent reference computations shared by the unit tests and the acceptance suite.

#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "pdfa/pdfa.hpp"
#include "pdfa/traces.hpp"

namespace testsupport {

using pdfa::Pdfa;
using pdfa::PdfaState;
using pdfa::PdfaTransition;
using pdfa::Symbol;
using pdfa::Trace;
using pdfa::TraceSet;

// Uniform double in [0, 1) built from raw engine output so results do not depend on the standard library's
// distribution implementations.
inline double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

inline int below(std::mt19937_64& rng, int n) { return static_cast<int>(unit(rng) * n); }

/* The three-state model of the example run: state 0 emits a, state 1 loops
 * on a and moves to 2 on b, state 2 is the only accepting state. */
inline Pdfa example_model() {
    Pdfa m;
    m.alphabet_size = 2;
    m.finalprob = true;
    m.start = 0;
    m.states = {
        PdfaState{0, 20, 0, false, {PdfaTransition{0, 1, 20}}},
        PdfaState{1, 50, 0, false, {PdfaTransition{0, 1, 20}, PdfaTransition{1, 2, 30}}},
        PdfaState{2, 50, 20, false, {PdfaTransition{0, 1, 10}, PdfaTransition{1, 2, 20}}},
    };
    return m;
}

inline TraceSet random_traceset(std::mt19937_64& rng, int max_traces, int max_alphabet, int max_len) {
    TraceSet ts;
    ts.alphabet_size = 1 + below(rng, max_alphabet);
    const int n = below(rng, max_traces + 1);
    for (int i = 0; i < n; ++i) {
        Trace t;
        t.type_label = below(rng, 3);
        const int len = below(rng, max_len + 1);
        for (int j = 0; j < len; ++j) t.symbols.push_back(below(rng, ts.alphabet_size));
        ts.traces.push_back(std::move(t));
    }
    return ts;
}

/// Product of transition and final probabilities, written directly from the counts and independent of the library's inference code.
inline double def1_probability(const Pdfa& m, const std::vector<Symbol>& s) {
    double p = 1.0;
    int q = m.start;
    for (Symbol a : s) {
        const auto& st = m.states[static_cast<std::size_t>(q)];
        const double den = m.finalprob ? st.path_count : st.path_count - st.final_count;
        const PdfaTransition* hit = nullptr;
        for (const auto& t : st.transitions) {
            if (t.symbol == a) hit = &t;
        }
        if (hit == nullptr || den <= 0) return 0.0;
        p *= hit->count / den;
        q = hit->target;
    }
    if (m.finalprob) {
        const auto& st = m.states[static_cast<std::size_t>(q)];
        p *= st.path_count > 0 ? static_cast<double>(st.final_count) / st.path_count : 0.0;
    }
    return p;
}

/// Log-likelihood of a model's own counts: sum of c*ln(c/den) with 0*ln0 = 0.
inline double model_loglik(const Pdfa& m) {
    double ll = 0.0;
    for (const auto& st : m.states) {
        const double den = m.finalprob ? st.path_count : st.path_count - st.final_count;
        for (const auto& t : st.transitions) {
            if (t.count > 0) ll += t.count * std::log(t.count / den);
        }
        if (m.finalprob && st.final_count > 0) ll += st.final_count * std::log(st.final_count / den);
    }
    return ll;
}

/// Transitions with a non-zero count, plus one parameter per accepting state when finalprob.
inline long model_params(const Pdfa& m) {
    long n = 0;
    for (const auto& st : m.states) {
        for (const auto& t : st.transitions) n += t.count > 0 ? 1 : 0;
        if (m.finalprob && st.final_count > 0) ++n;
    }
    return n;
}

/* Random target automaton used by the synthetic-recovery checks. Every state
 * gets a stop probability and a random subset of symbols with random
 * targets; probabilities are stored as counts out of `scale`. */
inline Pdfa random_target(std::mt19937_64& rng, int n_states, int alphabet, long scale = 1000) {
    Pdfa m;
    m.alphabet_size = alphabet;
    m.finalprob = true;
    m.start = 0;
    for (int q = 0; q < n_states; ++q) {
        PdfaState st;
        st.id = q;
        std::vector<double> w;
        std::vector<Symbol> syms;
        for (Symbol a = 0; a < alphabet; ++a) {
            if (unit(rng) < 0.6) {
                syms.push_back(a);
                w.push_back(0.2 + unit(rng));
            }
        }
        if (syms.empty()) {
            syms.push_back(below(rng, alphabet));
            w.push_back(1.0);
        }
        const double stop = 0.1 + 0.2 * unit(rng);
        double total = 0.0;
        for (double x : w) total += x;
        long used = 0;
        for (std::size_t i = 0; i < syms.size(); ++i) {
            // chain q -> q+1 on the first symbol keeps every state reachable
            const int target = i == 0 && q + 1 < n_states ? q + 1 : below(rng, n_states);
            const long c = std::max(1L, std::lround((1.0 - stop) * scale * w[i] / total));
            st.transitions.push_back({syms[i], target, c});
            used += c;
        }
        st.final_count = std::max(1L, scale - used);
        st.path_count = used + st.final_count;
        m.states.push_back(std::move(st));
    }
    return m;
}

/// Draws one trace from a finalprob model by following normalized counts.
inline Trace sample_trace(const Pdfa& m, std::mt19937_64& rng, int max_len = 200) {
    Trace t;
    int q = m.start;
    for (int step = 0; step < max_len; ++step) {
        const auto& st = m.states[static_cast<std::size_t>(q)];
        double r = unit(rng) * static_cast<double>(st.path_count);
        if (r < static_cast<double>(st.final_count)) break;
        r -= static_cast<double>(st.final_count);
        const PdfaTransition* pick = &st.transitions.back();
        for (const auto& tr : st.transitions) {
            if (r < static_cast<double>(tr.count)) {
                pick = &tr;
                break;
            }
            r -= static_cast<double>(tr.count);
        }
        t.symbols.push_back(pick->symbol);
        q = pick->target;
    }
    return t;
}

/// Every string over the alphabet with length <= max_len, shortest first.
inline std::vector<std::vector<Symbol>> all_strings(int alphabet, int max_len) {
    std::vector<std::vector<Symbol>> out{{}};
    std::size_t begin = 0;
    for (int len = 1; len <= max_len; ++len) {
        const std::size_t end = out.size();
        for (std::size_t i = begin; i < end; ++i) {
            for (Symbol a = 0; a < alphabet; ++a) {
                auto s = out[i];
                s.push_back(a);
                out.push_back(std::move(s));
            }
        }
        begin = end;
    }
    return out;
}

}  // namespace testsupport
