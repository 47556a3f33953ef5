#include "pdfa/kernels.hpp"

#include <omp.h>

#include "pdfa/evaluators.hpp"

namespace pdfa::kernels {

namespace reference {

std::vector<double> smoothed_probabilities(const Pdfa& model, std::span<const Trace> traces, double correction) {
    std::vector<double> out(traces.size());
    for (std::size_t i = 0; i < traces.size(); ++i) {
        out[i] = smoothed_probability(model, traces[i].symbols, correction);
    }
    return out;
}

std::vector<PredictionRecord> predict(const Pdfa& model, std::span<const Trace> traces, double correction) {
    std::vector<PredictionRecord> out(traces.size());
    for (std::size_t i = 0; i < traces.size(); ++i) out[i] = trace_scores(model, traces[i].symbols, correction);
    return out;
}

std::vector<AnomalyVerdict> anomalies(const Pdfa& model, std::span<const Trace> traces) {
    std::vector<AnomalyVerdict> out(traces.size());
    for (std::size_t i = 0; i < traces.size(); ++i) out[i] = is_anomaly(model, traces[i].symbols);
    return out;
}

double loglik(const Apta& apta, bool finalprob) { return total_loglik(apta, finalprob); }

}  // namespace reference

namespace omp {

int max_threads() { return omp_get_max_threads(); }

std::vector<double> smoothed_probabilities(const Pdfa& model, std::span<const Trace> traces, double correction) {
    std::vector<double> out(traces.size());
    const auto n = static_cast<std::ptrdiff_t>(traces.size());
#pragma omp parallel for schedule(dynamic, 64)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        out[static_cast<std::size_t>(i)] =
            smoothed_probability(model, traces[static_cast<std::size_t>(i)].symbols, correction);
    }
    return out;
}

std::vector<PredictionRecord> predict(const Pdfa& model, std::span<const Trace> traces, double correction) {
    std::vector<PredictionRecord> out(traces.size());
    const auto n = static_cast<std::ptrdiff_t>(traces.size());
#pragma omp parallel for schedule(dynamic, 64)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        out[static_cast<std::size_t>(i)] =
            trace_scores(model, traces[static_cast<std::size_t>(i)].symbols, correction);
    }
    return out;
}

std::vector<AnomalyVerdict> anomalies(const Pdfa& model, std::span<const Trace> traces) {
    std::vector<AnomalyVerdict> out(traces.size());
    const auto n = static_cast<std::ptrdiff_t>(traces.size());
#pragma omp parallel for schedule(dynamic, 64)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        out[static_cast<std::size_t>(i)] = is_anomaly(model, traces[static_cast<std::size_t>(i)].symbols);
    }
    return out;
}

double loglik(const Apta& apta, bool finalprob) {
    const auto& nodes = apta.nodes();
    const auto n = static_cast<std::ptrdiff_t>(nodes.size());
    double sum = 0.0;
#pragma omp parallel for reduction(+ : sum) schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const AptaNode& node = nodes[static_cast<std::size_t>(i)];
        if (node.representative == kNoNode) sum += state_loglik(node, finalprob);
    }
    return sum;
}

}  // namespace omp

}  // namespace pdfa::kernels
