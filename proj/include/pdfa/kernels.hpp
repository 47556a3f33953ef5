#pragma once

#include <span>
#include <vector>

#include "pdfa/apta.hpp"
#include "pdfa/inference.hpp"
#include "pdfa/pdfa.hpp"
#include "pdfa/traces.hpp"

// Batch kernels over independent traces or states. `reference` is the serial
// implementation the tests compare against; `omp` splits the outer loop.
namespace pdfa::kernels {

namespace reference {

std::vector<double> smoothed_probabilities(const Pdfa& model, std::span<const Trace> traces, double correction);
std::vector<PredictionRecord> predict(const Pdfa& model, std::span<const Trace> traces, double correction);
std::vector<AnomalyVerdict> anomalies(const Pdfa& model, std::span<const Trace> traces);
double loglik(const Apta& apta, bool finalprob);

}  // namespace reference

namespace omp {

std::vector<double> smoothed_probabilities(const Pdfa& model, std::span<const Trace> traces, double correction);
std::vector<PredictionRecord> predict(const Pdfa& model, std::span<const Trace> traces, double correction);
std::vector<AnomalyVerdict> anomalies(const Pdfa& model, std::span<const Trace> traces);
double loglik(const Apta& apta, bool finalprob);

int max_threads();

}  // namespace omp

}  // namespace pdfa::kernels
