#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "pdfa/params.hpp"
#include "pdfa/pdfa.hpp"
#include "pdfa/traces.hpp"

// Evaluation on external benchmark data: PAutomaC perplexity and HDFS-style anomaly detection.
namespace pdfa::harness {

/// PAutomaC sample files: header "N A", then lines "len s1 ... s_len" without a type label.
TraceSet parse_pautomac(std::istream& in);
TraceSet read_pautomac_file(const std::string& path);

/// PAutomaC solution files: a count line, then one probability per test trace.
std::vector<double> parse_solution(std::istream& in);
std::vector<double> read_solution_file(const std::string& path);

struct PerplexityReport {
    double perplexity = 0.0;
    double solution_perplexity = 0.0;  // the target scored against itself
    std::size_t states = 0;
};

PerplexityReport pautomac_score(const TraceSet& train, const TraceSet& test, const std::vector<double>& solution,
                                const std::string& heuristic, const EvalParams& params);

struct DetectionReport {
    long true_positives = 0;
    long false_positives = 0;
    long false_negatives = 0;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    std::size_t states = 0;
};

/// Flags a test trace when it hits a missing transition, an unseen symbol, or ends in a non-final state.
DetectionReport detection_score(const Pdfa& model, const TraceSet& normal, const TraceSet& abnormal);
DetectionReport hdfs_score(const TraceSet& train, const TraceSet& normal, const TraceSet& abnormal,
                           const std::string& heuristic, const EvalParams& params);

}  // namespace pdfa::harness
