#include "pdfa/harness.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "pdfa/evaluators.hpp"
#include "pdfa/inference.hpp"
#include "pdfa/kernels.hpp"
#include "pdfa/merger.hpp"

namespace pdfa::harness {

namespace {

std::ifstream open(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return in;
}

}  // namespace

TraceSet parse_pautomac(std::istream& in) {
    // Reuse the Abbadingo parser by inserting a type label in front of each line.
    std::string line;
    std::ostringstream text;
    if (!std::getline(in, line)) throw ParseError(1, "missing header");
    text << line << '\n';
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        text << "1 " << line << '\n';
    }
    return parse_abbadingo(text.str());
}

TraceSet read_pautomac_file(const std::string& path) {
    auto in = open(path);
    return parse_pautomac(in);
}

std::vector<double> parse_solution(std::istream& in) {
    long n = 0;
    if (!(in >> n) || n < 0) throw ParseError(1, "solution file must start with the number of traces");
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(n));
    double p = 0.0;
    while (in >> p) out.push_back(p);
    if (static_cast<long>(out.size()) != n) {
        throw ParseError(1, "solution declares " + std::to_string(n) + " values but has " + std::to_string(out.size()));
    }
    return out;
}

std::vector<double> read_solution_file(const std::string& path) {
    auto in = open(path);
    return parse_solution(in);
}

PerplexityReport pautomac_score(const TraceSet& train, const TraceSet& test, const std::vector<double>& solution,
                                const std::string& heuristic, const EvalParams& params) {
    if (test.traces.size() != solution.size()) throw std::invalid_argument("test set and solution differ in size");
    const auto eval = make_evaluator(heuristic);
    const Pdfa model = greedy_run(train, *eval, params);
    // the model may have been learned on a smaller alphabet than the test file uses
    Pdfa widened = model;
    widened.alphabet_size = std::max(model.alphabet_size, test.alphabet_size);
    const auto probs = kernels::omp::smoothed_probabilities(widened, test.traces, 1.0);
    return {perplexity(probs, solution), perplexity(solution, solution), model.states.size()};
}

DetectionReport detection_score(const Pdfa& model, const TraceSet& normal, const TraceSet& abnormal) {
    DetectionReport r;
    for (const auto& v : kernels::omp::anomalies(model, abnormal.traces)) {
        if (v.anomalous) ++r.true_positives;
        else ++r.false_negatives;
    }
    for (const auto& v : kernels::omp::anomalies(model, normal.traces)) {
        if (v.anomalous) ++r.false_positives;
    }
    const double tp = static_cast<double>(r.true_positives);
    if (r.true_positives + r.false_positives > 0) r.precision = tp / static_cast<double>(r.true_positives + r.false_positives);
    if (r.true_positives + r.false_negatives > 0) r.recall = tp / static_cast<double>(r.true_positives + r.false_negatives);
    if (r.precision + r.recall > 0.0) r.f1 = 2.0 * r.precision * r.recall / (r.precision + r.recall);
    r.states = model.states.size();
    return r;
}

DetectionReport hdfs_score(const TraceSet& train, const TraceSet& normal, const TraceSet& abnormal,
                           const std::string& heuristic, const EvalParams& params) {
    const auto eval = make_evaluator(heuristic);
    return detection_score(greedy_run(train, *eval, params), normal, abnormal);
}

}  // namespace pdfa::harness
