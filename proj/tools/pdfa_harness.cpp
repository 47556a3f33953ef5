// Scores learned models on benchmark data: PAutomaC perplexity or HDFS-style anomaly detection F1.
#include <cstdio>
#include <iostream>

#include "CLI11.hpp"
#include "pdfa/harness.hpp"

namespace {

struct Common {
    std::string heuristic = "alergia";
    double confidence_bound = 0.01;
    bool finalprob = true;
    bool largestblue = true;
    bool sinkson = true;
    long sink_count = 25;
    long state_count = 15;
    long symbol_count = 10;

    pdfa::EvalParams params() const {
        pdfa::EvalParams p;
        p.confidence_bound = confidence_bound;
        p.finalprob = finalprob;
        p.largestblue = largestblue;
        p.sinkson = sinkson;
        p.sink_count = sink_count;
        p.state_count = state_count;
        p.symbol_count = symbol_count;
        pdfa::validate(p);
        return p;
    }
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--heuristic", c.heuristic, "evaluation function")->capture_default_str();
    cmd->add_option("--confidence-bound", c.confidence_bound, "significance level")->capture_default_str();
    cmd->add_option("--finalprob", c.finalprob, "model end-of-trace probabilities")->capture_default_str();
    cmd->add_option("--largestblue", c.largestblue, "pick the most frequent blue state first")->capture_default_str();
    cmd->add_option("--sinkson", c.sinkson, "keep low-frequency states as sinks")->capture_default_str();
    cmd->add_option("--sink-count", c.sink_count, "sink threshold")->capture_default_str();
    cmd->add_option("--state-count", c.state_count, "minimum state occurrences for testing")->capture_default_str();
    cmd->add_option("--symbol-count", c.symbol_count, "minimum symbol occurrences per bin")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Benchmark harness for learned PDFAs"};
    app.require_subcommand(1);

    Common pautomac_opts;
    std::string train, test, solution;
    auto* pautomac = app.add_subcommand("pautomac", "perplexity against a PAutomaC solution file");
    pautomac->add_option("train", train, "training sample")->required()->check(CLI::ExistingFile);
    pautomac->add_option("test", test, "test sample")->required()->check(CLI::ExistingFile);
    pautomac->add_option("solution", solution, "target probabilities of the test traces")
        ->required()
        ->check(CLI::ExistingFile);
    add_common(pautomac, pautomac_opts);

    Common hdfs_opts;
    std::string hdfs_train, normal, abnormal;
    auto* hdfs = app.add_subcommand("hdfs", "anomaly detection on normal and abnormal Abbadingo files");
    hdfs->add_option("train", hdfs_train, "normal training traces")->required()->check(CLI::ExistingFile);
    hdfs->add_option("normal", normal, "normal test traces")->required()->check(CLI::ExistingFile);
    hdfs->add_option("abnormal", abnormal, "abnormal test traces")->required()->check(CLI::ExistingFile);
    add_common(hdfs, hdfs_opts);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*pautomac) {
            const auto r = pdfa::harness::pautomac_score(pdfa::harness::read_pautomac_file(train),
                                                         pdfa::harness::read_pautomac_file(test),
                                                         pdfa::harness::read_solution_file(solution),
                                                         pautomac_opts.heuristic, pautomac_opts.params());
            std::printf("states %zu\nperplexity %.6f\nsolution_perplexity %.6f\n", r.states, r.perplexity,
                        r.solution_perplexity);
        } else {
            const auto r = pdfa::harness::hdfs_score(pdfa::read_abbadingo_file(hdfs_train),
                                                     pdfa::read_abbadingo_file(normal),
                                                     pdfa::read_abbadingo_file(abnormal), hdfs_opts.heuristic,
                                                     hdfs_opts.params());
            std::printf("states %zu\ntp %ld\nfp %ld\nfn %ld\nprecision %.4f\nrecall %.4f\nf1 %.4f\n", r.states,
                        r.true_positives, r.false_positives, r.false_negatives, r.precision, r.recall, r.f1);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
