#pragma once

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pdfa/inference.hpp"
#include "pdfa/pdfa.hpp"

namespace pdfa {

inline constexpr int kModelSchemaVersion = 1;

struct ModelMetadata {
    std::string heuristic;
    std::map<std::string, std::string> parameters;

    friend bool operator==(const ModelMetadata&, const ModelMetadata&) = default;
};

struct ModelDocument {
    Pdfa model;
    ModelMetadata metadata;
};

/// Graphviz digraph. Sink states, and whatever is only reachable through them, are left out unless asked for.
std::string export_dot(const Pdfa& model, bool include_sinks = false);

std::string export_model(const Pdfa& model, const ModelMetadata& metadata = {});
/// Throws ModelError on malformed documents, dangling targets or negative counts.
ModelDocument import_model(std::string_view text);

inline constexpr std::string_view kPredictionHeader = "state sequence; score sequence";

std::string write_predictions(std::span<const PredictionRecord> records);
/// Inverse of write_predictions (values keep their printed precision).
std::vector<PredictionRecord> parse_predictions(std::string_view text);

std::string dot_output_path(const std::string& input);
std::string model_output_path(const std::string& input);
std::string prediction_output_path(const std::string& input);

}  // namespace pdfa
