#include "pdfa/io.hpp"

#include <cmath>
#include <cstdio>
#include <deque>
#include <limits>
#include <sstream>

#include "json.hpp"

namespace pdfa {

using json = nlohmann::ordered_json;

std::string export_dot(const Pdfa& model, bool include_sinks) {
    std::vector<bool> shown(model.states.size(), false);
    std::deque<StateId> queue;
    auto visible = [&](StateId q) { return include_sinks || !model.state(q).sink; };
    if (visible(model.start)) {
        shown[static_cast<std::size_t>(model.start)] = true;
        queue.push_back(model.start);
    }
    while (!queue.empty()) {
        const StateId q = queue.front();
        queue.pop_front();
        for (const auto& t : model.state(q).transitions) {
            if (!visible(t.target) || shown[static_cast<std::size_t>(t.target)]) continue;
            shown[static_cast<std::size_t>(t.target)] = true;
            queue.push_back(t.target);
        }
    }

    std::ostringstream out;
    out << "digraph pdfa {\n";
    out << "\tnode [shape=circle];\n";
    out << "\t__start [shape=none label=\"\"];\n";
    if (shown[static_cast<std::size_t>(model.start)]) out << "\t__start -> " << model.start << ";\n";
    for (const auto& s : model.states) {
        if (!shown[static_cast<std::size_t>(s.id)]) continue;
        out << '\t' << s.id << " [label=\"" << s.id << "\\nfin: " << s.final_count << "\\npath: " << s.path_count
            << '"';
        if (s.sink) out << " style=dashed";
        out << "];\n";
    }
    for (const auto& s : model.states) {
        if (!shown[static_cast<std::size_t>(s.id)]) continue;
        for (const auto& t : s.transitions) {
            if (!shown[static_cast<std::size_t>(t.target)]) continue;
            out << '\t' << s.id << " -> " << t.target << " [label=\"" << t.symbol << ' ' << t.count << "\"];\n";
        }
    }
    out << "}\n";
    return out.str();
}

std::string export_model(const Pdfa& model, const ModelMetadata& metadata) {
    json doc;
    doc["schema_version"] = kModelSchemaVersion;
    doc["alphabet_size"] = model.alphabet_size;
    doc["finalprob"] = model.finalprob;
    doc["start"] = model.start;
    json meta;
    meta["heuristic"] = metadata.heuristic;
    meta["parameters"] = json::object();
    for (const auto& [k, v] : metadata.parameters) meta["parameters"][k] = v;
    doc["metadata"] = std::move(meta);

    json states = json::array();
    json transitions = json::array();
    for (const auto& s : model.states) {
        states.push_back({{"id", s.id}, {"final_count", s.final_count}, {"path_count", s.path_count}, {"sink", s.sink}});
        for (const auto& t : s.transitions) {
            transitions.push_back({{"source", s.id}, {"symbol", t.symbol}, {"target", t.target}, {"count", t.count}});
        }
    }
    doc["states"] = std::move(states);
    doc["transitions"] = std::move(transitions);
    return doc.dump(2) + "\n";
}

ModelDocument import_model(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ModelError(std::string("model document is not valid json: ") + e.what());
    }

    ModelDocument out;
    try {
        if (!doc.is_object()) throw ModelError("model document must be a json object");
        const int version = doc.at("schema_version").get<int>();
        if (version != kModelSchemaVersion) {
            throw ModelError("unsupported schema version " + std::to_string(version));
        }
        Pdfa& m = out.model;
        m.alphabet_size = doc.at("alphabet_size").get<int>();
        m.finalprob = doc.at("finalprob").get<bool>();
        m.start = doc.at("start").get<StateId>();

        if (doc.contains("metadata")) {
            const json& meta = doc.at("metadata");
            out.metadata.heuristic = meta.value("heuristic", "");
            if (meta.contains("parameters")) {
                for (const auto& [k, v] : meta.at("parameters").items()) {
                    out.metadata.parameters[k] = v.get<std::string>();
                }
            }
        }

        for (const json& s : doc.at("states")) {
            PdfaState st;
            st.id = s.at("id").get<StateId>();
            st.final_count = s.at("final_count").get<long>();
            st.path_count = s.at("path_count").get<long>();
            st.sink = s.value("sink", false);
            if (st.id != static_cast<StateId>(m.states.size())) {
                throw ModelError("state ids must be dense and listed in order");
            }
            m.states.push_back(std::move(st));
        }
        for (const json& t : doc.at("transitions")) {
            const auto source = t.at("source").get<StateId>();
            if (source < 0 || source >= static_cast<StateId>(m.states.size())) {
                throw ModelError("transition from unknown state " + std::to_string(source));
            }
            m.states[static_cast<std::size_t>(source)].transitions.push_back(
                {t.at("symbol").get<Symbol>(), t.at("target").get<StateId>(), t.at("count").get<long>()});
        }
    } catch (const json::exception& e) {
        throw ModelError(std::string("model document violates schema: ") + e.what());
    }
    out.model.validate();
    return out;
}

namespace {

std::string format_score(double v) {
    if (std::isinf(v)) return v < 0 ? "-inf" : "inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

std::vector<std::string> split_list(std::string_view s) {
    const auto open = s.find('[');
    const auto close = s.rfind(']');
    if (open == std::string_view::npos || close == std::string_view::npos || close < open) {
        throw std::invalid_argument("expected a bracketed list");
    }
    std::vector<std::string> out;
    std::string_view body = s.substr(open + 1, close - open - 1);
    if (body.empty()) return out;
    std::size_t pos = 0;
    while (true) {
        const auto comma = body.find(',', pos);
        out.emplace_back(body.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos));
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return out;
}

double parse_score(const std::string& s) {
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    return std::stod(s);
}

}  // namespace

std::string write_predictions(std::span<const PredictionRecord> records) {
    std::string out(kPredictionHeader);
    out += '\n';
    for (const auto& r : records) {
        out += '[';
        for (std::size_t i = 0; i < r.states.size(); ++i) {
            if (i) out += ',';
            out += std::to_string(r.states[i]);
        }
        out += "]; [";
        for (std::size_t i = 0; i < r.scores.size(); ++i) {
            if (i) out += ',';
            out += format_score(r.scores[i]);
        }
        out += "]\n";
    }
    return out;
}

std::vector<PredictionRecord> parse_predictions(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    if (!std::getline(in, line) || line != kPredictionHeader) {
        throw std::invalid_argument("missing prediction header");
    }
    std::vector<PredictionRecord> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto sep = line.find("; ");
        if (sep == std::string::npos) throw std::invalid_argument("prediction row without separator");
        PredictionRecord r;
        for (const auto& s : split_list(std::string_view(line).substr(0, sep))) r.states.push_back(std::stoi(s));
        for (const auto& s : split_list(std::string_view(line).substr(sep + 2))) r.scores.push_back(parse_score(s));
        out.push_back(std::move(r));
    }
    return out;
}

std::string dot_output_path(const std::string& input) { return input + ".ff.final.dot"; }
std::string model_output_path(const std::string& input) { return input + ".ff.final.json"; }
std::string prediction_output_path(const std::string& input) { return input + ".ff.final.result.csv"; }

}  // namespace pdfa
