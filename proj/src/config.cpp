#include "pdfa/config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "pdfa/evaluators.hpp"
#include "pdfa/io.hpp"
#include "pdfa/kernels.hpp"
#include "pdfa/merger.hpp"
#include "pdfa/search.hpp"

namespace pdfa {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

void apply_setting(RunConfig& c, const std::string& key, const std::string& value) {
    if (key == "heuristic_name") {
        c.heuristic_name = value;
    } else if (key == "data_name") {
        c.data_name = value;
    } else if (key == "apta_file") {
        if (value.empty()) c.apta_file.reset();
        else c.apta_file = value;
    } else if (key == "input") {
        c.input_path = value;
    } else if (key == "print_sinks") {
        if (value == "1" || value == "true") c.print_sinks = true;
        else if (value == "0" || value == "false") c.print_sinks = false;
        else throw ConfigError("invalid value '" + value + "' for print_sinks");
    } else {
        try {
            set_parameter(c.params, key, value);
        } catch (const ParameterError& e) {
            throw ConfigError(e.what());
        }
    }
}

bool write_file(const std::string& path, const std::string& text, std::ostream& err) {
    std::ofstream f(path, std::ios::binary);
    f << text;
    f.close();
    if (!f) {
        err << "error: could not write " << path << '\n';
        return false;
    }
    return true;
}

std::string score_token(double score) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", score);
    return buf;
}

int learn(const RunConfig& config, const Evaluator& eval, std::ostream& out, std::ostream& err) {
    const TraceSet ts = read_abbadingo_file(config.input_path);
    Reporter report = [&out](const ProgressEvent& e) {
        if (e.kind == ActionKind::extend) out << " x" << e.frequency << ' ';
        else out << " m" << score_token(e.score) << ' ';
        out.flush();
    };

    Pdfa model;
    if (config.params.mode == Mode::search) {
        out << "search mode selected\n";
        out << "starting best-first search\n";
        model = best_first_search(ts, eval, config.params, config.params.beam_width, report).model;
    } else {
        out << "batch mode selected\n";
        out << "starting greedy merging\n";
        model = greedy_run(ts, eval, config.params, report);
    }
    out << "no more possible merges\n";

    ModelMetadata meta{config.heuristic_name, parameter_map(config.params)};
    const bool ok = write_file(dot_output_path(config.input_path), export_dot(model, config.print_sinks), err) &&
                    write_file(model_output_path(config.input_path), export_model(model, meta), err);
    return ok ? 0 : 1;
}

int predict(const RunConfig& config, std::ostream& out, std::ostream& err) {
    out << "predict mode selected\n";
    std::ifstream f(*config.apta_file, std::ios::binary);
    if (!f) {
        err << "error: cannot open model file " << *config.apta_file << '\n';
        return 2;
    }
    std::stringstream text;
    text << f.rdbuf();
    const ModelDocument doc = import_model(text.str());
    const TraceSet ts = read_abbadingo_file(config.input_path);
    const auto records = kernels::omp::predict(doc.model, ts.traces, config.params.correction);
    return write_file(prediction_output_path(config.input_path), write_predictions(records), err) ? 0 : 1;
}

}  // namespace

std::string normalize_key(std::string_view key) {
    std::string k(trim(key));
    std::replace(k.begin(), k.end(), '-', '_');
    std::transform(k.begin(), k.end(), k.begin(), [](unsigned char ch) { return std::tolower(ch); });
    if (k == "aptafile") k = "apta_file";
    return k;
}

Settings parse_ini(std::string_view text) {
    Settings out;
    std::string section = "default";
    std::size_t line_no = 0;
    std::istringstream in{std::string(text)};
    for (std::string raw; std::getline(in, raw);) {
        ++line_no;
        const std::string_view line = trim(raw);
        if (line.empty() || line.front() == ';' || line.front() == '#') continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError("line " + std::to_string(line_no) + ": malformed section header");
            section = std::string(trim(line.substr(1, line.size() - 2)));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
        }
        if (section != "default") continue;
        out[normalize_key(line.substr(0, eq))] = std::string(trim(line.substr(eq + 1)));
    }
    return out;
}

RunConfig load_config(const Settings& ini, const Settings& overrides) {
    RunConfig c;
    for (const auto& [k, v] : ini) apply_setting(c, normalize_key(k), v);
    for (const auto& [k, v] : overrides) apply_setting(c, normalize_key(k), v);
    return c;
}

void validate(const RunConfig& config) {
    if (config.input_path.empty()) throw ConfigError("missing input file");
    const auto names = evaluator_names();
    if (std::find(names.begin(), names.end(), config.heuristic_name) == names.end()) {
        throw ConfigError("unknown heuristic '" + config.heuristic_name + "'");
    }
    if (config.params.mode == Mode::predict && !config.apta_file) {
        throw ConfigError("predict mode needs a model file (apta_file)");
    }
    try {
        validate(config.params);
    } catch (const ParameterError& e) {
        throw ConfigError(e.what());
    }
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        validate(config);
    } catch (const ConfigError& e) {
        err << "configuration error: " << e.what() << '\n';
        return 2;
    }
    try {
        auto eval = make_evaluator(config.heuristic_name);
        out << "Using heuristic " << config.heuristic_name << '\n';
        if (config.params.mode == Mode::predict) return predict(config, out, err);
        out << "Creating apta using evaluation class " << eval->name() << '\n';
        return learn(config, *eval, out, err);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace pdfa
