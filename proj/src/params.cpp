#include "pdfa/params.hpp"

#include <charconv>
#include <functional>

namespace pdfa {

std::string to_string(Mode m) {
    switch (m) {
        case Mode::batch: return "batch";
        case Mode::search: return "search";
        case Mode::predict: return "predict";
    }
    return "batch";
}

Mode mode_from_string(std::string_view s) {
    if (s == "batch") return Mode::batch;
    if (s == "search") return Mode::search;
    if (s == "predict") return Mode::predict;
    throw std::invalid_argument("unknown mode '" + std::string(s) + "'");
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

[[noreturn]] void bad_value(std::string_view name, std::string_view value) {
    throw ParameterError("invalid value '" + std::string(value) + "' for " + std::string(name));
}

bool parse_bool(std::string_view name, std::string_view v) {
    if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
    if (v == "0" || v == "false" || v == "no" || v == "off") return false;
    bad_value(name, v);
}

template <typename T>
T parse_number(std::string_view name, std::string_view v) {
    T out{};
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size() || v.empty()) bad_value(name, v);
    return out;
}

struct Field {
    std::string name;
    std::function<void(EvalParams&, std::string_view)> set;
    std::function<std::string(const EvalParams&)> get;
};

// Shortest text that parses back to the same double.
std::string fmt(double v) {
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, end);
}

template <typename T>
Field numeric(std::string name, T EvalParams::*member, T min_value) {
    return {name,
            [name, member, min_value](EvalParams& p, std::string_view v) {
                const T x = parse_number<T>(name, v);
                if (x < min_value) bad_value(name, v);
                p.*member = x;
            },
            [member](const EvalParams& p) {
                if constexpr (std::is_floating_point_v<T>) return fmt(p.*member);
                else return std::to_string(p.*member);
            }};
}

Field flag(std::string name, bool EvalParams::*member) {
    return {name, [name, member](EvalParams& p, std::string_view v) { p.*member = parse_bool(name, v); },
            [member](const EvalParams& p) { return std::string(p.*member ? "1" : "0"); }};
}

const std::vector<Field>& fields() {
    static const std::vector<Field> all = [] {
        std::vector<Field> f;
        f.push_back(numeric("confidence_bound", &EvalParams::confidence_bound, 0.0));
        f.push_back(flag("largestblue", &EvalParams::largestblue));
        f.push_back(flag("shallowfirst", &EvalParams::shallowfirst));
        f.push_back(flag("extend", &EvalParams::extend));
        f.push_back(flag("blueblue", &EvalParams::blueblue));
        f.push_back(flag("redfixed", &EvalParams::redfixed));
        f.push_back(numeric("markovian", &EvalParams::markovian, 0));
        f.push_back(numeric("ktail", &EvalParams::ktail, 0));
        f.push_back(flag("sinkson", &EvalParams::sinkson));
        f.push_back(numeric("sink_count", &EvalParams::sink_count, 0L));
        f.push_back(numeric("state_count", &EvalParams::state_count, 0L));
        f.push_back(numeric("symbol_count", &EvalParams::symbol_count, 0L));
        f.push_back(numeric("correction", &EvalParams::correction, 0.0));
        f.push_back(flag("finalprob", &EvalParams::finalprob));
        f.push_back({"mode",
                     [](EvalParams& p, std::string_view v) {
                         try {
                             p.mode = mode_from_string(v);
                         } catch (const std::invalid_argument&) {
                             bad_value("mode", v);
                         }
                     },
                     [](const EvalParams& p) { return to_string(p.mode); }});
        f.push_back(numeric("beam_width", &EvalParams::beam_width, 1));
        return f;
    }();
    return all;
}

const Field& field(std::string_view name) {
    for (const auto& f : fields()) {
        if (f.name == name) return f;
    }
    throw ParameterError("unknown parameter '" + std::string(name) + "'");
}

}  // namespace

const std::vector<std::string>& parameter_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> n;
        for (const auto& f : fields()) n.push_back(f.name);
        return n;
    }();
    return names;
}

void set_parameter(EvalParams& p, std::string_view name, std::string_view value) {
    field(name).set(p, trim(value));
}

std::string get_parameter(const EvalParams& p, std::string_view name) { return field(name).get(p); }

std::map<std::string, std::string> parameter_map(const EvalParams& p) {
    std::map<std::string, std::string> out;
    for (const auto& f : fields()) out[f.name] = f.get(p);
    return out;
}

void validate(const EvalParams& p) {
    if (!(p.confidence_bound > 0.0 && p.confidence_bound <= 1.0)) {
        throw ParameterError("confidence_bound must lie in (0, 1]");
    }
    if (p.sinkson && p.state_count > 0 && p.state_count >= p.sink_count) {
        throw ParameterError("state_count must be lower than sink_count when sinks are on");
    }
}

}  // namespace pdfa
