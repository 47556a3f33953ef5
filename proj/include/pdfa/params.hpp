#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pdfa {

enum class Mode { batch, search, predict };

/// Learning parameters. Field names follow the ini/flag spellings.
struct EvalParams {
    double confidence_bound = 0.01;
    bool largestblue = true;
    bool shallowfirst = false;
    bool extend = true;
    bool blueblue = false;
    bool redfixed = false;
    int markovian = 0;
    int ktail = 0;  // 0 = unlimited
    bool sinkson = false;
    long sink_count = 25;
    long state_count = 0;
    long symbol_count = 0;
    double correction = 1.0;
    bool finalprob = false;
    Mode mode = Mode::batch;
    int beam_width = 100;

    friend bool operator==(const EvalParams&, const EvalParams&) = default;
};

std::string to_string(Mode m);
/// Throws std::invalid_argument for anything but batch/search/predict.
Mode mode_from_string(std::string_view s);

/// Thrown for unknown parameter names and unparseable or out-of-range values.
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Parameter names accepted by set_parameter, in declaration order.
const std::vector<std::string>& parameter_names();
void set_parameter(EvalParams& p, std::string_view name, std::string_view value);
std::string get_parameter(const EvalParams& p, std::string_view name);
std::map<std::string, std::string> parameter_map(const EvalParams& p);

/// Checks ranges and the sink/state threshold relation; throws ParameterError.
void validate(const EvalParams& p);

}  // namespace pdfa
