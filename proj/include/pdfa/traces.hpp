#pragma once

#include <cstdint>
#include <istream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pdfa {

using Symbol = std::int32_t;

/// One input sequence. The type label is kept but ignored by probabilistic learning.
struct Trace {
    int type_label = 1;
    std::vector<Symbol> symbols;

    friend bool operator==(const Trace&, const Trace&) = default;
};

/// A parsed input sample over the dense alphabet [0, alphabet_size).
struct TraceSet {
    int alphabet_size = 1;
    std::vector<Trace> traces;

    friend bool operator==(const TraceSet&, const TraceSet&) = default;
};

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/* Abbadingo format: a header "N A" followed by N lines "type len s1 ... s_len".
 * Trailing blank lines are ignored; every other deviation throws ParseError. */
TraceSet parse_abbadingo(std::istream& in);
TraceSet parse_abbadingo(std::string_view text);
TraceSet read_abbadingo_file(const std::string& path);

std::string write_abbadingo(const TraceSet& ts);

}  // namespace pdfa
