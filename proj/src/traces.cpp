#include "pdfa/traces.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace pdfa {

namespace {

std::vector<long long> split_integers(const std::string& line, std::size_t lineno) {
    std::vector<long long> out;
    const char* p = line.data();
    const char* end = p + line.size();
    while (p < end) {
        while (p < end && (*p == ' ' || *p == '\t' || *p == '\r')) ++p;
        if (p == end) break;
        long long v = 0;
        auto [next, ec] = std::from_chars(p, end, v);
        if (ec != std::errc{} || (next < end && *next != ' ' && *next != '\t' && *next != '\r')) {
            throw ParseError(lineno, "expected a decimal integer");
        }
        out.push_back(v);
        p = next;
    }
    return out;
}

bool blank(const std::string& line) {
    return line.find_first_not_of(" \t\r") == std::string::npos;
}

}  // namespace

TraceSet parse_abbadingo(std::istream& in) {
    std::string line;
    std::size_t lineno = 0;

    if (!std::getline(in, line)) throw ParseError(1, "empty input");
    ++lineno;
    const auto header = split_integers(line, lineno);
    if (header.size() != 2 || header[0] < 0 || header[1] <= 0) {
        throw ParseError(lineno, "header must be \"<num traces> <alphabet size>\"");
    }

    TraceSet ts;
    ts.alphabet_size = static_cast<int>(header[1]);
    const auto declared = static_cast<std::size_t>(header[0]);
    ts.traces.reserve(declared);

    while (std::getline(in, line)) {
        ++lineno;
        if (blank(line)) {
            // only trailing blank lines are tolerated
            std::string rest;
            while (std::getline(in, rest)) {
                ++lineno;
                if (!blank(rest)) throw ParseError(lineno, "trace after blank line");
            }
            break;
        }
        if (ts.traces.size() == declared) {
            throw ParseError(lineno, "more traces than declared in header (" + std::to_string(declared) + ")");
        }
        const auto fields = split_integers(line, lineno);
        if (fields.size() < 2) throw ParseError(lineno, "trace line needs a type and a length");
        if (fields[0] < 0) throw ParseError(lineno, "negative trace type");
        if (fields[1] < 0) throw ParseError(lineno, "negative trace length");
        const auto len = static_cast<std::size_t>(fields[1]);
        if (fields.size() - 2 != len) {
            throw ParseError(lineno, "declared length " + std::to_string(len) + " but " +
                                         std::to_string(fields.size() - 2) + " symbols present");
        }
        Trace t;
        t.type_label = static_cast<int>(fields[0]);
        t.symbols.reserve(len);
        for (std::size_t i = 2; i < fields.size(); ++i) {
            if (fields[i] < 0 || fields[i] >= ts.alphabet_size) {
                throw ParseError(lineno, "symbol " + std::to_string(fields[i]) + " outside alphabet of size " +
                                             std::to_string(ts.alphabet_size));
            }
            t.symbols.push_back(static_cast<Symbol>(fields[i]));
        }
        ts.traces.push_back(std::move(t));
    }

    if (ts.traces.size() != declared) {
        throw ParseError(lineno, "header declares " + std::to_string(declared) + " traces but " +
                                     std::to_string(ts.traces.size()) + " present");
    }
    return ts;
}

TraceSet parse_abbadingo(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_abbadingo(in);
}

TraceSet read_abbadingo_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return parse_abbadingo(in);
}

std::string write_abbadingo(const TraceSet& ts) {
    std::ostringstream out;
    out << ts.traces.size() << ' ' << ts.alphabet_size << '\n';
    for (const auto& t : ts.traces) {
        out << t.type_label << ' ' << t.symbols.size();
        for (Symbol s : t.symbols) out << ' ' << s;
        out << '\n';
    }
    return out.str();
}

}  // namespace pdfa
