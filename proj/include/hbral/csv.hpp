#pragma once

#include <charconv>
#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "hbral/evaluation.hpp"
#include "hbral/simulator.hpp"

// CSV emission and parsing for the experiment artifacts. Doubles are
// written with std::to_chars (shortest form that parses back to the
// same bits), so parse(emit(x)) == x holds exactly.
//
//   trace CSV  - minute,hidden_state,observation_real,observation_symbol
//   states CSV - minute,estimated_state,is_<label>...  (one 0/1 column per state)
//   error CSV  - minute,real_state,predicted_state,error

namespace hbral {
namespace csv_detail {

inline std::string format_double(double value) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

inline std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(field);
            field.clear();
        } else if (c != '\r') {
            field += c;
        }
    }
    fields.push_back(field);
    return fields;
}

inline int parse_int(const std::string& s, const std::string& where) {
    int value{};
    auto res = std::from_chars(s.data(), s.data() + s.size(), value);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw std::runtime_error(where + ": expected an integer, got '" + s + "'");
    return value;
}

inline double parse_double(const std::string& s, const std::string& where) {
    double value{};
    auto res = std::from_chars(s.data(), s.data() + s.size(), value);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw std::runtime_error(where + ": expected a number, got '" + s + "'");
    return value;
}

inline void expect_columns(const std::vector<std::string>& fields, std::size_t n,
                           std::size_t line_no) {
    if (fields.size() != n)
        throw std::runtime_error("csv line " + std::to_string(line_no) + ": expected " +
                                 std::to_string(n) + " columns, got " +
                                 std::to_string(fields.size()));
}

}  // namespace csv_detail

inline void write_trace_csv(std::ostream& out, const SimulationTrace& trace) {
    out << "minute,hidden_state,observation_real,observation_symbol\n";
    for (std::size_t i = 0; i < trace.times.size(); ++i)
        out << trace.times[i] << ',' << trace.hidden_states[i] << ','
            << csv_detail::format_double(trace.observations[i]) << ','
            << trace.quantized_observations[i] << '\n';
}

inline SimulationTrace read_trace_csv(std::istream& in) {
    SimulationTrace trace;
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("csv: missing header line");
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        auto fields = csv_detail::split_line(line);
        csv_detail::expect_columns(fields, 4, line_no);
        const std::string where = "csv line " + std::to_string(line_no);
        trace.times.push_back(csv_detail::parse_int(fields[0], where));
        trace.hidden_states.push_back(csv_detail::parse_int(fields[1], where));
        trace.observations.push_back(csv_detail::parse_double(fields[2], where));
        trace.quantized_observations.push_back(csv_detail::parse_int(fields[3], where));
    }
    return trace;
}

inline void write_states_csv(std::ostream& out, const std::vector<int>& times,
                             const std::vector<int>& states,
                             const std::vector<std::string>& state_labels) {
    out << "minute,estimated_state";
    for (const auto& label : state_labels) out << ",is_" << label;
    out << '\n';
    for (std::size_t i = 0; i < times.size(); ++i) {
        out << times[i] << ',' << states[i];
        for (std::size_t s = 0; s < state_labels.size(); ++s)
            out << ',' << (states[i] == static_cast<int>(s) ? 1 : 0);
        out << '\n';
    }
}

// Reads back (times, states); the indicator columns are redundant.
inline std::pair<std::vector<int>, std::vector<int>> read_states_csv(std::istream& in) {
    std::pair<std::vector<int>, std::vector<int>> result;
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("csv: missing header line");
    const std::size_t n_columns = csv_detail::split_line(line).size();
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        auto fields = csv_detail::split_line(line);
        csv_detail::expect_columns(fields, n_columns, line_no);
        const std::string where = "csv line " + std::to_string(line_no);
        result.first.push_back(csv_detail::parse_int(fields[0], where));
        result.second.push_back(csv_detail::parse_int(fields[1], where));
    }
    return result;
}

inline void write_error_csv(std::ostream& out, const ErrorSeries& series) {
    out << "minute,real_state,predicted_state,error\n";
    for (std::size_t i = 0; i < series.times.size(); ++i)
        out << series.times[i] << ',' << series.real_states[i] << ','
            << series.predicted_states[i] << ',' << series.errors[i] << '\n';
}

inline ErrorSeries read_error_csv(std::istream& in) {
    ErrorSeries series;
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("csv: missing header line");
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        auto fields = csv_detail::split_line(line);
        csv_detail::expect_columns(fields, 4, line_no);
        const std::string where = "csv line " + std::to_string(line_no);
        series.times.push_back(csv_detail::parse_int(fields[0], where));
        series.real_states.push_back(csv_detail::parse_int(fields[1], where));
        series.predicted_states.push_back(csv_detail::parse_int(fields[2], where));
        series.errors.push_back(csv_detail::parse_int(fields[3], where));
    }
    return series;
}

}  // namespace hbral
