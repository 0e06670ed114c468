#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "jssp/model.hpp"

namespace jssp {

/// Malformed instance, solution or manifest text. Line and column are
/// 1-based; column 0 means "the line as a whole".
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, const std::string& message);

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

enum class InstanceFormat { Standard, Taillard, Auto };

/// OR-Library layout: optional '#' comment lines, a line "n m", then n job
/// lines of m "machine duration" pairs with 0-indexed machines.
Instance parse_standard(std::string_view text);

/// Taillard layout: a header line whose first two integers are n and m
/// (further fields ignored), an n x m duration matrix, then an n x m matrix
/// of 1-indexed machines. Lines that do not start with an integer (such as
/// "Times" or "Machines") are skipped.
Instance parse_taillard(std::string_view text);

/// Standard first, Taillard as fallback for InstanceFormat::Auto.
Instance parse_instance(std::string_view text, InstanceFormat format);

InstanceFormat parse_format_name(std::string_view name);

std::string read_text_file(const std::filesystem::path& path);
Instance load_instance(const std::filesystem::path& path,
                       InstanceFormat format = InstanceFormat::Auto);

std::string format_standard(const Instance& inst);
std::string format_taillard(const Instance& inst);

/// One line per machine listing operation ids in processing order; blank
/// and '#' lines are ignored. Throws ParseError unless the result is a valid
/// Solution for `inst`.
Solution parse_solution(const Instance& inst, std::string_view text);
std::string format_solution(const Solution& sol);

}  // namespace jssp
