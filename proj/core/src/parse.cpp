#include "jssp/parse.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>
#include <vector>

namespace jssp {

ParseError::ParseError(int line, int column, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) +
                         (column > 0 ? ", column " + std::to_string(column) : "") +
                         ": " + message),
      line_(line),
      column_(column) {}

namespace {

struct Token {
  std::string_view text;
  int column;  // 1-based
};

struct Line {
  int number;  // 1-based
  std::vector<Token> tokens;
};

// Non-blank, non-comment lines split on whitespace.
std::vector<Line> content_lines(std::string_view text) {
  std::vector<Line> lines;
  int number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(start, end - start);
    ++number;
    Line line{number, {}};
    std::size_t i = 0;
    while (i < raw.size()) {
      while (i < raw.size() && std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
      if (i >= raw.size()) break;
      const std::size_t b = i;
      while (i < raw.size() && !std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
      line.tokens.push_back({raw.substr(b, i - b), static_cast<int>(b) + 1});
    }
    const bool comment = !line.tokens.empty() && line.tokens.front().text.front() == '#';
    if (!line.tokens.empty() && !comment) lines.push_back(std::move(line));
    if (end == text.size()) break;
    start = end + 1;
  }
  return lines;
}

std::optional<std::int64_t> to_int(std::string_view s) {
  std::int64_t v = 0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || first == last) return std::nullopt;
  return v;
}

std::int64_t expect_int(const Line& line, const Token& tok) {
  auto v = to_int(tok.text);
  if (!v) {
    throw ParseError(line.number, tok.column,
                     "expected an integer, found '" + std::string(tok.text) + "'");
  }
  return *v;
}

int last_line_number(std::string_view text) {
  return static_cast<int>(std::count(text.begin(), text.end(), '\n')) + 1;
}

void check_dimensions(const Line& line, std::int64_t n, std::int64_t m) {
  if (n <= 0) throw ParseError(line.number, line.tokens[0].column, "job count must be positive");
  if (m <= 0) throw ParseError(line.number, line.tokens[1].column, "machine count must be positive");
}

}  // namespace

Instance parse_standard(std::string_view text) {
  const auto lines = content_lines(text);
  if (lines.empty()) throw ParseError(1, 0, "empty instance");
  const Line& header = lines.front();
  if (header.tokens.size() != 2) {
    throw ParseError(header.number, 0, "header must be \"n m\"");
  }
  const std::int64_t n = expect_int(header, header.tokens[0]);
  const std::int64_t m = expect_int(header, header.tokens[1]);
  check_dimensions(header, n, m);

  std::vector<Route> routes;
  for (std::int64_t j = 0; j < n; ++j) {
    const std::size_t idx = static_cast<std::size_t>(j) + 1;
    if (idx >= lines.size()) {
      throw ParseError(last_line_number(text), 0,
                       "expected " + std::to_string(n) + " job lines, found " +
                           std::to_string(j));
    }
    const Line& line = lines[idx];
    if (line.tokens.size() != static_cast<std::size_t>(2 * m)) {
      const int col = line.tokens.size() > static_cast<std::size_t>(2 * m)
                          ? line.tokens[2 * m].column
                          : 0;
      throw ParseError(line.number, col,
                       "job " + std::to_string(j) + ": expected " + std::to_string(m) +
                           " (machine, duration) pairs, found " +
                           std::to_string(line.tokens.size()) + " numbers");
    }
    Route route;
    for (std::int64_t i = 0; i < m; ++i) {
      const Token& mt = line.tokens[2 * i];
      const Token& dt = line.tokens[2 * i + 1];
      const std::int64_t machine = expect_int(line, mt);
      const std::int64_t duration = expect_int(line, dt);
      if (machine < 0 || machine >= m) {
        throw ParseError(line.number, mt.column,
                         "machine " + std::to_string(machine) + " outside [0, " +
                             std::to_string(m) + ")");
      }
      if (duration < 0) throw ParseError(line.number, dt.column, "negative duration");
      route.push_back({static_cast<int>(machine), duration});
    }
    routes.push_back(std::move(route));
  }
  if (lines.size() > static_cast<std::size_t>(n) + 1) {
    throw ParseError(lines[n + 1].number, 0, "unexpected content after the last job");
  }
  try {
    return Instance::build(static_cast<int>(n), static_cast<int>(m), routes);
  } catch (const std::invalid_argument& e) {
    throw ParseError(header.number, 0, e.what());
  }
}

Instance parse_taillard(std::string_view text) {
  std::vector<Line> lines;
  for (Line& line : content_lines(text)) {
    if (to_int(line.tokens.front().text)) lines.push_back(std::move(line));
  }
  if (lines.empty()) throw ParseError(1, 0, "no numeric header line");
  const Line& header = lines.front();
  if (header.tokens.size() < 2) {
    throw ParseError(header.number, 0, "header must start with \"n m\"");
  }
  const std::int64_t n = expect_int(header, header.tokens[0]);
  const std::int64_t m = expect_int(header, header.tokens[1]);
  check_dimensions(header, n, m);

  const std::size_t rows = static_cast<std::size_t>(2 * n);
  if (lines.size() - 1 < rows) {
    throw ParseError(last_line_number(text), 0,
                     "expected " + std::to_string(rows) + " matrix rows, found " +
                         std::to_string(lines.size() - 1));
  }
  if (lines.size() - 1 > rows) {
    throw ParseError(lines[rows + 1].number, 0, "unexpected content after the machine matrix");
  }
  auto row_values = [&](const Line& line) {
    if (line.tokens.size() != static_cast<std::size_t>(m)) {
      throw ParseError(line.number, 0,
                       "expected " + std::to_string(m) + " values, found " +
                           std::to_string(line.tokens.size()));
    }
    std::vector<std::int64_t> out;
    for (const Token& t : line.tokens) out.push_back(expect_int(line, t));
    return out;
  };

  std::vector<Route> routes(n);
  for (std::int64_t j = 0; j < n; ++j) {
    const Line& dline = lines[1 + j];
    const Line& mline = lines[1 + n + j];
    const auto durations = row_values(dline);
    const auto machines = row_values(mline);
    for (std::int64_t i = 0; i < m; ++i) {
      if (durations[i] < 0) {
        throw ParseError(dline.number, dline.tokens[i].column, "negative duration");
      }
      if (machines[i] < 1 || machines[i] > m) {
        throw ParseError(mline.number, mline.tokens[i].column,
                         "machine " + std::to_string(machines[i]) + " outside [1, " +
                             std::to_string(m) + "]");
      }
      routes[j].push_back({static_cast<int>(machines[i] - 1), durations[i]});
    }
  }
  try {
    return Instance::build(static_cast<int>(n), static_cast<int>(m), routes);
  } catch (const std::invalid_argument& e) {
    throw ParseError(header.number, 0, e.what());
  }
}

Instance parse_instance(std::string_view text, InstanceFormat format) {
  switch (format) {
    case InstanceFormat::Standard: return parse_standard(text);
    case InstanceFormat::Taillard: return parse_taillard(text);
    case InstanceFormat::Auto: break;
  }
  try {
    return parse_standard(text);
  } catch (const ParseError& standard_error) {
    try {
      return parse_taillard(text);
    } catch (const ParseError& taillard_error) {
      throw ParseError(standard_error.line(), standard_error.column(),
                       std::string("not a standard-format instance (") +
                           standard_error.what() + ") nor a Taillard-format one (" +
                           taillard_error.what() + ")");
    }
  }
}

InstanceFormat parse_format_name(std::string_view name) {
  if (name == "std" || name == "standard") return InstanceFormat::Standard;
  if (name == "ta" || name == "taillard") return InstanceFormat::Taillard;
  if (name == "auto" || name == "-") return InstanceFormat::Auto;
  throw std::invalid_argument("unknown instance format '" + std::string(name) +
                              "' (expected std, ta or auto)");
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Instance load_instance(const std::filesystem::path& path, InstanceFormat format) {
  const std::string text = read_text_file(path);
  try {
    return parse_instance(text, format);
  } catch (const ParseError& e) {
    throw ParseError(e.line(), e.column(), path.string() + ": " + e.what());
  }
}

std::string format_standard(const Instance& inst) {
  std::ostringstream out;
  out << inst.n_jobs() << ' ' << inst.n_machines() << '\n';
  for (int j = 0; j < inst.n_jobs(); ++j) {
    bool first = true;
    for (OpId op : inst.ops_of_job(j)) {
      if (!first) out << ' ';
      first = false;
      out << inst.machine(op) << ' ' << inst.duration(op);
    }
    out << '\n';
  }
  return out.str();
}

std::string format_taillard(const Instance& inst) {
  std::ostringstream out;
  out << inst.n_jobs() << ' ' << inst.n_machines() << "\nTimes\n";
  for (int j = 0; j < inst.n_jobs(); ++j) {
    bool first = true;
    for (OpId op : inst.ops_of_job(j)) {
      out << (first ? "" : " ") << inst.duration(op);
      first = false;
    }
    out << '\n';
  }
  out << "Machines\n";
  for (int j = 0; j < inst.n_jobs(); ++j) {
    bool first = true;
    for (OpId op : inst.ops_of_job(j)) {
      out << (first ? "" : " ") << inst.machine(op) + 1;
      first = false;
    }
    out << '\n';
  }
  return out.str();
}

Solution parse_solution(const Instance& inst, std::string_view text) {
  const auto lines = content_lines(text);
  if (static_cast<int>(lines.size()) != inst.n_machines()) {
    throw ParseError(lines.empty() ? 1 : lines.back().number, 0,
                     "expected " + std::to_string(inst.n_machines()) +
                         " machine lines, found " + std::to_string(lines.size()));
  }
  Solution sol;
  for (int k = 0; k < inst.n_machines(); ++k) {
    const Line& line = lines[k];
    std::vector<OpId> seq;
    for (const Token& t : line.tokens) {
      const std::int64_t op = expect_int(line, t);
      if (op < 0 || op >= inst.n_ops() || inst.machine(static_cast<OpId>(op)) != k) {
        throw ParseError(line.number, t.column,
                         "operation " + std::to_string(op) + " does not run on machine " +
                             std::to_string(k));
      }
      seq.push_back(static_cast<OpId>(op));
    }
    sol.perm.push_back(std::move(seq));
  }
  if (!is_valid_for(inst, sol)) {
    throw ParseError(lines.front().number, 0,
                     "machine sequences are not permutations of each machine's operations");
  }
  return sol;
}

std::string format_solution(const Solution& sol) { return to_string(sol); }

}  // namespace jssp
