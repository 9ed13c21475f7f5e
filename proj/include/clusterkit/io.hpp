#pragma once

#include <cerrno>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "clusterkit/clustering.hpp"
#include "clusterkit/dataset.hpp"

namespace clusterkit {

/// Malformed or unreadable input data (as opposed to bad configuration).
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

/// A token is numeric iff it parses completely as a finite decimal real.
/// Hex floats and inf/nan spellings count as labels, not numbers.
inline bool parse_full_double(const std::string& tok, double& out) {
  if (tok.empty()) return false;
  for (char ch : tok) {
    if (ch == 'x' || ch == 'X') return false;
  }
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(tok.c_str(), &end);
  if (end != tok.c_str() + tok.size()) return false;
  if (!std::isfinite(v)) return false;
  out = v;
  return true;
}

inline bool parse_full_int64(const std::string& tok, long long& out) {
  if (tok.empty()) return false;
  errno = 0;
  char* end = nullptr;
  const long long v = std::strtoll(tok.c_str(), &end, 10);
  if (end != tok.c_str() + tok.size() || errno == ERANGE) return false;
  out = v;
  return true;
}

inline std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> tokens;
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) tokens.push_back(tok);
  return tokens;
}

inline bool is_comment_or_blank(const std::string& line) {
  for (char ch : line) {
    if (ch == ' ' || ch == '\t' || ch == '\r') continue;
    return ch == '#';
  }
  return true;  // blank
}

}  // namespace detail

/// Reads one point per line: a leading run of numeric tokens forms the
/// coordinates, any remaining tokens form the label. Lines whose first
/// non-blank character is '#' and blank lines are skipped. All rows must
/// agree on dimensionality, and a label may not be followed by more
/// numbers.
inline Dataset parse_points(std::istream& in) {
  std::vector<double> flat;
  std::vector<std::string> labels;
  bool any_label = false;
  std::size_t n = 0;
  std::size_t d = 0;
  std::size_t line_no = 0;
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::is_comment_or_blank(line)) continue;
    const std::vector<std::string> tokens = detail::split_ws(line);
    std::size_t coords = 0;
    double value = 0.0;
    while (coords < tokens.size() && detail::parse_full_double(tokens[coords], value)) {
      flat.push_back(value);
      ++coords;
    }
    if (coords == 0) {
      throw DataError("line " + std::to_string(line_no) +
                      ": no numeric columns before \"" + tokens[0] + "\"");
    }
    std::string label;
    for (std::size_t t = coords; t < tokens.size(); ++t) {
      if (detail::parse_full_double(tokens[t], value)) {
        throw DataError("line " + std::to_string(line_no) +
                        ": numeric token \"" + tokens[t] + "\" after label text");
      }
      if (!label.empty()) label += ' ';
      label += tokens[t];
    }
    if (n == 0) {
      d = coords;
    } else if (coords != d) {
      throw DataError("line " + std::to_string(line_no) + ": expected " +
                      std::to_string(d) + " coordinates, found " +
                      std::to_string(coords));
    }
    if (!label.empty()) any_label = true;
    labels.push_back(std::move(label));
    ++n;
  }
  if (n == 0) {
    throw DataError("no data rows");
  }
  if (!any_label) labels.clear();
  try {
    return Dataset(n, d, std::move(flat), std::move(labels));
  } catch (const std::invalid_argument& e) {
    throw DataError(e.what());
  }
}

inline Dataset parse_points(const std::string& text) {
  std::istringstream in(text);
  return parse_points(in);
}

inline Dataset parse_points_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw DataError("cannot open input file \"" + path + "\"");
  }
  return parse_points(in);
}

/// One line of space-separated per-point cluster numbers in input order
/// (noise as -1), optionally followed by a label, ending in a newline.
inline std::string write_assignment(const Clustering& c,
                                    const std::string& run_label = "") {
  if (c.assignment.empty()) {
    throw std::invalid_argument("write_assignment: empty clustering");
  }
  std::string out;
  for (std::size_t i = 0; i < c.assignment.size(); ++i) {
    if (i != 0) out += ' ';
    out += std::to_string(c.assignment[i]);
  }
  if (!run_label.empty()) {
    out += ' ';
    out += run_label;
  }
  out += '\n';
  return out;
}

struct ParsedAssignment {
  std::vector<int> assignment;
  std::string label;
};

/// Companion reader for write_assignment lines: a leading run of integer
/// tokens, then an optional label. Negative numbers mean noise.
inline ParsedAssignment parse_assignment(const std::string& line) {
  const std::vector<std::string> tokens = detail::split_ws(line);
  ParsedAssignment r;
  std::size_t t = 0;
  long long v = 0;
  while (t < tokens.size() && detail::parse_full_int64(tokens[t], v)) {
    r.assignment.push_back(static_cast<int>(v));
    ++t;
  }
  if (r.assignment.empty()) {
    throw DataError("assignment line has no integer columns");
  }
  for (; t < tokens.size(); ++t) {
    if (!r.label.empty()) r.label += ' ';
    r.label += tokens[t];
  }
  return r;
}

/// Expands an integer range expression. Plain values pass through; the
/// fill token ".." continues from the last two values' step up to and
/// including the next value: "1,2,..,10,20,..,100,200,..,1000" yields
/// 1..10, then 20..100 by 10, then 200..1000 by 100. The result must be
/// strictly increasing (exact repeats collapse) and positive, and every
/// fill must land exactly on its endpoint.
inline std::vector<std::uint64_t> parse_int_range(const std::string& text) {
  std::vector<std::string> tokens;
  std::string cur;
  for (char ch : text) {
    if (ch == ',') {
      tokens.push_back(cur);
      cur.clear();
    } else if (ch != ' ' && ch != '\t') {
      cur += ch;
    }
  }
  tokens.push_back(cur);

  auto parse_value = [&](const std::string& tok) -> std::uint64_t {
    long long v = 0;
    if (!detail::parse_full_int64(tok, v) || v < 1) {
      throw std::invalid_argument("int range: expected a positive integer, got \"" +
                                  tok + "\"");
    }
    return static_cast<std::uint64_t>(v);
  };

  std::vector<std::uint64_t> vals;
  for (std::size_t t = 0; t < tokens.size(); ++t) {
    if (tokens[t] == "..") {
      if (vals.size() < 2) {
        throw std::invalid_argument("int range: \"..\" needs two preceding values");
      }
      if (t + 1 >= tokens.size() || tokens[t + 1] == "..") {
        throw std::invalid_argument("int range: \"..\" needs a following value");
      }
      const std::uint64_t target = parse_value(tokens[++t]);
      const std::uint64_t last = vals[vals.size() - 1];
      const std::uint64_t prev = vals[vals.size() - 2];
      if (last <= prev) {
        throw std::invalid_argument("int range: fill step must be positive");
      }
      const std::uint64_t step = last - prev;
      if (target <= last || (target - last) % step != 0) {
        throw std::invalid_argument("int range: fill does not land exactly on " +
                                    std::to_string(target));
      }
      for (std::uint64_t v = last + step; v <= target; v += step) {
        vals.push_back(v);
      }
    } else {
      vals.push_back(parse_value(tokens[t]));
    }
  }

  std::vector<std::uint64_t> out;
  for (std::uint64_t v : vals) {
    if (!out.empty() && v == out.back()) continue;  // shared boundary
    if (!out.empty() && v < out.back()) {
      throw std::invalid_argument("int range: values must be strictly increasing");
    }
    out.push_back(v);
  }
  return out;
}

}  // namespace clusterkit
