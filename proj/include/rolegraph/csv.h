// Copyright 2026 The Rolegraph Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Small CSV helpers shared by the file readers and writers.

#ifndef ROLEGRAPH_CSV_H_
#define ROLEGRAPH_CSV_H_

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <optional>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include <fmt/format.h>

#include "rolegraph/errors.h"

namespace rolegraph {

inline std::string_view Trim(std::string_view s) {
  const auto not_space = [](char c) {
    return c != ' ' && c != '\t' && c != '\r' && c != '\n';
  };
  size_t b = 0;
  while (b < s.size() && !not_space(s[b])) ++b;
  size_t e = s.size();
  while (e > b && !not_space(s[e - 1])) --e;
  return s.substr(b, e - b);
}

// Splits one CSV record. Double-quoted fields may contain commas and
// doubled quotes; embedded newlines are not supported.
inline std::vector<std::string> SplitCsvLine(std::string_view line,
                                             int64_t line_number = 0) {
  std::vector<std::string> fields;
  std::string current;
  bool quoted = false;
  bool field_was_quoted = false;
  for (size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          current.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        current.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
      field_was_quoted = true;
    } else if (c == ',') {
      fields.push_back(field_was_quoted ? current
                                        : std::string(Trim(current)));
      current.clear();
      field_was_quoted = false;
    } else if (c != '\r') {
      current.push_back(c);
    }
  }
  if (quoted) throw ParseError("unterminated quoted field", line_number);
  fields.push_back(field_was_quoted ? current : std::string(Trim(current)));
  return fields;
}

inline std::string EscapeCsvField(std::string_view field) {
  if (field.find_first_of(",\"\n") == std::string_view::npos) {
    return std::string(field);
  }
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

inline std::optional<double> ParseDouble(std::string_view s) {
  s = Trim(s);
  if (s.empty()) return std::nullopt;
  if (s.front() == '+') s.remove_prefix(1);
  double value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

inline std::optional<int64_t> ParseInt(std::string_view s) {
  s = Trim(s);
  if (s.empty()) return std::nullopt;
  if (s.front() == '+') s.remove_prefix(1);
  int64_t value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

// Shortest representation that round-trips; identical bytes for identical
// doubles, which the reproducibility contract relies on.
inline std::string FormatDouble(double x) {
  if (std::isnan(x)) return "nan";
  if (x == 0.0) return "0";  // folds -0
  return fmt::format("{}", x);
}

inline std::ofstream OpenForWrite(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  return out;
}

inline std::ifstream OpenForRead(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "': no such readable file");
  return in;
}

}  // namespace rolegraph

#endif  // ROLEGRAPH_CSV_H_
