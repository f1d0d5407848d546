// Copyright 2026 The gazeq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gazeq/error.hpp"
#include "gazeq/util.hpp"

namespace gazeq::csv {

// RFC 4180 subset: comma separated, optional double quotes, "" escapes a
// quote inside a quoted field. No embedded newlines.
inline std::vector<std::string> split_line(std::string_view line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  fields.push_back(std::move(cur));
  return fields;
}

inline std::string quote(std::string_view field) {
  if (field.find_first_of(",\"") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

class Table {
 public:
  /// Parses `text`; `required` columns must appear in the header.
  Table(std::string_view text, const std::vector<std::string>& required, std::string source)
      : source_(std::move(source)) {
    std::size_t pos = 0;
    bool header_done = false;
    std::size_t line_no = 0;
    while (pos <= text.size()) {
      auto nl = text.find('\n', pos);
      std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
      pos = (nl == std::string_view::npos) ? text.size() + 1 : nl + 1;
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      if (trim(line).empty()) continue;
      auto fields = split_line(line);
      if (!header_done) {
        if (line_no == 1 && fields[0].size() >= 3 && fields[0].compare(0, 3, "\xEF\xBB\xBF") == 0)
          fields[0].erase(0, 3);
        for (std::size_t i = 0; i < fields.size(); ++i) columns_[trim(fields[i])] = i;
        for (const auto& col : required) {
          if (!columns_.count(col))
            fail(ErrorKind::SchemaError, source_ + ": missing column '" + col + "'", col);
        }
        header_done = true;
        continue;
      }
      rows_.push_back(std::move(fields));
      line_numbers_.push_back(line_no);
    }
    if (!header_done) fail(ErrorKind::SchemaError, source_ + ": empty file");
  }

  std::size_t size() const { return rows_.size(); }
  bool has_column(const std::string& name) const { return columns_.count(name) != 0; }

  std::optional<std::string> get(std::size_t row, const std::string& column) const {
    auto it = columns_.find(column);
    if (it == columns_.end()) return std::nullopt;
    const auto& r = rows_[row];
    if (it->second >= r.size()) return std::nullopt;
    std::string v = trim(r[it->second]);
    if (v.empty()) return std::nullopt;
    return v;
  }

  std::string text(std::size_t row, const std::string& column) const {
    auto v = get(row, column);
    if (!v) fail(ErrorKind::SchemaError, where(row) + ": missing value for '" + column + "'", column);
    return *v;
  }

  double number(std::size_t row, const std::string& column) const {
    auto v = parse_number(text(row, column));
    if (!v) fail(ErrorKind::SchemaError, where(row) + ": '" + column + "' is not a number", column);
    return *v;
  }

  std::optional<double> optional_number(std::size_t row, const std::string& column) const {
    auto raw = get(row, column);
    if (!raw) return std::nullopt;
    auto v = parse_number(*raw);
    if (!v) fail(ErrorKind::SchemaError, where(row) + ": '" + column + "' is not a number", column);
    return v;
  }

  std::string where(std::size_t row) const {
    return source_ + ":" + std::to_string(line_numbers_[row]);
  }

 private:
  std::string source_;
  std::map<std::string, std::size_t> columns_;
  std::vector<std::vector<std::string>> rows_;
  std::vector<std::size_t> line_numbers_;
};

}  // namespace gazeq::csv
