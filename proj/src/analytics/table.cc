// Copyright (c) 2026 goldenbench authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "goldenbench/analytics/table.h"

#include <algorithm>
#include <charconv>
#include <cstdio>

#include "goldenbench/error.h"
#include "json.hpp"

namespace goldenbench::analytics {

std::string_view to_string(OutputFormat format) {
  switch (format) {
    case OutputFormat::kTable:
      return "table";
    case OutputFormat::kCsv:
      return "csv";
    case OutputFormat::kRecords:
      return "records";
  }
  return "table";
}

OutputFormat parse_output_format(std::string_view text) {
  if (text == "table") return OutputFormat::kTable;
  if (text == "csv") return OutputFormat::kCsv;
  if (text == "records") return OutputFormat::kRecords;
  throw Error("unknown output format \"" + std::string(text) +
              "\" (expected table, csv or records)");
}

std::string format_roundtrip(double value) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, end);
}

std::string format_fixed(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, value);
  return buf;
}

std::string format_scientific(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*e", decimals, value);
  return buf;
}

Table::Table(std::vector<Column> columns) : columns_(std::move(columns)) {}

void Table::add_row(std::vector<Value> row) {
  if (row.size() != columns_.size()) {
    throw Error("table row has " + std::to_string(row.size()) +
                " cells, expected " + std::to_string(columns_.size()));
  }
  rows_.push_back(std::move(row));
}

std::string Table::render(OutputFormat format) const {
  switch (format) {
    case OutputFormat::kTable:
      return render_table();
    case OutputFormat::kCsv:
      return render_csv();
    case OutputFormat::kRecords:
      return render_records();
  }
  return {};
}

std::string Table::render_table() const {
  std::vector<std::vector<std::string>> cells;
  cells.reserve(rows_.size());
  std::vector<std::size_t> width(columns_.size());
  for (std::size_t c = 0; c < columns_.size(); ++c) {
    width[c] = columns_[c].name.size();
  }
  for (const auto& row : rows_) {
    std::vector<std::string> text(row.size());
    for (std::size_t c = 0; c < row.size(); ++c) {
      const Value& v = row[c];
      if (std::holds_alternative<std::monostate>(v)) {
        text[c] = "-";
      } else if (const auto* s = std::get_if<std::string>(&v)) {
        text[c] = *s;
      } else if (const auto* d = std::get_if<double>(&v)) {
        text[c] = columns_[c].scientific
                      ? format_scientific(*d, columns_[c].decimals)
                      : format_fixed(*d, columns_[c].decimals);
      } else {
        text[c] = std::to_string(std::get<std::int64_t>(v));
      }
      width[c] = std::max(width[c], text[c].size());
    }
    cells.push_back(std::move(text));
  }

  auto line = [&](const std::vector<std::string>& text) {
    std::string out;
    for (std::size_t c = 0; c < text.size(); ++c) {
      if (c > 0) out += " | ";
      out += text[c];
      if (c + 1 < text.size()) out.append(width[c] - text[c].size(), ' ');
    }
    out += '\n';
    return out;
  };

  std::vector<std::string> header;
  header.reserve(columns_.size());
  for (const auto& col : columns_) header.push_back(col.name);
  std::string out = line(header);
  for (std::size_t c = 0; c < columns_.size(); ++c) {
    if (c > 0) out += "-+-";
    out.append(width[c], '-');
  }
  out += '\n';
  for (const auto& text : cells) out += line(text);
  return out;
}

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

std::string Table::render_csv() const {
  std::string out;
  for (std::size_t c = 0; c < columns_.size(); ++c) {
    if (c > 0) out += ',';
    out += csv_escape(columns_[c].name);
  }
  out += '\n';
  for (const auto& row : rows_) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c > 0) out += ',';
      const Value& v = row[c];
      if (const auto* s = std::get_if<std::string>(&v)) {
        out += csv_escape(*s);
      } else if (const auto* d = std::get_if<double>(&v)) {
        out += format_roundtrip(*d);
      } else if (const auto* i = std::get_if<std::int64_t>(&v)) {
        out += std::to_string(*i);
      }
    }
    out += '\n';
  }
  return out;
}

std::string Table::render_records() const {
  std::string out;
  for (const auto& row : rows_) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t c = 0; c < row.size(); ++c) {
      const Value& v = row[c];
      auto& slot = obj[columns_[c].name];
      if (const auto* s = std::get_if<std::string>(&v)) {
        slot = *s;
      } else if (const auto* d = std::get_if<double>(&v)) {
        slot = *d;
      } else if (const auto* i = std::get_if<std::int64_t>(&v)) {
        slot = *i;
      } else {
        slot = nullptr;
      }
    }
    out += obj.dump();
    out += '\n';
  }
  return out;
}

}  // namespace goldenbench::analytics
