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

#ifndef GOLDENBENCH_ANALYTICS_TABLE_H_
#define GOLDENBENCH_ANALYTICS_TABLE_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace goldenbench::analytics {

enum class OutputFormat {
  // Human-readable, pipe-delimited, numbers at the column's fixed decimals.
  kTable,
  // RFC 4180 CSV with a header row; numbers in shortest round-trip form.
  kCsv,
  // One JSON object per row and line.
  kRecords,
};

std::string_view to_string(OutputFormat format);
// Accepts "table", "csv", "records"; throws Error otherwise.
OutputFormat parse_output_format(std::string_view text);

// Shortest decimal form that parses back to the same double.
std::string format_roundtrip(double value);
// Fixed-point with `decimals` digits.
std::string format_fixed(double value, int decimals);
std::string format_scientific(double value, int decimals);

class Table {
 public:
  using Value = std::variant<std::monostate, std::string, double, std::int64_t>;

  struct Column {
    std::string name;
    // Digits after the point for doubles in kTable output.
    int decimals = 3;
    // kTable output uses %.<decimals>e instead of fixed point.
    bool scientific = false;
  };

  explicit Table(std::vector<Column> columns);

  // Throws Error when the row width differs from the column count.
  void add_row(std::vector<Value> row);

  std::size_t row_count() const { return rows_.size(); }
  std::string render(OutputFormat format) const;

 private:
  std::string render_table() const;
  std::string render_csv() const;
  std::string render_records() const;

  std::vector<Column> columns_;
  std::vector<std::vector<Value>> rows_;
};

}  // namespace goldenbench::analytics

#endif  // GOLDENBENCH_ANALYTICS_TABLE_H_
