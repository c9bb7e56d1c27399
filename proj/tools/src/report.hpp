/*
 * Copyright 2026 The elmatch Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Report assembly shared by every subcommand: one object feeds the text
// table, the CSV file and the JSON document so the three never disagree.
#ifndef ELMATCH_TOOLS_REPORT_HPP
#define ELMATCH_TOOLS_REPORT_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

namespace elmatch::cli {

struct OutputOptions {
  std::string csv_path;
  std::string json_path;
  bool full_precision = false;
};

/// 6 significant digits, or 17 with --full-precision.
std::string format_number(double x, bool full);

class Report {
public:
  Report(std::string command, bool full_precision)
      : command_(std::move(command)), full_(full_precision) {}

  /// Echoed into every sink. Values keep their JSON type so that a JSON
  /// report can be fed back through --config.
  void config(const std::string& key, nlohmann::json value);

  /// A key/value line of the text table, also stored under result[key].
  void row(const std::string& key, double value);
  void row(const std::string& key, const std::string& value);
  void row(const std::string& key, nlohmann::json json_value, const std::string& text);

  /// Free text printed after the key/value rows (text sink only).
  void note(const std::string& line) { notes_.push_back(line); }

  /// Tabular section: header plus rows, printed aligned and written to CSV.
  void table(std::vector<std::string> header, std::vector<std::vector<std::string>> rows,
             nlohmann::json json_rows);

  nlohmann::json& result() { return result_; }
  bool full() const { return full_; }
  std::string num(double x) const { return format_number(x, full_); }

  void write_text(std::ostream& out) const;
  void write_csv(std::ostream& out) const;
  nlohmann::json to_json() const;

  /// Text to `out`; CSV and JSON to their paths when set ("-" is stdout).
  void emit(const OutputOptions& opts, std::ostream& out) const;

private:
  std::string command_;
  bool full_;
  nlohmann::json config_ = nlohmann::json::object();
  std::vector<std::string> config_order_;
  std::vector<std::pair<std::string, std::string>> rows_;
  std::vector<std::string> notes_;
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> table_;
  nlohmann::json result_ = nlohmann::json::object();
};

} // namespace elmatch::cli

#endif
