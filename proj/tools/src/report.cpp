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

#include "report.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "elmatch/error.hpp"

namespace elmatch::cli {

std::string format_number(double x, bool full) {
  char buf[64];
  std::snprintf(buf, sizeof buf, full ? "%.17g" : "%.6g", x);
  return buf;
}

namespace {

std::string config_text(const nlohmann::json& v) {
  return v.is_string() ? v.get<std::string>() : v.dump();
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void write_file(const std::string& path, const std::string& body, std::ostream& out) {
  if (path == "-") {
    out << body;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::Io, "cannot write '" + path + "'");
  f << body;
  if (!f) throw Error(ErrorKind::Io, "write failed for '" + path + "'");
}

} // namespace

void Report::config(const std::string& key, nlohmann::json value) {
  if (!config_.contains(key)) config_order_.push_back(key);
  config_[key] = std::move(value);
}

void Report::row(const std::string& key, double value) {
  row(key, value, num(value));
}

void Report::row(const std::string& key, const std::string& value) {
  row(key, value, value);
}

void Report::row(const std::string& key, nlohmann::json json_value, const std::string& text) {
  rows_.emplace_back(key, text);
  result_[key] = std::move(json_value);
}

void Report::table(std::vector<std::string> header,
                   std::vector<std::vector<std::string>> rows, nlohmann::json json_rows) {
  header_ = std::move(header);
  table_ = std::move(rows);
  result_["rows"] = std::move(json_rows);
}

void Report::write_text(std::ostream& out) const {
  out << "# elmatch " << command_ << "\n";
  for (const auto& key : config_order_) {
    out << "# " << key << " = " << config_text(config_.at(key)) << "\n";
  }
  std::size_t width = 0;
  for (const auto& [k, v] : rows_) width = std::max(width, k.size());
  for (const auto& [k, v] : rows_) {
    out << k << std::string(width - k.size() + 2, ' ') << v << "\n";
  }
  if (!header_.empty()) {
    std::vector<std::size_t> w(header_.size(), 0);
    for (std::size_t i = 0; i < header_.size(); ++i) w[i] = header_[i].size();
    for (const auto& r : table_) {
      for (std::size_t i = 0; i < r.size() && i < w.size(); ++i) w[i] = std::max(w[i], r[i].size());
    }
    auto line = [&](const std::vector<std::string>& r) {
      for (std::size_t i = 0; i < r.size(); ++i) {
        out << r[i];
        if (i + 1 < r.size()) out << std::string(w[i] - r[i].size() + 2, ' ');
      }
      out << "\n";
    };
    if (!rows_.empty()) out << "\n";
    line(header_);
    for (const auto& r : table_) line(r);
  }
  for (const auto& n : notes_) out << n << "\n";
}

void Report::write_csv(std::ostream& out) const {
  for (const auto& key : config_order_) {
    out << "# " << key << " = " << config_text(config_.at(key)) << "\n";
  }
  if (!header_.empty()) {
    for (std::size_t i = 0; i < header_.size(); ++i) {
      out << (i ? "," : "") << csv_field(header_[i]);
    }
    out << "\n";
    for (const auto& r : table_) {
      for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << csv_field(r[i]);
      out << "\n";
    }
    return;
  }
  out << "key,value\n";
  for (const auto& [k, v] : rows_) out << csv_field(k) << "," << csv_field(v) << "\n";
}

nlohmann::json Report::to_json() const {
  return {{"command", command_}, {"config", config_}, {"result", result_}};
}

void Report::emit(const OutputOptions& opts, std::ostream& out) const {
  write_text(out);
  if (!opts.csv_path.empty()) {
    std::ostringstream s;
    write_csv(s);
    write_file(opts.csv_path, s.str(), out);
  }
  if (!opts.json_path.empty()) {
    write_file(opts.json_path, to_json().dump(2) + "\n", out);
  }
}

} // namespace elmatch::cli
