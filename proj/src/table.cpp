/*
 * Copyright 2026 The xorcim Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "xorcim/table.hpp"

#include <cmath>
#include <cstdio>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "xorcim/error.hpp"

namespace xorcim {
namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + '"';
}

}  // namespace

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns_.size()) fail(ErrorCode::DimensionMismatch, "table row width differs from header");
  rows_.push_back(std::move(row));
}

void Table::write_csv(std::ostream& out) const {
  std::ostringstream buf;
  buf << std::setprecision(17);
  for (std::size_t i = 0; i < columns_.size(); ++i) buf << (i ? "," : "") << csv_escape(columns_[i]);
  buf << '\n';
  for (const auto& row : rows_) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) buf << ',';
      std::visit(
          [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::string>) {
              buf << csv_escape(v);
            } else if constexpr (std::is_same_v<T, bool>) {
              buf << (v ? 1 : 0);
            } else {
              buf << v;
            }
          },
          row[i]);
    }
    buf << '\n';
  }
  out << buf.str();
}

void Table::write_json(std::ostream& out) const {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& row : rows_) {
    nlohmann::ordered_json obj;
    for (std::size_t i = 0; i < row.size(); ++i) {
      std::visit([&](const auto& v) { obj[columns_[i]] = v; }, row[i]);
    }
    arr.push_back(std::move(obj));
  }
  out << arr.dump(2) << '\n';
}

void Table::write(std::ostream& out, OutputFormat format) const {
  if (format == OutputFormat::Csv) {
    write_csv(out);
  } else {
    write_json(out);
  }
}

std::string format_current(double amps) {
  struct Unit {
    double scale;
    const char* name;
  };
  static constexpr Unit units[] = {{1.0, "A"}, {1e-3, "mA"}, {1e-6, "uA"}, {1e-9, "nA"}, {1e-12, "pA"}, {1e-15, "fA"}};
  const double mag = std::abs(amps);
  const Unit* pick = &units[5];
  for (const auto& u : units) {
    if (mag >= u.scale) {
      pick = &u;
      break;
    }
  }
  if (amps == 0.0) pick = &units[0];
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.4g %s", amps / pick->scale, pick->name);
  return buf;
}

}  // namespace xorcim
