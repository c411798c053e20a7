// Copyright 2026 The blobflow Authors
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

#include "blobflow/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "blobflow/error.hpp"

namespace blobflow {

std::string format_real(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

void write_snapshot(std::ostream& out, const Density& rho, double time) {
  const Grid& g = rho.grid();
  out << "# r1=" << format_real(g.r1()) << " r2=" << format_real(g.r2()) << " n=" << g.size()
      << " t=" << format_real(time) << '\n';
  for (int i = 0; i < g.size(); ++i) {
    out << format_real(g.center(i)) << ',' << format_real(rho[i]) << '\n';
  }
}

void write_snapshot(const std::filesystem::path& path, const Density& rho, double time) {
  std::ofstream out(path);
  if (!out) {
    throw ParseError("cannot open " + path.string() + " for writing");
  }
  write_snapshot(out, rho, time);
  if (!out) {
    throw ParseError("write to " + path.string() + " failed");
  }
}

namespace {

double to_real(const std::string& text, const std::string& what) {
  char* end = nullptr;
  const double value = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size() || !std::isfinite(value)) {
    throw ParseError("bad " + what + " '" + text + "'");
  }
  return value;
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) {
    return {};
  }
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

RawSnapshot read_snapshot_values(std::istream& in) {
  std::map<std::string, std::string> keys;
  std::vector<std::pair<double, double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty()) {
      continue;
    }
    if (line.front() == '#') {
      if (!rows.empty()) {
        throw ParseError("header line after data rows");
      }
      std::istringstream fields(line.substr(1));
      std::string field;
      while (fields >> field) {
        auto eq = field.find('=');
        if (eq == std::string::npos) {
          continue;
        }
        keys[field.substr(0, eq)] = field.substr(eq + 1);
      }
      continue;
    }
    auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw ParseError("expected 'x,u' row, got '" + line + "'");
    }
    rows.emplace_back(to_real(trim(line.substr(0, comma)), "x value"),
                      to_real(trim(line.substr(comma + 1)), "density value"));
  }
  for (const char* key : {"r1", "r2", "n", "t"}) {
    if (!keys.contains(key)) {
      throw ParseError(std::string("snapshot header lacks '") + key + "='");
    }
  }
  const double r1 = to_real(keys["r1"], "r1");
  const double r2 = to_real(keys["r2"], "r2");
  const double n_real = to_real(keys["n"], "n");
  const double time = to_real(keys["t"], "t");
  if (n_real != std::floor(n_real) || n_real < 2 || n_real > 1e9) {
    throw ParseError("bad cell count '" + keys["n"] + "'");
  }
  const int n = static_cast<int>(n_real);
  Grid grid = [&] {
    try {
      return make_grid(r1, r2, n);
    } catch (const ConfigError& e) {
      throw ParseError(e.what());
    }
  }();
  if (rows.size() != static_cast<std::size_t>(n)) {
    throw ParseError("header announces " + std::to_string(n) + " cells but file has " +
                     std::to_string(rows.size()) + " rows");
  }
  std::vector<double> values(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const double expected = grid.center(static_cast<int>(i));
    if (std::abs(rows[i].first - expected) > 1e-9 * grid.dx()) {
      throw ParseError("row " + std::to_string(i) + " has x=" + format_real(rows[i].first) +
                       ", expected cell center " + format_real(expected));
    }
    values[i] = rows[i].second;
  }
  return RawSnapshot{grid, time, std::move(values)};
}

RawSnapshot read_snapshot_values(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot open snapshot file " + path.string());
  }
  return read_snapshot_values(in);
}

Snapshot read_snapshot(std::istream& in) {
  RawSnapshot raw = read_snapshot_values(in);
  try {
    return Snapshot{raw.time, Density{raw.grid, std::move(raw.values)}};
  } catch (const ConfigError& e) {
    throw ParseError(e.what());
  }
}

Snapshot read_snapshot(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot open snapshot file " + path.string());
  }
  return read_snapshot(in);
}

}  // namespace blobflow
