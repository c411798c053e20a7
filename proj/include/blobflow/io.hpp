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

#ifndef BLOBFLOW_IO_HPP
#define BLOBFLOW_IO_HPP

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "blobflow/grid.hpp"

namespace blobflow {

struct Snapshot {
  double time = 0.0;
  Density density;
};

/// Formats with 17 significant digits, so the text round-trips exactly.
[[nodiscard]] std::string format_real(double value);

/// Header `# r1=<v> r2=<v> n=<N> t=<time>` followed by `x_i,u_i` rows.
void write_snapshot(std::ostream& out, const Density& rho, double time);
void write_snapshot(const std::filesystem::path& path, const Density& rho, double time);

/// Parsed file contents before the nonnegativity check.
struct RawSnapshot {
  Grid grid;
  double time = 0.0;
  std::vector<double> values;
};

[[nodiscard]] RawSnapshot read_snapshot_values(std::istream& in);
[[nodiscard]] RawSnapshot read_snapshot_values(const std::filesystem::path& path);

/// Throws ParseError on a missing file, malformed header, wrong row count or
/// bad values. The grid is rebuilt from the header; row x values must agree
/// with the grid centers.
[[nodiscard]] Snapshot read_snapshot(std::istream& in);
[[nodiscard]] Snapshot read_snapshot(const std::filesystem::path& path);

}  // namespace blobflow

#endif  // BLOBFLOW_IO_HPP
