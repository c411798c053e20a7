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

#ifndef BLOBFLOW_MANIFEST_HPP
#define BLOBFLOW_MANIFEST_HPP

#include <filesystem>
#include <optional>
#include <string>

#include "blobflow/grid.hpp"
#include "blobflow/harness.hpp"
#include "blobflow/model.hpp"

namespace blobflow {

/// Everything needed to replay a run bit-for-bit with the same build.
struct RunManifest {
  Grid grid;
  std::string datum;
  ModelConfig model;
  TimeControls controls;
  std::optional<SweepConfig> sweep;  ///< set for sweep outputs
  std::string version = BLOBFLOW_VERSION_STRING;
  std::string created;               ///< UTC wall clock, informational only
};

[[nodiscard]] std::string to_json(const RunManifest& manifest);

/// Throws ParseError on malformed JSON or missing fields, ConfigError on
/// invalid values.
[[nodiscard]] RunManifest parse_manifest(const std::string& text);
[[nodiscard]] RunManifest read_manifest(const std::filesystem::path& path);

/// Current UTC time as ISO 8601.
[[nodiscard]] std::string utc_timestamp();

}  // namespace blobflow

#endif  // BLOBFLOW_MANIFEST_HPP
