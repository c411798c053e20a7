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

#include "blobflow/manifest.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "blobflow/error.hpp"

namespace blobflow {

using nlohmann::json;

namespace {

json model_json(const ModelConfig& m) {
  json j;
  if (const auto* k = std::get_if<KernelParams>(&m.pressure)) {
    j["epsilon"] = k->epsilon();
  } else {
    j["epsilon"] = "local";
  }
  j["drift"] = m.drift;
  j["bc"] = m.bc == BoundaryCondition::kPeriodic ? "periodic" : "noflux";
  j["order"] = m.order;
  j["theta"] = m.theta;
  j["convolution"] = m.mode == ConvolutionMode::kDense ? "dense" : "fastscan";
  return j;
}

ModelConfig model_from(const json& j) {
  ModelConfig m;
  const auto& eps = j.at("epsilon");
  if (eps.is_string()) {
    if (eps.get<std::string>() != "local") {
      throw ParseError("epsilon must be a number or \"local\"");
    }
    m.pressure = Local{};
  } else {
    m.pressure = KernelParams{eps.get<double>()};
  }
  m.drift = j.at("drift").get<bool>();
  const auto bc = j.at("bc").get<std::string>();
  if (bc != "noflux" && bc != "periodic") {
    throw ParseError("unknown boundary condition '" + bc + "'");
  }
  m.bc = bc == "periodic" ? BoundaryCondition::kPeriodic : BoundaryCondition::kNoFlux;
  m.order = j.at("order").get<int>();
  m.theta = j.at("theta").get<double>();
  m.mode = j.value("convolution", std::string("fastscan")) == "dense" ? ConvolutionMode::kDense
                                                                      : ConvolutionMode::kFastScan;
  m.validate();
  return m;
}

json controls_json(const TimeControls& c) {
  json j;
  if (const auto* fixed = std::get_if<FixedStep>(&c.mode)) {
    j["mode"] = "fixed";
    j["dt"] = fixed->dt;
  } else {
    j["mode"] = "adaptive";
    j["cfl"] = std::get<AdaptiveStep>(c.mode).cfl;
  }
  j["t_end"] = c.t_end;
  j["snapshot_times"] = c.snapshot_times;
  return j;
}

TimeControls controls_from(const json& j) {
  TimeControls c;
  const auto mode = j.at("mode").get<std::string>();
  if (mode == "fixed") {
    c.mode = FixedStep{j.at("dt").get<double>()};
  } else if (mode == "adaptive") {
    c.mode = AdaptiveStep{j.at("cfl").get<double>()};
  } else {
    throw ParseError("unknown time-step mode '" + mode + "'");
  }
  c.t_end = j.at("t_end").get<double>();
  c.snapshot_times = j.at("snapshot_times").get<std::vector<double>>();
  c.validate();
  return c;
}

}  // namespace

std::string to_json(const RunManifest& m) {
  json j;
  j["version"] = m.version;
  j["created"] = m.created;
  j["grid"] = {{"r1", m.grid.r1()}, {"r2", m.grid.r2()}, {"cells", m.grid.size()}};
  j["datum"] = m.datum;
  j["model"] = model_json(m.model);
  j["time"] = controls_json(m.controls);
  if (m.sweep) {
    j["sweep"] = {{"epsilons", m.sweep->epsilons},
                  {"fit_window", {m.sweep->fit_window.lo, m.sweep->fit_window.hi}},
                  {"allow_underresolved", m.sweep->allow_underresolved}};
  }
  // nlohmann prints doubles with round-trip precision.
  return j.dump(2) + "\n";
}

RunManifest parse_manifest(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("manifest is not valid JSON: ") + e.what());
  }
  try {
    const auto& g = j.at("grid");
    RunManifest m{make_grid(g.at("r1").get<double>(), g.at("r2").get<double>(),
                            g.at("cells").get<int>()),
                  j.at("datum").get<std::string>(), model_from(j.at("model")),
                  controls_from(j.at("time")), std::nullopt, j.value("version", std::string{}),
                  j.value("created", std::string{})};
    (void)parse_datum(m.datum);
    if (j.contains("sweep")) {
      const auto& s = j.at("sweep");
      const auto window = s.at("fit_window").get<std::vector<double>>();
      if (window.size() != 2) {
        throw ParseError("fit_window must have two entries");
      }
      m.sweep = SweepConfig{s.at("epsilons").get<std::vector<double>>(),
                            m.model,
                            m.grid,
                            parse_datum(m.datum),
                            m.controls,
                            FitWindow{window[0], window[1]},
                            s.at("allow_underresolved").get<bool>(),
                            0};
    }
    return m;
  } catch (const json::exception& e) {
    throw ParseError(std::string("manifest field error: ") + e.what());
  }
}

RunManifest read_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot open manifest " + path.string());
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_manifest(buffer.str());
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace blobflow
