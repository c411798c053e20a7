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

#include "blobflow/blobflow.h"

#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <new>
#include <optional>
#include <string>

#include "blobflow/error.hpp"
#include "blobflow/harness.hpp"
#include "blobflow/io.hpp"
#include "blobflow/kernel.hpp"
#include "blobflow/manifest.hpp"
#include "blobflow/scheme.hpp"
#include "blobflow/verify.hpp"
#include "blobflow/wasserstein.hpp"

struct blobflow_grid {
  blobflow::Grid grid;
};

struct blobflow_density {
  blobflow::Density density;
};

struct blobflow_run {
  blobflow::RunManifest manifest;
  blobflow::SimulationResult result;
};

struct blobflow_report {
  blobflow::RunManifest manifest;
  blobflow::ConvergenceReport report;
};

namespace {

using namespace blobflow;

thread_local std::string last_error;
thread_local std::optional<Snapshot> failure_state;

blobflow_status fail(blobflow_status status, const std::string& message) {
  last_error = message;
  return status;
}

// Runs `body`, translating exceptions into status codes.
template <class Body>
blobflow_status guarded(Body&& body) {
  try {
    last_error.clear();
    body();
    return BLOBFLOW_OK;
  } catch (const SimulationFailure& e) {
    failure_state = Snapshot{e.time(), e.last_state()};
    return fail(BLOBFLOW_ERR_SOLVER, e.what());
  } catch (const Error& e) {
    return fail(static_cast<blobflow_status>(e.kind()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(BLOBFLOW_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(BLOBFLOW_ERR_INTERNAL, e.what());
  }
}

template <class T>
void require(const T* p, const char* what) {
  if (p == nullptr) {
    throw Error(static_cast<ErrorKind>(BLOBFLOW_ERR_ARGUMENT), std::string(what) + " is NULL");
  }
}

ModelConfig to_model(const blobflow_model& m) {
  ModelConfig cfg;
  if (m.local) {
    cfg.pressure = Local{};
  } else {
    cfg.pressure = KernelParams{m.epsilon};
  }
  cfg.drift = m.drift != 0;
  if (m.bc != BLOBFLOW_BC_NOFLUX && m.bc != BLOBFLOW_BC_PERIODIC) {
    throw ConfigError("unknown boundary condition");
  }
  cfg.bc = m.bc == BLOBFLOW_BC_PERIODIC ? BoundaryCondition::kPeriodic : BoundaryCondition::kNoFlux;
  cfg.order = m.order;
  cfg.theta = m.theta;
  cfg.mode = m.convolution == BLOBFLOW_CONV_DENSE ? ConvolutionMode::kDense
                                                  : ConvolutionMode::kFastScan;
  cfg.validate();
  return cfg;
}

TimeControls to_controls(const blobflow_time_controls& c) {
  TimeControls tc;
  if (c.adaptive) {
    tc.mode = AdaptiveStep{c.cfl};
  } else {
    tc.mode = FixedStep{c.dt};
  }
  tc.t_end = c.t_end;
  if (c.snapshot_times != nullptr) {
    tc.snapshot_times.assign(c.snapshot_times, c.snapshot_times + c.snapshot_count);
  } else if (c.t_end > 0.0) {
    tc.snapshot_times = {0.0, c.t_end};
  } else {
    tc.snapshot_times = {0.0};
  }
  tc.validate();
  return tc;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
  if (!out) {
    throw ParseError("cannot write " + path.string());
  }
}

std::filesystem::path existing_directory(const char* directory) {
  require(directory, "directory");
  std::filesystem::path dir(directory);
  if (!std::filesystem::is_directory(dir)) {
    throw ParseError("output directory " + dir.string() + " does not exist");
  }
  return dir;
}

}  // namespace

extern "C" {

const char* blobflow_version(void) { return BLOBFLOW_VERSION_STRING; }

const char* blobflow_last_error(void) { return last_error.c_str(); }

void blobflow_model_defaults(blobflow_model* model) {
  if (model == nullptr) {
    return;
  }
  *model = blobflow_model{0.0, 1, 0, BLOBFLOW_BC_NOFLUX, 2, 1.5, BLOBFLOW_CONV_FASTSCAN};
}

void blobflow_time_controls_defaults(blobflow_time_controls* controls) {
  if (controls == nullptr) {
    return;
  }
  *controls = blobflow_time_controls{0, 0.01, kDefaultCfl, 1.0, nullptr, 0};
}

blobflow_status blobflow_grid_create(double r1, double r2, int cells, blobflow_grid** out) {
  return guarded([&] {
    require(out, "out");
    *out = new blobflow_grid{make_grid(r1, r2, cells)};
  });
}

void blobflow_grid_destroy(blobflow_grid* grid) { delete grid; }

blobflow_status blobflow_grid_info(const blobflow_grid* grid, double* r1, double* r2, int* cells,
                                   double* dx) {
  return guarded([&] {
    require(grid, "grid");
    if (r1 != nullptr) *r1 = grid->grid.r1();
    if (r2 != nullptr) *r2 = grid->grid.r2();
    if (cells != nullptr) *cells = grid->grid.size();
    if (dx != nullptr) *dx = grid->grid.dx();
  });
}

blobflow_status blobflow_density_sample(const blobflow_grid* grid, const char* datum,
                                        blobflow_density** out) {
  return guarded([&] {
    require(grid, "grid");
    require(datum, "datum");
    require(out, "out");
    *out = new blobflow_density{sample_initial(parse_datum(datum), grid->grid)};
  });
}

blobflow_status blobflow_density_from_values(const blobflow_grid* grid, const double* values,
                                             size_t count, blobflow_density** out) {
  return guarded([&] {
    require(grid, "grid");
    require(values, "values");
    require(out, "out");
    *out = new blobflow_density{Density{grid->grid, std::vector<double>(values, values + count)}};
  });
}

blobflow_status blobflow_density_read(const char* path, blobflow_density** out, double* time) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    Snapshot snap = read_snapshot(std::filesystem::path(path));
    if (time != nullptr) {
      *time = snap.time;
    }
    *out = new blobflow_density{std::move(snap.density)};
  });
}

blobflow_status blobflow_density_write(const blobflow_density* density, double time,
                                       const char* path) {
  return guarded([&] {
    require(density, "density");
    require(path, "path");
    write_snapshot(std::filesystem::path(path), density->density, time);
  });
}

void blobflow_density_destroy(blobflow_density* density) { delete density; }

size_t blobflow_density_size(const blobflow_density* density) {
  return density == nullptr ? 0 : density->density.values().size();
}

const double* blobflow_density_values(const blobflow_density* density) {
  return density == nullptr ? nullptr : density->density.values().data();
}

blobflow_status blobflow_density_mass(const blobflow_density* density, double* out) {
  return guarded([&] {
    require(density, "density");
    require(out, "out");
    *out = mass(density->density);
  });
}

blobflow_status blobflow_w2(const blobflow_density* a, const blobflow_density* b, double* out) {
  return guarded([&] {
    require(a, "a");
    require(b, "b");
    require(out, "out");
    *out = w2(a->density, b->density);
  });
}

blobflow_status blobflow_kernel_matrix_write(const blobflow_grid* grid, double epsilon,
                                             blobflow_bc bc, const char* path) {
  return guarded([&] {
    require(grid, "grid");
    require(path, "path");
    const int n = grid->grid.size();
    if (n > 64) {
      throw ConfigError("matrix dump is limited to 64 cells");
    }
    const auto m = interaction_matrix(grid->grid, KernelParams{epsilon},
                                      bc == BLOBFLOW_BC_PERIODIC ? BoundaryCondition::kPeriodic
                                                                 : BoundaryCondition::kNoFlux);
    std::string text;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        text += format_real(m[static_cast<std::size_t>(i) * n + j]);
        text += j + 1 < n ? ',' : '\n';
      }
    }
    write_text(path, text);
  });
}

blobflow_status blobflow_simulate(const blobflow_grid* grid, const char* datum,
                                  const blobflow_model* model,
                                  const blobflow_time_controls* controls, blobflow_run** out) {
  return guarded([&] {
    require(grid, "grid");
    require(datum, "datum");
    require(model, "model");
    require(controls, "controls");
    require(out, "out");
    failure_state.reset();
    RunManifest manifest{grid->grid,          datum,        to_model(*model),
                         to_controls(*controls), std::nullopt, BLOBFLOW_VERSION_STRING,
                         utc_timestamp()};
    auto result = simulate(parse_datum(manifest.datum), manifest.grid, manifest.model,
                           manifest.controls);
    *out = new blobflow_run{std::move(manifest), std::move(result)};
  });
}

blobflow_status blobflow_simulate_manifest(const char* manifest_path, blobflow_run** out) {
  return guarded([&] {
    require(manifest_path, "manifest_path");
    require(out, "out");
    failure_state.reset();
    RunManifest manifest = read_manifest(manifest_path);
    if (manifest.sweep) {
      throw ConfigError("manifest describes a sweep, not a single run");
    }
    manifest.created = utc_timestamp();
    auto result = simulate(parse_datum(manifest.datum), manifest.grid, manifest.model,
                           manifest.controls);
    *out = new blobflow_run{std::move(manifest), std::move(result)};
  });
}

void blobflow_run_destroy(blobflow_run* run) { delete run; }

size_t blobflow_run_snapshot_count(const blobflow_run* run) {
  return run == nullptr ? 0 : run->result.snapshots.size();
}

blobflow_status blobflow_run_snapshot(const blobflow_run* run, size_t index, double* time,
                                      blobflow_density** out) {
  return guarded([&] {
    require(run, "run");
    require(out, "out");
    if (index >= run->result.snapshots.size()) {
      throw Error(static_cast<ErrorKind>(BLOBFLOW_ERR_ARGUMENT), "snapshot index out of range");
    }
    const auto& snap = run->result.snapshots[index];
    if (time != nullptr) {
      *time = snap.time;
    }
    *out = new blobflow_density{snap.density};
  });
}

blobflow_status blobflow_run_diagnostics(const blobflow_run* run, size_t index,
                                         blobflow_diagnostics* out) {
  return guarded([&] {
    require(run, "run");
    require(out, "out");
    if (index >= run->result.diagnostics.size()) {
      throw Error(static_cast<ErrorKind>(BLOBFLOW_ERR_ARGUMENT), "diagnostics index out of range");
    }
    const auto& d = run->result.diagnostics[index];
    *out = blobflow_diagnostics{d.time,    d.mass,          d.linf,      d.energy_local,
                                d.energy_nonlocal, d.entropy, d.second_moment, d.energy_gap};
  });
}

blobflow_status blobflow_run_write(const blobflow_run* run, const char* directory) {
  return guarded([&] {
    require(run, "run");
    const auto dir = existing_directory(directory);
    const auto& snaps = run->result.snapshots;
    for (std::size_t k = 0; k < snaps.size(); ++k) {
      char name[32];
      std::snprintf(name, sizeof name, "snapshot_%04zu.csv", k);
      write_snapshot(dir / name, snaps[k].density, snaps[k].time);
    }
    std::ofstream diag(dir / "diagnostics.csv");
    write_diagnostics(diag, run->result.diagnostics);
    if (!diag) {
      throw ParseError("cannot write diagnostics.csv");
    }
    write_text(dir / "manifest.json", to_json(run->manifest));
  });
}

blobflow_status blobflow_write_failure_state(const char* path) {
  return guarded([&] {
    require(path, "path");
    if (!failure_state) {
      throw ConfigError("no failed simulation on this thread");
    }
    write_snapshot(std::filesystem::path(path), failure_state->density, failure_state->time);
  });
}

blobflow_status blobflow_sweep_run(const blobflow_grid* grid, const char* datum,
                                   const blobflow_model* base,
                                   const blobflow_time_controls* controls,
                                   const blobflow_sweep* sweep, blobflow_report** out) {
  return guarded([&] {
    require(grid, "grid");
    require(datum, "datum");
    require(base, "base");
    require(controls, "controls");
    require(sweep, "sweep");
    require(out, "out");
    if (sweep->epsilons == nullptr || sweep->epsilon_count == 0) {
      throw ConfigError("sweep needs at least one epsilon");
    }
    blobflow_model local = *base;
    local.local = 1;
    SweepConfig cfg{std::vector<double>(sweep->epsilons, sweep->epsilons + sweep->epsilon_count),
                    to_model(local),
                    grid->grid,
                    parse_datum(datum),
                    to_controls(*controls),
                    FitWindow{sweep->fit_lo, sweep->fit_hi},
                    sweep->allow_underresolved != 0,
                    sweep->jobs};
    RunManifest manifest{cfg.grid,     datum,   cfg.base, cfg.controls,
                         cfg,          BLOBFLOW_VERSION_STRING, utc_timestamp()};
    auto report = run_sweep(cfg);
    *out = new blobflow_report{std::move(manifest), std::move(report)};
  });
}

void blobflow_report_destroy(blobflow_report* report) { delete report; }

size_t blobflow_report_slope_count(const blobflow_report* report) {
  return report == nullptr ? 0 : report->report.slopes.size();
}

blobflow_status blobflow_report_slope(const blobflow_report* report, size_t index,
                                      blobflow_slope* out) {
  return guarded([&] {
    require(report, "report");
    require(out, "out");
    if (index >= report->report.slopes.size()) {
      throw Error(static_cast<ErrorKind>(BLOBFLOW_ERR_ARGUMENT), "slope index out of range");
    }
    const auto& s = report->report.slopes[index];
    *out = blobflow_slope{s.time, s.fit.slope, s.fit.intercept, s.fit.r_squared};
  });
}

size_t blobflow_report_warning_count(const blobflow_report* report) {
  return report == nullptr ? 0 : report->report.warnings.size();
}

const char* blobflow_report_warning(const blobflow_report* report, size_t index) {
  if (report == nullptr || index >= report->report.warnings.size()) {
    return nullptr;
  }
  return report->report.warnings[index].c_str();
}

blobflow_status blobflow_report_write(const blobflow_report* report, const char* directory) {
  return guarded([&] {
    require(report, "report");
    const auto dir = existing_directory(directory);
    std::ofstream csv(dir / "report.csv");
    write_report_csv(csv, report->report);
    std::ofstream fit(dir / "fit.csv");
    write_fit_csv(fit, report->report);
    std::ofstream plot(dir / "plot.dat");
    write_plot_data(plot, report->report);
    if (!csv || !fit || !plot) {
      throw ParseError("cannot write sweep report files into " + dir.string());
    }
    write_text(dir / "manifest.json", to_json(report->manifest));
  });
}

blobflow_status blobflow_verify(blobflow_verify_callback callback, void* user) {
  bool all = true;
  const blobflow_status status = guarded([&] {
    for (const auto& check : verify::run_all()) {
      all = all && check.passed;
      if (callback != nullptr) {
        callback(check.name.c_str(), check.passed ? 1 : 0, check.detail.c_str(), user);
      }
    }
  });
  if (status != BLOBFLOW_OK) {
    return status;
  }
  return all ? BLOBFLOW_OK : fail(BLOBFLOW_ERR_VERIFY, "verification failed");
}

}  // extern "C"
