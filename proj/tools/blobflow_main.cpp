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

// Command-line front end. Talks to the solver exclusively through the C API.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "blobflow/blobflow.h"

namespace {

// Exit codes: 0 ok, 1 verification failure, 2 configuration or parse error,
// 3 solver failure, 4 resolution guard, 5 metric error.
int exit_code(blobflow_status status) {
  switch (status) {
    case BLOBFLOW_OK:
      return 0;
    case BLOBFLOW_ERR_VERIFY:
      return 1;
    case BLOBFLOW_ERR_CONFIG:
    case BLOBFLOW_ERR_IO:
    case BLOBFLOW_ERR_ARGUMENT:
      return 2;
    case BLOBFLOW_ERR_SOLVER:
      return 3;
    case BLOBFLOW_ERR_RESOLUTION:
      return 4;
    case BLOBFLOW_ERR_METRIC:
      return 5;
    default:
      return 1;
  }
}

int report(blobflow_status status) {
  if (status != BLOBFLOW_OK) {
    std::cerr << "blobflow: " << blobflow_last_error() << '\n';
  }
  return exit_code(status);
}

template <class T, void (*Destroy)(T*)>
struct Deleter {
  void operator()(T* p) const { Destroy(p); }
};
using GridPtr = std::unique_ptr<blobflow_grid, Deleter<blobflow_grid, blobflow_grid_destroy>>;
using DensityPtr =
    std::unique_ptr<blobflow_density, Deleter<blobflow_density, blobflow_density_destroy>>;
using RunPtr = std::unique_ptr<blobflow_run, Deleter<blobflow_run, blobflow_run_destroy>>;
using ReportPtr =
    std::unique_ptr<blobflow_report, Deleter<blobflow_report, blobflow_report_destroy>>;

struct CommonOptions {
  std::vector<double> domain{-10.0, 10.0};
  int cells = 1024;
  std::string datum = "gauss";
  std::string bc = "noflux";
  bool drift = false;
  int order = 2;
  double theta = 1.5;
  std::optional<double> dt;
  std::optional<double> cfl;
  double t_end = 1.0;
  std::vector<double> snapshots;
  std::string out = "out";
  std::string convolution = "fastscan";
};

void add_common(CLI::App& cmd, CommonOptions& o) {
  cmd.add_option("--domain", o.domain, "Interval endpoints r1 r2")->expected(2)->capture_default_str();
  cmd.add_option("--cells", o.cells, "Number of cells")->capture_default_str();
  cmd.add_option("--datum", o.datum,
                 "Initial datum: gauss | gauss:MEAN:SIGMA | parabola | uniform+C | random:SEED | "
                 "file:PATH")
      ->capture_default_str();
  cmd.add_option("--bc", o.bc, "Boundary condition")
      ->check(CLI::IsMember({"noflux", "periodic"}))
      ->capture_default_str();
  cmd.add_flag("--drift", o.drift, "Add the confining term d/dx(x u)");
  cmd.add_option("--order", o.order, "Reconstruction order")
      ->check(CLI::IsMember({1, 2}))
      ->capture_default_str();
  cmd.add_option("--theta", o.theta, "Minmod parameter in [1,2]")->capture_default_str();
  auto* dt = cmd.add_option("--dt", o.dt, "Fixed nominal step (default 0.01)");
  auto* cfl = cmd.add_option("--cfl", o.cfl, "Adaptive step with this Courant number");
  dt->excludes(cfl);
  cmd.add_option("--t-end", o.t_end, "Final time")->capture_default_str();
  cmd.add_option("--snapshots", o.snapshots, "Comma-separated output times (default 0,t_end)")
      ->delimiter(',');
  cmd.add_option("--out", o.out, "Output directory")->capture_default_str();
  cmd.add_option("--convolution", o.convolution, "Convolution evaluation")
      ->check(CLI::IsMember({"fastscan", "dense"}))
      ->capture_default_str();
}

// CI runs may pin every random datum to one seed.
std::string effective_datum(const std::string& datum) {
  const char* seed = std::getenv("BLOBFLOW_SEED");
  if (seed != nullptr && datum.rfind("random:", 0) == 0) {
    return std::string("random:") + seed;
  }
  return datum;
}

blobflow_model make_model(const CommonOptions& o) {
  blobflow_model m;
  blobflow_model_defaults(&m);
  m.drift = o.drift ? 1 : 0;
  m.bc = o.bc == "periodic" ? BLOBFLOW_BC_PERIODIC : BLOBFLOW_BC_NOFLUX;
  m.order = o.order;
  m.theta = o.theta;
  m.convolution = o.convolution == "dense" ? BLOBFLOW_CONV_DENSE : BLOBFLOW_CONV_FASTSCAN;
  return m;
}

blobflow_time_controls make_controls(const CommonOptions& o) {
  blobflow_time_controls c;
  blobflow_time_controls_defaults(&c);
  if (o.cfl) {
    c.adaptive = 1;
    c.cfl = *o.cfl;
  } else if (o.dt) {
    c.dt = *o.dt;
  }
  c.t_end = o.t_end;
  if (!o.snapshots.empty()) {
    c.snapshot_times = o.snapshots.data();
    c.snapshot_count = o.snapshots.size();
  }
  return c;
}

bool ensure_directory(const std::string& path) {
  std::error_code ec;
  std::filesystem::create_directories(path, ec);
  if (ec) {
    std::cerr << "blobflow: cannot create " << path << ": " << ec.message() << '\n';
    return false;
  }
  return true;
}

int cmd_run(const CommonOptions& o, const std::string& epsilon, const std::string& manifest,
            const std::string& dump_matrix) {
  GridPtr grid;
  {
    blobflow_grid* g = nullptr;
    if (auto s = blobflow_grid_create(o.domain[0], o.domain[1], o.cells, &g); s != BLOBFLOW_OK) {
      return report(s);
    }
    grid.reset(g);
  }
  blobflow_model model = make_model(o);
  if (epsilon != "local") {
    char* end = nullptr;
    model.epsilon = std::strtod(epsilon.c_str(), &end);
    if (end == epsilon.c_str() || *end != '\0') {
      std::cerr << "blobflow: --epsilon must be a number or 'local'\n";
      return 2;
    }
    model.local = 0;
  }
  if (!dump_matrix.empty()) {
    if (model.local) {
      std::cerr << "blobflow: --dump-matrix needs a numeric --epsilon\n";
      return 2;
    }
    return report(blobflow_kernel_matrix_write(grid.get(), model.epsilon, model.bc,
                                               dump_matrix.c_str()));
  }
  if (!ensure_directory(o.out)) {
    return 2;
  }

  blobflow_run* raw = nullptr;
  blobflow_status status = BLOBFLOW_OK;
  if (!manifest.empty()) {
    status = blobflow_simulate_manifest(manifest.c_str(), &raw);
  } else {
    const auto controls = make_controls(o);
    status = blobflow_simulate(grid.get(), effective_datum(o.datum).c_str(), &model, &controls,
                               &raw);
  }
  if (status == BLOBFLOW_ERR_SOLVER) {
    const auto dump = (std::filesystem::path(o.out) / "failed_state.csv").string();
    std::cerr << "blobflow: solver failure: " << blobflow_last_error() << '\n';
    if (blobflow_write_failure_state(dump.c_str()) == BLOBFLOW_OK) {
      std::cerr << "blobflow: last accepted state written to " << dump << '\n';
    }
    return 3;
  }
  if (status != BLOBFLOW_OK) {
    return report(status);
  }
  RunPtr run(raw);
  if (auto s = blobflow_run_write(run.get(), o.out.c_str()); s != BLOBFLOW_OK) {
    return report(s);
  }
  const size_t count = blobflow_run_snapshot_count(run.get());
  blobflow_diagnostics last{};
  blobflow_run_diagnostics(run.get(), count - 1, &last);
  std::printf("wrote %zu snapshots to %s (t=%.6g mass=%.17g linf=%.6g)\n", count, o.out.c_str(),
              last.time, last.mass, last.linf);
  return 0;
}

int cmd_sweep(const CommonOptions& o, std::vector<double> eps_list,
              const std::vector<double>& eps_range, std::vector<double> fit_window,
              bool allow_underresolved, int jobs) {
  if (!eps_range.empty()) {
    const double count = eps_range[2];
    if (count < 3 || count != std::floor(count) || !(eps_range[0] > 0.0) ||
        !(eps_range[1] > eps_range[0])) {
      std::cerr << "blobflow: --eps-range needs 0 < lo < hi and an integer count >= 3\n";
      return 2;
    }
    eps_list.clear();
    const int n = static_cast<int>(count);
    for (int k = 0; k < n; ++k) {
      eps_list.push_back(eps_range[0] * std::pow(eps_range[1] / eps_range[0],
                                                 static_cast<double>(k) / (n - 1)));
    }
    eps_list.back() = eps_range[1];
  }
  if (eps_list.empty()) {
    for (int k = 0; k < 16; ++k) {
      eps_list.push_back(1e-3 * std::pow(1e4, k / 15.0));
    }
    eps_list.back() = 10.0;
  }
  if (fit_window.empty()) {
    fit_window = {std::max(1e-3, eps_list.front()), std::min(1e-1, eps_list.back())};
  }

  GridPtr grid;
  {
    blobflow_grid* g = nullptr;
    if (auto s = blobflow_grid_create(o.domain[0], o.domain[1], o.cells, &g); s != BLOBFLOW_OK) {
      return report(s);
    }
    grid.reset(g);
  }
  if (!ensure_directory(o.out)) {
    return 2;
  }
  const blobflow_model model = make_model(o);
  const auto controls = make_controls(o);
  const blobflow_sweep sweep{eps_list.data(), eps_list.size(), fit_window[0], fit_window[1],
                             allow_underresolved ? 1 : 0, jobs};
  blobflow_report* raw = nullptr;
  if (auto s = blobflow_sweep_run(grid.get(), effective_datum(o.datum).c_str(), &model, &controls,
                                  &sweep, &raw);
      s != BLOBFLOW_OK) {
    return report(s);
  }
  ReportPtr rep(raw);
  if (auto s = blobflow_report_write(rep.get(), o.out.c_str()); s != BLOBFLOW_OK) {
    return report(s);
  }
  for (size_t k = 0; k < blobflow_report_warning_count(rep.get()); ++k) {
    std::cerr << "warning: " << blobflow_report_warning(rep.get(), k) << '\n';
  }
  std::printf("%-12s %-10s %-10s\n", "time", "slope", "r2");
  for (size_t k = 0; k < blobflow_report_slope_count(rep.get()); ++k) {
    blobflow_slope s{};
    blobflow_report_slope(rep.get(), k, &s);
    std::printf("%-12.6g %-10.4f %-10.4f\n", s.time, s.slope, s.r_squared);
  }
  return 0;
}

int cmd_w2(const std::string& a_path, const std::string& b_path) {
  blobflow_density* a = nullptr;
  if (auto s = blobflow_density_read(a_path.c_str(), &a, nullptr); s != BLOBFLOW_OK) {
    return report(s);
  }
  DensityPtr a_owner(a);
  blobflow_density* b = nullptr;
  if (auto s = blobflow_density_read(b_path.c_str(), &b, nullptr); s != BLOBFLOW_OK) {
    return report(s);
  }
  DensityPtr b_owner(b);
  double dist = 0.0;
  if (auto s = blobflow_w2(a, b, &dist); s != BLOBFLOW_OK) {
    return report(s);
  }
  std::printf("%.17g\n", dist);
  return 0;
}

void print_check(const char* name, int passed, const char* detail, void*) {
  std::printf("[%s] %-42s %s\n", passed ? "PASS" : "FAIL", name, detail);
  std::fflush(stdout);
}

int cmd_verify() {
  const blobflow_status status = blobflow_verify(print_check, nullptr);
  if (status == BLOBFLOW_OK) {
    std::printf("all checks passed\n");
    return 0;
  }
  std::fprintf(stderr, "blobflow: %s\n", blobflow_last_error());
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"blobflow: finite-volume solver for the nonlocal (blob) porous-medium equation"};
  app.set_version_flag("--version", blobflow_version());
  app.require_subcommand(1);

  CommonOptions run_opts;
  std::string epsilon = "local";
  std::string manifest;
  std::string dump_matrix;
  auto* run = app.add_subcommand("run", "Single run: snapshots, diagnostics and manifest");
  add_common(*run, run_opts);
  run->add_option("--epsilon", epsilon, "Kernel width, or 'local'")->capture_default_str();
  run->add_option("--manifest", manifest, "Replay the run described by a manifest.json");
  run->add_option("--dump-matrix", dump_matrix,
                  "Write the interaction matrix (N <= 64) as CSV to this path and exit");

  CommonOptions sweep_opts;
  std::vector<double> eps_list;
  std::vector<double> eps_range;
  std::vector<double> fit_window;
  bool allow_underresolved = false;
  int jobs = 0;
  auto* sweep = app.add_subcommand("sweep", "Epsilon sweep of W2(u_eps, u) with log-log fits");
  add_common(*sweep, sweep_opts);
  auto* list_opt = sweep->add_option("--eps-list", eps_list, "Comma-separated epsilons")
                       ->delimiter(',');
  auto* range_opt = sweep->add_option("--eps-range", eps_range,
                                      "lo hi count: log-spaced epsilons (default 1e-3 10 16)")
                        ->expected(3);
  list_opt->excludes(range_opt);
  sweep->add_option("--fit-window", fit_window, "lo hi: epsilon range of the slope fit")
      ->expected(2);
  sweep->add_flag("--allow-underresolved", allow_underresolved,
                  "Permit dx larger than the smallest epsilon");
  sweep->add_option("--jobs", jobs, "Concurrent runs (0: automatic)")->capture_default_str();

  std::string file_a;
  std::string file_b;
  auto* w2 = app.add_subcommand("w2", "W2 distance between two snapshot CSV files");
  w2->add_option("fileA", file_a)->required();
  w2->add_option("fileB", file_b)->required();

  auto* verify = app.add_subcommand("verify", "Run the built-in verification suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (*run) {
    return cmd_run(run_opts, epsilon, manifest, dump_matrix);
  }
  if (*sweep) {
    return cmd_sweep(sweep_opts, eps_list, eps_range, fit_window, allow_underresolved, jobs);
  }
  if (*w2) {
    return cmd_w2(file_a, file_b);
  }
  if (*verify) {
    return cmd_verify();
  }
  return 2;
}
