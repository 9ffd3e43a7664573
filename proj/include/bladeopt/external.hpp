// Copyright (c) 2026, bladeopt authors
// SPDX-License-Identifier: Apache-2.0
//
// File-based coupling to an external flow solver.
//
// For every candidate a fresh work directory is created containing
//
//   blade.dat   the deformed blade in the blade text format
//   params      parameter manifest (see write_params_manifest)
//
// and `<command> <workdir>` is run through /bin/sh with stdout and stderr sent
// to <workdir>/solver.log. On exit code 0 the solver must have written
//
//   result      one row per solver iteration: p_total_in p_total_out
//               t_total_in t_total_out (Pa, Pa, K, K); '#' starts a comment
//
// Efficiency is computed here from the station data. A nonzero exit, a
// timeout, or a missing or malformed result file yields the non-converged
// penalty. Infeasible geometry is penalized without starting the solver.

#pragma once

#include <fcntl.h>
#include <signal.h>
#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <chrono>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <span>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "bladeopt/blade_io.hpp"
#include "bladeopt/deformation.hpp"
#include "bladeopt/errors.hpp"
#include "bladeopt/evaluation.hpp"
#include "bladeopt/feasibility.hpp"

extern char** environ;

namespace bladeopt {

struct ExternalConfig {
  std::string command;
  double timeout_seconds = 6.0 * 3600.0;
  std::filesystem::path work_root = "work";
};

struct CommandOutcome {
  int exit_code = -1;
  bool timed_out = false;
};

/// Run `command "<workdir>"` via /bin/sh in its own process group, killing the
/// group when the timeout expires.
inline CommandOutcome run_command(const std::string& command, const std::filesystem::path& workdir,
                                  double timeout_seconds, const std::filesystem::path& log_file) {
  posix_spawn_file_actions_t actions;
  posix_spawnattr_t attr;
  posix_spawn_file_actions_init(&actions);
  posix_spawnattr_init(&attr);
  const std::string log = log_file.string();
  posix_spawn_file_actions_addopen(&actions, STDOUT_FILENO, log.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
  posix_spawn_file_actions_adddup2(&actions, STDOUT_FILENO, STDERR_FILENO);
  posix_spawnattr_setflags(&attr, POSIX_SPAWN_SETPGROUP);
  posix_spawnattr_setpgroup(&attr, 0);

  const std::string script = command + " \"$1\"";
  const std::string dir = workdir.string();
  std::vector<std::string> args{"/bin/sh", "-c", script, "sh", dir};
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  argv.push_back(nullptr);

  pid_t pid = 0;
  const int rc = posix_spawn(&pid, "/bin/sh", &actions, &attr, argv.data(), environ);
  posix_spawn_file_actions_destroy(&actions);
  posix_spawnattr_destroy(&attr);
  if (rc != 0) throw EvaluationError(std::string("cannot start /bin/sh: ") + std::strerror(rc));

  using clock = std::chrono::steady_clock;
  const auto deadline = clock::now() + std::chrono::duration<double>(timeout_seconds);
  auto pause = std::chrono::milliseconds(1);
  CommandOutcome out;
  int status = 0;
  for (;;) {
    const pid_t w = waitpid(pid, &status, WNOHANG);
    if (w == pid) break;
    if (w < 0 && errno != EINTR) throw EvaluationError(std::string("waitpid failed: ") + std::strerror(errno));
    if (clock::now() >= deadline) {
      kill(-pid, SIGKILL);
      while (waitpid(pid, &status, 0) < 0 && errno == EINTR) {
      }
      out.timed_out = true;
      return out;
    }
    std::this_thread::sleep_for(pause);
    pause = std::min(pause * 2, std::chrono::milliseconds(50));
  }
  out.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : 128 + (WIFSIGNALED(status) ? WTERMSIG(status) : 0);
  return out;
}

inline FlowStationData read_result_file(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw IoError("result file " + path.string() + " is missing");
  FlowStationData d;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    double p_in, p_out, t_in, t_out;
    if (!(ls >> p_in)) continue;
    if (!(ls >> p_out >> t_in >> t_out)) {
      throw IoError("result file " + path.string() + " line " + std::to_string(line_no) + ": expected 4 columns");
    }
    std::string extra;
    if (ls >> extra) {
      throw IoError("result file " + path.string() + " line " + std::to_string(line_no) + ": too many columns");
    }
    d.p_total_inlet.push_back(p_in);
    d.p_total_outlet.push_back(p_out);
    d.t_total_inlet.push_back(t_in);
    d.t_total_outlet.push_back(t_out);
  }
  if (d.size() == 0) throw IoError("result file " + path.string() + " has no data rows");
  return d;
}

/// Human-readable parameter manifest: the unit-cube vector and every physical
/// parameter by name (radians and meters).
inline void write_params_manifest(const std::filesystem::path& path, const DeformationParams& params,
                                  std::span<const double> x) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot write " + path.string());
  os << "# bladeopt parameter manifest 1\n";
  os << "n_hh " << params.basis.count() << "\n";
  os << "dimension " << x.size() << "\n";
  os << "x";
  for (double v : x) os << ' ' << format_double(v);
  os << "\n";
  static constexpr const char* names[3] = {"hub", "mid", "shroud"};
  for (std::size_t c = 0; c < 3; ++c) {
    const auto& s = params.per_section[c];
    for (std::size_t i = 0; i < s.amplitudes.size(); ++i) {
      os << names[c] << ".amplitude " << i + 1 << ' ' << format_double(params.basis.maxima[i]) << ' '
         << format_double(s.amplitudes[i]) << "\n";
    }
    os << names[c] << ".rotation " << format_double(s.rotation) << "\n";
    os << names[c] << ".shift_axial " << format_double(s.shift_axial) << "\n";
    os << names[c] << ".shift_tangential " << format_double(s.shift_tangential) << "\n";
  }
}

/// Evaluate one candidate blade through the external command.
inline FitnessReport evaluate_external(const BladeGeometry& blade, const DeformationParams& params,
                                       std::span<const double> x, const ExternalConfig& ext,
                                       const FitnessConfig& fit, const std::string& label,
                                       bool check_geometry = true, const FeasibilityOptions& feas = {}) {
  if (check_geometry) {
    const auto violations = check_feasibility(blade, feas);
    if (!violations.empty()) {
      return failed_report(false, fit,
                           "infeasible geometry: section " + std::to_string(violations.front().section) + " " +
                               to_string(violations.front().kind));
    }
  }
  if (ext.command.empty()) throw EvaluationError("external evaluator: no command configured");

  namespace fs = std::filesystem;
  const fs::path dir = ext.work_root / label;
  std::error_code ec;
  fs::remove_all(dir, ec);
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create work directory " + dir.string() + ": " + ec.message());
  write_blade(dir / "blade.dat", blade);
  write_params_manifest(dir / "params", params, x);

  const auto outcome = run_command(ext.command, fs::absolute(dir), ext.timeout_seconds, dir / "solver.log");
  if (outcome.timed_out) return failed_report(true, fit, "solver timed out");
  if (outcome.exit_code != 0) {
    return failed_report(true, fit, "solver exited with code " + std::to_string(outcome.exit_code));
  }
  try {
    const auto data = read_result_file(dir / "result");
    return converged_report(efficiency_series(data, fit.gamma), fit);
  } catch (const Error& e) {
    return failed_report(true, fit, e.what());
  }
}

}  // namespace bladeopt
