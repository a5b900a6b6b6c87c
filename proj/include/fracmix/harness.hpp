// Copyright 2026 The fracmix Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fracmix/assembly.hpp"
#include "fracmix/geometry.hpp"
#include "fracmix/metrics.hpp"

namespace fracmix {

enum class ExperimentId {
  kBoundedSupport,        // 2D, r = 1/2, u = u1 + u2 split
  kPoissonGauss,          // 2D, r = 1, g = exp(-|x|^2)
  kPoissonPow4,           // 2D, r = 1, g = |x|^{-4}
  kGetoor1d,              // 1D, r = 1, f = 1, g = 0
  kConstantDatumSanity,   // 1D, r = 1, f = 0, g = 1
  kDomainGrowth,          // kPoissonPow4 under two calibrations
};

enum class Method { kMixed, kDirect, kBoth };

std::string to_string(ExperimentId id);
ExperimentId experiment_from_string(std::string s);
std::string to_string(Method m);
Method method_from_string(std::string s);

struct ExperimentConfig {
  ExperimentId id = ExperimentId::kGetoor1d;
  std::vector<double> s_list;
  std::vector<double> h_ladder;  // target sizes, strictly decreasing
  TruncationRule cal;
  std::optional<TruncationRule> cal2;  // second calibration (domain growth)
  Method method = Method::kMixed;
  QuadratureOptions quad;
  int threads = 1;
  std::string out;

  int dim() const;
  double r() const;

  /// Registry defaults; `paper_scale` selects the published ladders.
  static ExperimentConfig defaults(ExperimentId id, bool paper_scale = false);
  void validate() const;
};

/// One report per s (two per s for the domain-growth study, one per
/// calibration). A failing (s, h) cell is recorded in its report and the grid
/// continues.
std::vector<ConvergenceReport> run_experiment(const ExperimentConfig& cfg);

/// Runs kPoissonPow4 with cfg.cal and cfg.cal2; returns {small, large} per s.
std::vector<ConvergenceReport> run_domain_growth(const ExperimentConfig& cfg);

/// Output of a single (s, h) run.
struct SingleRun {
  std::shared_ptr<const Mesh> mesh;
  AssembledSystem system;
  std::vector<DiscreteSolution> solutions;  // per method, mixed first
  ConvergenceReport::Row row;
  std::vector<std::string> norms;
};

SingleRun run_single(const ExperimentConfig& cfg, double s, double h, const TruncationRule& cal);

/// `key = value` lines, `#` comments.
std::map<std::string, std::string> parse_config_file(const std::string& path);
/// Applies keys named like the CLI flags (experiment, s, h, method, cal,
/// cal2, out, threads, paper-scale, far-order, near-order, singular-order).
void apply_config(ExperimentConfig& cfg, const std::map<std::string, std::string>& kv);

std::vector<double> parse_list(const std::string& text);
/// "H0@h0".
TruncationRule parse_calibration(const std::string& text);

}  // namespace fracmix
