// Copyright 2026 The fracmix Authors
// SPDX-License-Identifier: Apache-2.0

#include "fracmix/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <memory>

#include "fracmix/error.hpp"
#include "fracmix/harness.hpp"
#include "fracmix/oracle_suite.hpp"
#include "fracmix/pair_kernel.hpp"
#include "fracmix/solve.hpp"

namespace fracmix {

namespace {

struct Flags {
  std::string experiment, s, h, method, cal, cal2, out, config;
  int dim = 0;
  int threads = 0;
  bool paper_scale = false;
};

void add_common(CLI::App* app, Flags& f) {
  app->add_option("--experiment", f.experiment, "experiment id");
  app->add_option("--s", f.s, "comma list of s values");
  app->add_option("--h", f.h, "comma list of mesh sizes (fractions like 1/16 allowed)");
  app->add_option("--dim", f.dim, "space dimension (1 or 2)");
  app->add_option("--method", f.method, "mixed, direct or both");
  app->add_option("--cal", f.cal, "truncation calibration H0@h0");
  app->add_option("--cal2", f.cal2, "second calibration (domain growth)");
  app->add_option("--out", f.out, "output file (default stdout)");
  app->add_option("--config", f.config, "key = value file; flags override it");
  app->add_option("--threads", f.threads, "assembly threads");
  app->add_flag("--paper-scale", f.paper_scale, "use the full-scale ladders");
}

// Config file first, then whatever flags were given.
ExperimentConfig build_config(const Flags& f) {
  std::map<std::string, std::string> kv;
  if (!f.config.empty()) kv = parse_config_file(f.config);
  bool paper = f.paper_scale;
  if (auto it = kv.find("paper-scale"); it != kv.end()) paper = paper || it->second == "1" || it->second == "true";
  std::string exp = f.experiment;
  if (exp.empty()) {
    auto it = kv.find("experiment");
    require(it != kv.end(), "no experiment given (--experiment)");
    exp = it->second;
  }
  ExperimentConfig cfg = ExperimentConfig::defaults(experiment_from_string(exp), paper);
  kv.erase("experiment");
  apply_config(cfg, kv);
  if (!f.s.empty()) cfg.s_list = parse_list(f.s);
  if (!f.h.empty()) cfg.h_ladder = parse_list(f.h);
  if (!f.method.empty()) cfg.method = method_from_string(f.method);
  if (!f.cal.empty()) cfg.cal = parse_calibration(f.cal);
  if (!f.cal2.empty()) cfg.cal2 = parse_calibration(f.cal2);
  if (!f.out.empty()) cfg.out = f.out;
  if (f.threads > 0) cfg.threads = f.threads;
  if (f.dim != 0) require(f.dim == cfg.dim(), "--dim does not match the experiment dimension");
  cfg.validate();
  return cfg;
}

// Writes to `path` or stdout.
template <class Fn>
void emit(const std::string& path, Fn&& fn) {
  if (path.empty()) {
    fn(std::cout);
    return;
  }
  std::ofstream os(path);
  require(static_cast<bool>(os), "cannot open " + path + " for writing");
  fn(os);
}

int run_solve(const Flags& f) {
  ExperimentConfig cfg = build_config(f);
  require(cfg.s_list.size() == 1 && cfg.h_ladder.size() == 1, "solve takes a single --s and a single --h");
  const SingleRun run = run_single(cfg, cfg.s_list[0], cfg.h_ladder[0], cfg.cal);
  for (std::size_t i = 0; i < run.norms.size(); ++i)
    std::clog << run.norms[i] << " = " << run.row.values[i] << '\n';
  emit(cfg.out, [&](std::ostream& os) {
    for (const auto& sol : run.solutions) write_solution_csv(os, sol);
  });
  return 0;
}

int run_convergence(const Flags& f) {
  ExperimentConfig cfg = build_config(f);
  const auto reports = run_experiment(cfg);
  bool failed = false;
  emit(cfg.out, [&](std::ostream& os) {
    for (const auto& r : reports) {
      r.write_csv(os);
      for (const auto& row : r.rows) failed = failed || !row.failure.empty();
    }
  });
  if (failed) std::cerr << "some grid cells failed; see the report\n";
  return failed ? 2 : 0;
}

int run_oracle(const std::string& which, int dim, const std::string& s_text) {
  const std::vector<double> s_list = s_text.empty() ? std::vector<double>{0.25, 0.5, 0.75} : parse_list(s_text);
  for (double s : s_list) require(s > 0.0 && s < 1.0, "s must lie in (0, 1)");
  bool ok = true;
  auto report = [&](const char* name, double s, const suite::Deviation& d, double tol) {
    const bool pass = d.max_rel < tol;
    ok = ok && pass;
    std::cout << name << " s=" << s << " max_rel_dev=" << d.max_rel << " tol=" << tol << (pass ? " ok" : " FAIL")
              << '\n';
  };
  const bool all = which.empty() || which == "all";
  require(all || which == "stiffness" || which == "getoor" || which == "poisson",
          "unknown oracle suite '" + which + "'");
  if (all || which == "stiffness") {
    require(dim == 0 || dim == 1, "the stiffness oracle is one-dimensional");
    for (double s : s_list) report("stiffness", s, suite::stiffness_1d(s), 1e-5);
  }
  if (all || which == "getoor")
    for (double s : s_list) report("getoor", s, suite::getoor_1d(s), 1e-4);
  if (all || which == "poisson")
    for (double s : s_list) report("poisson", s, suite::poisson_normalization(s), 1e-4);
  return ok ? 0 : 2;
}

int run_mesh(int dim, double r, double R, double h, const std::string& out) {
  DomainSpec d{dim == 0 ? 2 : dim, r, R};
  d.validate();
  require(h > 0.0 && h < r, "h must lie in (0, r)");
  const Mesh mesh = build_mesh(d, h);
  emit(out, [&](std::ostream& os) { write_mesh(os, mesh); });
  return 0;
}

}  // namespace

int cli_main(int argc, char** argv) {
  CLI::App app{"fracmix: finite elements for the fractional Laplacian with exterior data"};
  app.set_help_flag("--help", "print help");  // -h would clash with --h
  app.require_subcommand(1);
  std::string simd;
  app.add_option("--simd", simd, "pair kernel: scalar or avx2");

  Flags solve_f, conv_f;
  auto* solve = app.add_subcommand("solve", "single run, solution CSV");
  add_common(solve, solve_f);
  auto* conv = app.add_subcommand("convergence", "run an experiment ladder, report CSV");
  add_common(conv, conv_f);

  auto* orc = app.add_subcommand("oracle", "compare against brute-force quadrature");
  std::string which, oracle_s;
  int oracle_dim = 0;
  orc->add_option("suite", which, "stiffness, getoor, poisson or all");
  orc->add_option("--dim", oracle_dim, "dimension");
  orc->add_option("--s", oracle_s, "comma list of s values");

  auto* mesh = app.add_subcommand("mesh", "dump a mesh");
  int mesh_dim = 2;
  double mesh_r = 1.0, mesh_R = 2.0, mesh_h = 0.25;
  std::string mesh_out;
  mesh->add_option("--dim", mesh_dim);
  mesh->add_option("--r", mesh_r);
  mesh->add_option("--R", mesh_R);
  mesh->add_option("--h", mesh_h);
  mesh->add_option("--out", mesh_out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (!simd.empty()) {
      if (simd == "scalar") {
        simd::set_isa(simd::Isa::kScalar);
      } else if (simd == "avx2") {
        require(simd::isa_available(simd::Isa::kAvx2), "AVX2 is not available on this machine");
        simd::set_isa(simd::Isa::kAvx2);
      } else {
        throw ValidationError("unknown --simd value '" + simd + "'");
      }
    }
    if (*solve) return run_solve(solve_f);
    if (*conv) return run_convergence(conv_f);
    if (*orc) return run_oracle(which, oracle_dim, oracle_s);
    if (*mesh) return run_mesh(mesh_dim, mesh_r, mesh_R, mesh_h, mesh_out);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 2;
  }
  return 1;
}

}  // namespace fracmix
