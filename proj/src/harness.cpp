// Copyright 2026 The fracmix Authors
// SPDX-License-Identifier: Apache-2.0

#include "fracmix/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <sstream>

#include "fracmix/error.hpp"
#include "fracmix/reference.hpp"
#include "fracmix/solve.hpp"

namespace fracmix {

namespace {

std::string normalize(std::string s) {
  for (auto& c : s) {
    if (c == '_') c = '-';
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return s;
}

}  // namespace

std::string to_string(ExperimentId id) {
  switch (id) {
    case ExperimentId::kBoundedSupport:
      return "bounded-support";
    case ExperimentId::kPoissonGauss:
      return "poisson-gauss";
    case ExperimentId::kPoissonPow4:
      return "poisson-pow4";
    case ExperimentId::kGetoor1d:
      return "getoor-1d";
    case ExperimentId::kConstantDatumSanity:
      return "constant-datum-sanity";
    case ExperimentId::kDomainGrowth:
      return "domain-growth";
  }
  return "?";
}

ExperimentId experiment_from_string(std::string s) {
  s = normalize(s);
  for (auto id : {ExperimentId::kBoundedSupport, ExperimentId::kPoissonGauss, ExperimentId::kPoissonPow4,
                  ExperimentId::kGetoor1d, ExperimentId::kConstantDatumSanity, ExperimentId::kDomainGrowth})
    if (s == to_string(id)) return id;
  if (s == "constant-datum") return ExperimentId::kConstantDatumSanity;
  throw ValidationError("unknown experiment id '" + s + "'");
}

std::string to_string(Method m) {
  switch (m) {
    case Method::kMixed:
      return "mixed";
    case Method::kDirect:
      return "direct";
    case Method::kBoth:
      return "both";
  }
  return "?";
}

Method method_from_string(std::string s) {
  s = normalize(s);
  if (s == "mixed") return Method::kMixed;
  if (s == "direct") return Method::kDirect;
  if (s == "both") return Method::kBoth;
  throw ValidationError("unknown method '" + s + "'");
}

int ExperimentConfig::dim() const {
  return id == ExperimentId::kGetoor1d || id == ExperimentId::kConstantDatumSanity ? 1 : 2;
}

double ExperimentConfig::r() const { return id == ExperimentId::kBoundedSupport ? 0.5 : 1.0; }

ExperimentConfig ExperimentConfig::defaults(ExperimentId id, bool paper_scale) {
  ExperimentConfig c;
  c.id = id;
  const std::vector<double> all_s{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  switch (id) {
    case ExperimentId::kBoundedSupport:
      c.s_list = paper_scale ? all_s : std::vector<double>{0.5};
      c.h_ladder = paper_scale ? std::vector<double>{0.045, 0.037, 0.03, 0.025}
                               : std::vector<double>{0.2, 0.15, 0.1, 0.08};
      c.cal = {0.15, 1.0};
      break;
    case ExperimentId::kPoissonGauss:
    case ExperimentId::kPoissonPow4:
      c.s_list = paper_scale ? all_s : std::vector<double>{0.5};
      c.h_ladder = paper_scale ? std::vector<double>{0.1, 0.082, 0.067, 0.055, 0.045}
                               : std::vector<double>{0.14, 0.11, 0.09, 0.07};
      c.cal = {0.1, 1.0};
      break;
    case ExperimentId::kDomainGrowth:
      c.s_list = {0.6};
      c.h_ladder = paper_scale ? std::vector<double>{0.1, 0.082, 0.067, 0.055, 0.045}
                               : std::vector<double>{0.14, 0.11, 0.09, 0.07};
      c.cal = {0.1, 1.0};
      c.cal2 = TruncationRule{0.1, 1.5};
      break;
    case ExperimentId::kGetoor1d:
      c.s_list = {0.25, 0.5, 0.75};
      c.h_ladder = {1.0 / 16, 1.0 / 32, 1.0 / 64, 1.0 / 128};
      c.cal = {1.0 / 16, 1.0};
      break;
    case ExperimentId::kConstantDatumSanity:
      c.s_list = {0.5};
      c.h_ladder = {1.0 / 8, 1.0 / 16, 1.0 / 32};
      c.cal = {1.0 / 32, 19.0};
      c.method = Method::kDirect;
      break;
  }
  return c;
}

void ExperimentConfig::validate() const {
  require(!s_list.empty(), "config: empty s list");
  for (double s : s_list) require(s > 0.0 && s < 1.0, "config: s must lie in (0, 1)");
  require(!h_ladder.empty(), "config: empty h ladder");
  for (std::size_t i = 0; i < h_ladder.size(); ++i) {
    require(h_ladder[i] > 0.0 && h_ladder[i] < r(), "config: every h must lie in (0, r)");
    if (i > 0) require(h_ladder[i] < h_ladder[i - 1], "config: h ladder must be strictly decreasing");
  }
  require(cal.h0 > 0.0 && cal.H0 > 0.0, "config: calibration needs h0 > 0 and H0 > 0");
  if (id == ExperimentId::kDomainGrowth) require(cal2.has_value(), "config: domain growth needs two calibrations");
  require(threads >= 1, "config: threads must be >= 1");
}

SingleRun run_single(const ExperimentConfig& cfg, double s, double h, const TruncationRule& cal) {
  const int dim = cfg.dim();
  const double r = cfg.r();
  const double H = truncation_radius(h, cal, dim, s);
  DomainSpec domain{dim, r, r + H};
  domain.validate();
  SingleRun run;
  run.mesh = std::make_shared<Mesh>(build_mesh(domain, h));
  const Mesh& mesh = *run.mesh;
  run.row.h = mesh.h();
  run.row.H = H;

  std::vector<Method> methods;
  if (cfg.method != Method::kDirect) methods.push_back(Method::kMixed);
  if (cfg.method != Method::kMixed) methods.push_back(Method::kDirect);
  auto solve = [&](Method m, const ScalarField& g) {
    return m == Method::kMixed ? solve_mixed(run.system, run.mesh) : solve_direct(run.system, run.mesh, g);
  };
  auto prefixed = [&](Method m, const std::vector<std::string>& names) {
    for (const auto& n : names)
      run.norms.push_back(cfg.method == Method::kBoth && m == Method::kDirect ? "direct_" + n : n);
  };
  const ScalarField zero = [](const Point&) { return 0.0; };
  const ScalarField one = [](const Point&) { return 1.0; };

  switch (cfg.id) {
    case ExperimentId::kBoundedSupport: {
      require(domain.R >= 2.0 * r + mesh.h(), "bounded support: Omega_H must contain the support of g (R >= 2r + h)");
      const ScalarField g1 = [s](const Point& x) { return getoor_solution(2, s, 1.0, 1.0, x); };
      run.system = assemble(mesh, s, one, g1, cfg.quad, cfg.threads);
      const Eigen::VectorXd G1 = run.system.G;
      const auto ref1 = ReferenceSolution::getoor_trace(2, s, 2.0 * r);
      const double exact2 = getoor_integral(2, s, r, 1.0);
      for (Method m : methods) {
        run.system.G = G1;
        auto u1 = solve(m, g1);
        run.system.G.setZero();
        auto u2 = solve(m, zero);
        const double l2 = l2_error(u1, ref1, Region::kOmega);
        const double h1 = h1_error(u1, ref1);
        const double bound = hs_error_smooth_bound(l2, h1, s);
        const auto e2 = hs_energy_error_homogeneous(u2, s, 1.0, exact2);
        run.row.values.insert(run.row.values.end(), {l2, h1, bound, e2.raw, e2.energy, bound + e2.raw});
        prefixed(m, {"u1_l2", "u1_h1", "u1_hs_bound", "u2_hs_raw", "u2_hs_energy", "hs_combined"});
        run.solutions.push_back(std::move(u1));
        run.solutions.push_back(std::move(u2));
      }
      run.system.G = G1;
      break;
    }
    case ExperimentId::kPoissonGauss:
    case ExperimentId::kPoissonPow4:
    case ExperimentId::kDomainGrowth: {
      const bool gauss = cfg.id == ExperimentId::kPoissonGauss;
      const RadialField g = gauss ? RadialField([](double rho) { return std::exp(-rho * rho); })
                                  : RadialField([](double rho) { return std::pow(rho, -4.0); });
      const ScalarField gx = [g](const Point& x) { return g(std::hypot(x[0], x[1])); };
      run.system = assemble(mesh, s, zero, gx, cfg.quad, cfg.threads);
      const auto ref = ReferenceSolution::poisson(2, s, r, g, gauss ? "gauss" : "pow4");
      const double tail = gauss ? gauss_tail_sq(domain.R) : pow4_tail_sq(domain.R);
      for (Method m : methods) {
        auto u = solve(m, gx);
        run.row.values.insert(run.row.values.end(), {l2_error(u, ref, Region::kOmega), l2_error(u, ref, Region::kOmegaH),
                                                     l2_error(u, ref, Region::kRn, tail)});
        prefixed(m, {"l2_omega", "l2_omegaH", "l2_rn"});
        run.solutions.push_back(std::move(u));
      }
      break;
    }
    case ExperimentId::kGetoor1d: {
      run.system = assemble(mesh, s, one, zero, cfg.quad, cfg.threads);
      const auto ref = ReferenceSolution::getoor(1, s, r, 1.0);
      const double exact = getoor_integral(1, s, r, 1.0);
      for (Method m : methods) {
        auto u = solve(m, zero);
        const auto e = hs_energy_error_homogeneous(u, s, 1.0, exact);
        run.row.values.insert(run.row.values.end(), {e.raw, e.energy, l2_error(u, ref, Region::kOmega)});
        prefixed(m, {"hs_raw", "hs_energy", "l2_omega"});
        run.solutions.push_back(std::move(u));
      }
      break;
    }
    case ExperimentId::kConstantDatumSanity: {
      run.system = assemble(mesh, s, zero, one, cfg.quad, cfg.threads);
      for (Method m : methods) {
        auto u = solve(m, one);
        double dev = 0.0;
        for (int d = 0; d < run.system.dofs.num_interior; ++d) dev = std::max(dev, std::abs(u.u[d] - 1.0));
        double l2 = 0.0;
        for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
          if (!mesh.cell_in_omega(c)) continue;
          // P1 error against the constant is exact with the nodal mass form
          const double a = u.nodal(mesh.cell(c)[0]) - 1.0, b = u.nodal(mesh.cell(c)[1]) - 1.0;
          l2 += mesh.cell_measure(c) * (a * a + a * b + b * b) / 3.0;
        }
        run.row.values.insert(run.row.values.end(), {dev, std::sqrt(l2)});
        prefixed(m, {"max_node_dev", "l2_omega"});
        run.solutions.push_back(std::move(u));
      }
      break;
    }
  }
  run.row.ndof = run.system.dofs.size();
  return run;
}

namespace {

ConvergenceReport run_one(const ExperimentConfig& cfg, double s, const TruncationRule& cal) {
  ConvergenceReport rep;
  rep.experiment = to_string(cfg.id);
  rep.dim = cfg.dim();
  rep.s = s;
  rep.method = to_string(cfg.method);
  {
    std::ostringstream os;
    os << cal.H0 << '@' << cal.h0;
    rep.calibration = os.str();
  }
  for (double h : cfg.h_ladder) {
    const auto t0 = std::chrono::steady_clock::now();
    try {
      SingleRun run = run_single(cfg, s, h, cal);
      if (rep.norms.empty()) rep.norms = run.norms;
      rep.rows.push_back(std::move(run.row));
    } catch (const std::exception& e) {
      ConvergenceReport::Row row;
      row.h = h;
      row.failure = e.what();
      rep.rows.push_back(std::move(row));
    }
    if (std::getenv("FRACMIX_VERBOSE")) {
      const double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      std::clog << rep.experiment << " s=" << s << " h=" << h << " cal=" << rep.calibration << " " << sec << " s\n";
    }
  }
  rep.finalize();
  return rep;
}

}  // namespace

std::vector<ConvergenceReport> run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  if (cfg.id == ExperimentId::kDomainGrowth) return run_domain_growth(cfg);
  std::vector<ConvergenceReport> out;
  std::vector<double> s_sorted = cfg.s_list;
  std::sort(s_sorted.begin(), s_sorted.end());
  for (double s : s_sorted) out.push_back(run_one(cfg, s, cfg.cal));
  return out;
}

std::vector<ConvergenceReport> run_domain_growth(const ExperimentConfig& cfg_in) {
  ExperimentConfig cfg = cfg_in;
  if (!cfg.cal2) cfg.cal2 = TruncationRule{0.1, 1.5};
  cfg.validate();
  cfg.id = ExperimentId::kDomainGrowth;
  std::vector<ConvergenceReport> out;
  std::vector<double> s_sorted = cfg.s_list;
  std::sort(s_sorted.begin(), s_sorted.end());
  for (double s : s_sorted) {
    out.push_back(run_one(cfg, s, cfg.cal));
    out.push_back(run_one(cfg, s, *cfg.cal2));
  }
  return out;
}

}  // namespace fracmix
