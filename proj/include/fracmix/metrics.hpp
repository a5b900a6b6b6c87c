// Copyright 2026 The fracmix Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fracmix/reference.hpp"
#include "fracmix/solve.hpp"

namespace fracmix {

enum class Region { kOmega, kOmegaH, kRn };

/// ||u_h - u||_{L2(region)} by element quadrature (collapsed Gauss, `order`
/// points per direction). For kRn, `exterior_tail_sq` = ||g||^2 outside
/// B(0, R) must be supplied; u_h vanishes there.
double l2_error(const DiscreteSolution& sol, const ReferenceSolution& ref, Region region,
                std::optional<double> exterior_tail_sq = std::nullopt, int order = 4);

/// Full H1(Omega) error, (||e||^2 + ||grad e||^2)^{1/2}. Needs a reference
/// gradient.
double h1_error(const DiscreteSolution& sol, const ReferenceSolution& ref, int order = 4);

/// Interpolation bound ||e||_{L2}^{1-s} ||e||_{H1}^s; an upper bound for the
/// H^s(Omega) error, not the norm itself.
double hs_error_smooth_bound(double l2, double h1, double s);
double hs_error_smooth_bound(const DiscreteSolution& sol, const ReferenceSolution& ref, double s, int order = 4);

/// Galerkin identity for a problem with zero exterior data and constant
/// right-hand side f: a(e, e) = f (int u - int u_h).
struct EnergyError {
  double radicand = 0.0;  // int_Omega (u - u_h)
  double raw = 0.0;       // sqrt(radicand)
  double energy = 0.0;    // |e|_{H^s(R^n)} = sqrt(2 f radicand / C(n, s))
};
EnergyError hs_energy_error_homogeneous(const DiscreteSolution& sol, double s, double f_value, double exact_integral);

/// Least-squares slope of log(err) against log(h); needs >= 3 positive pairs.
double eoc_fit(const std::vector<std::pair<double, double>>& pairs);

/// ||g||^2 over the complement of B(0, R) for g = |x|^{-4} in 2D.
double pow4_tail_sq(double R);
/// Same for g = exp(-|x|^2) in 2D.
double gauss_tail_sq(double R);

struct ConvergenceReport {
  struct Row {
    double h = 0.0;  // realized mesh size
    double H = 0.0;  // realized annulus width
    int ndof = 0;
    std::vector<double> values;
    std::string failure;  // non-empty when the cell failed
  };

  std::string experiment;
  int dim = 2;
  double s = 0.5;
  std::string calibration;  // "H0@h0"
  std::string method;
  std::vector<std::string> norms;
  std::vector<Row> rows;
  std::vector<double> eoc;  // per norm; NaN when fewer than 3 usable rows

  /// Sorts rows by decreasing h and fits every column.
  void finalize();
  std::vector<std::pair<double, double>> series(std::size_t norm) const;
  std::size_t column(const std::string& name) const;
  void write_csv(std::ostream& os) const;
};

}  // namespace fracmix
