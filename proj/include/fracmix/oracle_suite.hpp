// Copyright 2026 The fracmix Authors
// SPDX-License-Identifier: Apache-2.0

// Library-vs-oracle comparisons shared by the CLI and the acceptance binary.

#pragma once

#include <vector>

namespace fracmix::suite {

struct Deviation {
  double max_rel = 0.0;
  int checked = 0;
};

/// 1D mesh r = 1, R = 2, h = 1/4: max over entries of |A - A_oracle| / |A_oracle|.
Deviation stiffness_1d(double s, double h = 0.25, double r = 1.0, double R = 2.0);

/// kappa (1 - x^2)_+^s has constant fractional Laplacian 1; checks the
/// oracle principal value and the library constant at x in {0, 0.5, 0.9}.
Deviation getoor_1d(double s);

/// g = 1 reproduces u = 1: library Poisson integral and the oracle at ten
/// points (five 1D, five 2D).
Deviation poisson_normalization(double s);

}  // namespace fracmix::suite
