// Copyright 2026 The fracmix Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

namespace fracmix::simd {

/// Quadrature points on one cell in structure-of-arrays layout. `l0..l2` are
/// the cell's barycentric coordinates at each point; `w` already carries the
/// cell Jacobian. Sizes are padded to a multiple of kPad with zero-weight
/// points placed far away.
struct Cloud {
  static constexpr std::size_t kPad = 4;

  std::vector<double> x, y, w, l0, l1, l2;

  std::size_t size() const { return x.size(); }
  void clear();
  void push(double px, double py, double pw, double b0, double b1, double b2);
  /// Appends padding so that size() is a multiple of kPad.
  void pad();
};

/// Moments of the kernel |x - y|^{-2 alpha} between two disjoint cells:
///   xx[a][b] = sum w_x w_y K lx_a lx_b,   yy[c][d] = sum w_x w_y K ly_c ly_d,
///   xy[a][c] = sum w_x w_y K lx_a ly_c.
struct PairMoments {
  double xx[3][3] = {};
  double yy[3][3] = {};
  double xy[3][3] = {};
};

using PairMomentsFn = void (*)(const Cloud& X, const Cloud& Y, double alpha, PairMoments& out);

/// Scalar reference kernel; accumulates into `out`.
void pair_moments_scalar(const Cloud& X, const Cloud& Y, double alpha, PairMoments& out);

#if defined(FRACMIX_HAVE_AVX2)
void pair_moments_avx2(const Cloud& X, const Cloud& Y, double alpha, PairMoments& out);
#endif

enum class Isa { kScalar, kAvx2 };

/// Best variant supported by the running CPU, unless overridden by the
/// FRACMIX_SIMD=scalar environment variable or set_isa().
Isa active_isa();
bool isa_available(Isa isa);
/// Forces a variant; throws if the CPU or build lacks it.
void set_isa(Isa isa);
std::string_view isa_name(Isa isa);

/// Runs the active variant.
void pair_moments(const Cloud& X, const Cloud& Y, double alpha, PairMoments& out);

}  // namespace fracmix::simd
