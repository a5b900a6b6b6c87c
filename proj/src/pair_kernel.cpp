// Copyright 2026 The fracmix Authors
// SPDX-License-Identifier: Apache-2.0

#include "fracmix/pair_kernel.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <string>

#include "fracmix/error.hpp"

namespace fracmix::simd {

void Cloud::clear() {
  x.clear();
  y.clear();
  w.clear();
  l0.clear();
  l1.clear();
  l2.clear();
}

void Cloud::push(double px, double py, double pw, double b0, double b1, double b2) {
  x.push_back(px);
  y.push_back(py);
  w.push_back(pw);
  l0.push_back(b0);
  l1.push_back(b1);
  l2.push_back(b2);
}

void Cloud::pad() {
  while (size() % kPad != 0) push(1e100, 1e100, 0.0, 0.0, 0.0, 0.0);
}

void pair_moments_scalar(const Cloud& X, const Cloud& Y, double alpha, PairMoments& out) {
  const std::size_t nx = X.size(), ny = Y.size();
  thread_local std::vector<double> colsum;
  colsum.assign(ny, 0.0);
  for (std::size_t q = 0; q < nx; ++q) {
    if (X.w[q] == 0.0) continue;
    double t0 = 0.0, t1 = 0.0, t2 = 0.0, t3 = 0.0;
    for (std::size_t p = 0; p < ny; ++p) {
      const double dx = X.x[q] - Y.x[p], dy = X.y[q] - Y.y[p];
      const double k = std::pow(dx * dx + dy * dy, -alpha);
      const double wk = Y.w[p] * k;
      t0 += wk;
      t1 += wk * Y.l0[p];
      t2 += wk * Y.l1[p];
      t3 += wk * Y.l2[p];
      colsum[p] += X.w[q] * k;
    }
    const double lx[3] = {X.l0[q], X.l1[q], X.l2[q]};
    const double tc[3] = {t1, t2, t3};
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) out.xx[a][b] += X.w[q] * lx[a] * lx[b] * t0;
      for (int c = 0; c < 3; ++c) out.xy[a][c] += X.w[q] * lx[a] * tc[c];
    }
  }
  for (std::size_t p = 0; p < ny; ++p) {
    const double ly[3] = {Y.l0[p], Y.l1[p], Y.l2[p]};
    const double cw = Y.w[p] * colsum[p];
    for (int c = 0; c < 3; ++c)
      for (int d = 0; d < 3; ++d) out.yy[c][d] += cw * ly[c] * ly[d];
  }
}

namespace {

bool cpu_has_avx2() {
#if defined(FRACMIX_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Isa detect() {
  if (const char* env = std::getenv("FRACMIX_SIMD")) {
    if (std::string(env) == "scalar") return Isa::kScalar;
  }
  return cpu_has_avx2() ? Isa::kAvx2 : Isa::kScalar;
}

std::atomic<int>& isa_slot() {
  static std::atomic<int> slot{static_cast<int>(detect())};
  return slot;
}

}  // namespace

Isa active_isa() { return static_cast<Isa>(isa_slot().load(std::memory_order_relaxed)); }

bool isa_available(Isa isa) { return isa == Isa::kScalar || cpu_has_avx2(); }

void set_isa(Isa isa) {
  require(isa_available(isa), "requested SIMD variant is not available on this CPU/build");
  isa_slot().store(static_cast<int>(isa), std::memory_order_relaxed);
}

std::string_view isa_name(Isa isa) { return isa == Isa::kAvx2 ? "avx2" : "scalar"; }

void pair_moments(const Cloud& X, const Cloud& Y, double alpha, PairMoments& out) {
#if defined(FRACMIX_HAVE_AVX2)
  if (active_isa() == Isa::kAvx2) {
    pair_moments_avx2(X, Y, alpha, out);
    return;
  }
#endif
  pair_moments_scalar(X, Y, alpha, out);
}

}  // namespace fracmix::simd
