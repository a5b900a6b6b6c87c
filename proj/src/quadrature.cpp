// Copyright 2026 The fracmix Authors
// SPDX-License-Identifier: Apache-2.0

#include "fracmix/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "fracmix/error.hpp"

namespace fracmix::quad {

namespace {

Rule1D build_gauss_legendre(int n) {
  Rule1D rule;
  rule.x.resize(n);
  rule.w.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int k = 1; k <= n; ++k) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p2) / k;
      }
      dp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    rule.x[i] = 0.5 * (1.0 - z);
    rule.x[n - 1 - i] = 0.5 * (1.0 + z);
    rule.w[i] = rule.w[n - 1 - i] = 0.5 * w;
  }
  return rule;
}

SimplexRule build_collapsed(int dim, int q) {
  const Rule1D& g = gauss_legendre(q);
  SimplexRule r;
  r.dim = dim;
  if (dim == 1) {
    for (int i = 0; i < q; ++i) {
      r.x.push_back({g.x[i], 0.0, 0.0});
      r.w.push_back(g.w[i]);
    }
  } else if (dim == 2) {
    for (int i = 0; i < q; ++i)
      for (int j = 0; j < q; ++j) {
        const double u = g.x[i], v = g.x[j];
        r.x.push_back({u, (1.0 - u) * v, 0.0});
        r.w.push_back(g.w[i] * g.w[j] * (1.0 - u));
      }
  } else if (dim == 3) {
    for (int i = 0; i < q; ++i)
      for (int j = 0; j < q; ++j)
        for (int k = 0; k < q; ++k) {
          const double u = g.x[i], v = g.x[j], t = g.x[k];
          r.x.push_back({u, (1.0 - u) * v, (1.0 - u) * (1.0 - v) * t});
          r.w.push_back(g.w[i] * g.w[j] * g.w[k] * (1.0 - u) * (1.0 - u) * (1.0 - v));
        }
  } else {
    throw ValidationError("collapsed_simplex: dimension must be 1, 2 or 3");
  }
  return r;
}

std::mutex cache_mutex;

}  // namespace

const Rule1D& gauss_legendre(int n) {
  require(n >= 1 && n <= 200, "gauss_legendre: point count out of range");
  static std::map<int, Rule1D> cache;
  std::lock_guard lock(cache_mutex);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, build_gauss_legendre(n)).first;
  return it->second;
}

const SimplexRule& collapsed_simplex(int dim, int q) {
  static std::map<std::pair<int, int>, SimplexRule> cache;
  {
    std::lock_guard lock(cache_mutex);
    auto it = cache.find({dim, q});
    if (it != cache.end()) return it->second;
  }
  SimplexRule rule = build_collapsed(dim, q);
  std::lock_guard lock(cache_mutex);
  return cache.emplace(std::make_pair(dim, q), std::move(rule)).first->second;
}

}  // namespace fracmix::quad
