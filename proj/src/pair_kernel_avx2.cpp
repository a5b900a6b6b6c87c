// Copyright 2026 The fracmix Authors
// SPDX-License-Identifier: Apache-2.0

// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.

#include <immintrin.h>

#include <vector>

#include "fracmix/pair_kernel.hpp"

namespace fracmix::simd {

namespace {

// 2^52 as a double; adding it exposes the low mantissa bits as an integer.
const __m256d kMagic = _mm256_set1_pd(4503599627370496.0);

// Natural log for positive normal inputs: x = 2^e m, m in [sqrt(1/2), sqrt(2)),
// log m = 2 atanh(t) with t = (m - 1)/(m + 1), |t| <= 0.1716.
inline __m256d log_pd(__m256d x) {
  const __m256i bits = _mm256_castpd_si256(x);
  const __m256i exp_bits = _mm256_srli_epi64(bits, 52);
  __m256d e = _mm256_sub_pd(_mm256_castsi256_pd(_mm256_or_si256(exp_bits, _mm256_castpd_si256(kMagic))), kMagic);
  e = _mm256_sub_pd(e, _mm256_set1_pd(1023.0));
  const __m256i mant_mask = _mm256_set1_epi64x(0x000FFFFFFFFFFFFFLL);
  const __m256i one_bits = _mm256_set1_epi64x(0x3FF0000000000000LL);
  __m256d m = _mm256_castsi256_pd(_mm256_or_si256(_mm256_and_si256(bits, mant_mask), one_bits));
  const __m256d big = _mm256_cmp_pd(m, _mm256_set1_pd(1.4142135623730951), _CMP_GT_OQ);
  m = _mm256_blendv_pd(m, _mm256_mul_pd(m, _mm256_set1_pd(0.5)), big);
  e = _mm256_add_pd(e, _mm256_and_pd(big, _mm256_set1_pd(1.0)));

  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d t = _mm256_div_pd(_mm256_sub_pd(m, one), _mm256_add_pd(m, one));
  const __m256d t2 = _mm256_mul_pd(t, t);
  __m256d p = _mm256_set1_pd(1.0 / 23.0);
  for (int k = 10; k >= 0; --k) p = _mm256_fmadd_pd(p, t2, _mm256_set1_pd(1.0 / (2 * k + 1)));
  const __m256d logm = _mm256_mul_pd(_mm256_add_pd(t, t), p);

  const __m256d ln2_hi = _mm256_set1_pd(6.93147180369123816490e-01);
  const __m256d ln2_lo = _mm256_set1_pd(1.90821492927058770002e-10);
  return _mm256_fmadd_pd(e, ln2_hi, _mm256_fmadd_pd(e, ln2_lo, logm));
}

// exp for arguments clamped to [-708, 708].
inline __m256d exp_pd(__m256d y) {
  y = _mm256_max_pd(_mm256_min_pd(y, _mm256_set1_pd(708.0)), _mm256_set1_pd(-708.0));
  const __m256d k = _mm256_round_pd(_mm256_mul_pd(y, _mm256_set1_pd(1.4426950408889634)),
                                    _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d r = _mm256_fnmadd_pd(k, _mm256_set1_pd(6.93147180369123816490e-01), y);
  r = _mm256_fnmadd_pd(k, _mm256_set1_pd(1.90821492927058770002e-10), r);
  // Taylor series to degree 13; |r| <= ln(2)/2.
  static const double inv_fact[14] = {1.0,
                                      1.0,
                                      1.0 / 2,
                                      1.0 / 6,
                                      1.0 / 24,
                                      1.0 / 120,
                                      1.0 / 720,
                                      1.0 / 5040,
                                      1.0 / 40320,
                                      1.0 / 362880,
                                      1.0 / 3628800,
                                      1.0 / 39916800,
                                      1.0 / 479001600,
                                      1.0 / 6227020800.0};
  __m256d p = _mm256_set1_pd(inv_fact[13]);
  for (int i = 12; i >= 0; --i) p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(inv_fact[i]));
  const __m256d biased = _mm256_add_pd(k, _mm256_add_pd(kMagic, _mm256_set1_pd(1023.0)));
  const __m256i scale = _mm256_slli_epi64(_mm256_castpd_si256(biased), 52);
  return _mm256_mul_pd(p, _mm256_castsi256_pd(scale));
}

inline double hsum(__m256d v) {
  alignas(32) double tmp[4];
  _mm256_store_pd(tmp, v);
  return (tmp[0] + tmp[1]) + (tmp[2] + tmp[3]);
}

}  // namespace

void pair_moments_avx2(const Cloud& X, const Cloud& Y, double alpha, PairMoments& out) {
  const std::size_t nx = X.size(), ny = Y.size();
  thread_local std::vector<double> colsum;
  colsum.assign(ny, 0.0);
  const __m256d neg_alpha = _mm256_set1_pd(-alpha);
  for (std::size_t q = 0; q < nx; ++q) {
    if (X.w[q] == 0.0) continue;
    const __m256d xq = _mm256_set1_pd(X.x[q]);
    const __m256d yq = _mm256_set1_pd(X.y[q]);
    const __m256d wq = _mm256_set1_pd(X.w[q]);
    __m256d t0 = _mm256_setzero_pd(), t1 = t0, t2 = t0, t3 = t0;
    for (std::size_t p = 0; p < ny; p += 4) {
      const __m256d dx = _mm256_sub_pd(xq, _mm256_loadu_pd(&Y.x[p]));
      const __m256d dy = _mm256_sub_pd(yq, _mm256_loadu_pd(&Y.y[p]));
      const __m256d r2 = _mm256_fmadd_pd(dx, dx, _mm256_mul_pd(dy, dy));
      const __m256d k = exp_pd(_mm256_mul_pd(neg_alpha, log_pd(r2)));
      const __m256d wk = _mm256_mul_pd(_mm256_loadu_pd(&Y.w[p]), k);
      t0 = _mm256_add_pd(t0, wk);
      t1 = _mm256_fmadd_pd(wk, _mm256_loadu_pd(&Y.l0[p]), t1);
      t2 = _mm256_fmadd_pd(wk, _mm256_loadu_pd(&Y.l1[p]), t2);
      t3 = _mm256_fmadd_pd(wk, _mm256_loadu_pd(&Y.l2[p]), t3);
      _mm256_storeu_pd(&colsum[p], _mm256_fmadd_pd(wq, k, _mm256_loadu_pd(&colsum[p])));
    }
    const double s0 = hsum(t0);
    const double tc[3] = {hsum(t1), hsum(t2), hsum(t3)};
    const double lx[3] = {X.l0[q], X.l1[q], X.l2[q]};
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) out.xx[a][b] += X.w[q] * lx[a] * lx[b] * s0;
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

}  // namespace fracmix::simd
