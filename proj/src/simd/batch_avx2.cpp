#include <cstddef>

#include "jcq/simd/batch.hpp"

// ======================== AVX2 kernels (4 x f64) ========================
//
// Vector exp/sin use the classic Cephes double-precision cores (Cody-Waite
// argument reduction + rational/polynomial approximation, ~1 ulp); coth is
// assembled from three branches that mirror the scalar reference:
//
//   x < 1e-6          1/x + x/3          (identical to scalar)
//   x < 0.625         1/tanh_poly(x)     (Cephes tanh rational)
//   else              (1+q)/(1-q), q = exp(-2x)
//
// Everything is branch-free: all branches are evaluated and blended by
// mask, so a vector mixing regimes is handled per lane.  Tails shorter
// than a vector are padded with E = 1.0 (harmless for every kernel) and
// only the live lanes are stored back.
//
// This TU is compiled with -mavx2 -mfma on x86-64; elsewhere (or if the
// compiler lacks the flags) it degrades to a stub table so the dispatcher
// falls back to scalar.

#if defined(__AVX2__) && defined(__FMA__)

#include <immintrin.h>

namespace jcq::simd {

namespace {

// ---------------------------- helpers ----------------------------

inline __m256d splat(double v) { return _mm256_set1_pd(v); }

// exp(x), Cephes exp.c: x = n ln2 + r, e^x = 2^n (1 + 2 p/(q - p))
inline __m256d exp_pd(__m256d x) {
  const __m256d log2e = splat(1.4426950408889634074);
  const __m256d c1 = splat(6.93145751953125e-1);
  const __m256d c2 = splat(1.42860682030941723212e-6);

  // clamp keeps 2^n inside the normal exponent range; callers never need
  // the extreme tails (results there saturate to 0 / huge anyway)
  x = _mm256_max_pd(splat(-708.0), _mm256_min_pd(splat(708.0), x));

  __m256d n = _mm256_floor_pd(_mm256_fmadd_pd(x, log2e, splat(0.5)));
  __m256d r = _mm256_fnmadd_pd(n, c1, x);
  r = _mm256_fnmadd_pd(n, c2, r);
  const __m256d rr = _mm256_mul_pd(r, r);

  __m256d p = splat(1.26177193074810590878e-4);
  p = _mm256_fmadd_pd(p, rr, splat(3.02994407707441961300e-2));
  p = _mm256_fmadd_pd(p, rr, splat(9.99999999999999999910e-1));
  p = _mm256_mul_pd(p, r);

  __m256d q = splat(3.00198505138664455042e-6);
  q = _mm256_fmadd_pd(q, rr, splat(2.52448340349684104192e-3));
  q = _mm256_fmadd_pd(q, rr, splat(2.27265548208155028766e-1));
  q = _mm256_fmadd_pd(q, rr, splat(2.0));

  const __m256d er = _mm256_add_pd(
      splat(1.0),
      _mm256_mul_pd(splat(2.0), _mm256_div_pd(p, _mm256_sub_pd(q, p))));

  // scale by 2^n through the exponent field
  const __m128i n32 = _mm256_cvtpd_epi32(n);
  const __m256i n64 = _mm256_cvtepi32_epi64(n32);
  const __m256i pow2 =
      _mm256_slli_epi64(_mm256_add_epi64(n64, _mm256_set1_epi64x(1023)), 52);
  return _mm256_mul_pd(er, _mm256_castsi256_pd(pow2));
}

// sin(x), Cephes sin.c: octant reduction with extended-precision pi/4,
// then sin/cos polynomials on |r| <= pi/4.  Octant bookkeeping is done in
// doubles (exact for the integer magnitudes reached here).
inline __m256d sin_pd(__m256d x) {
  const __m256d neg0 = splat(-0.0);
  const __m256d dp1 = splat(7.85398125648498535156e-1);
  const __m256d dp2 = splat(3.77489470793079817668e-8);
  const __m256d dp3 = splat(2.69515142907905952645e-15);

  const __m256d sign_x = _mm256_and_pd(x, neg0);
  const __m256d ax = _mm256_andnot_pd(neg0, x);

  __m256d y = _mm256_floor_pd(_mm256_mul_pd(ax, splat(1.2732395447351626862)));

  // j = y mod 8; odd octants map up to the next even one
  __m256d j = _mm256_sub_pd(
      y, _mm256_mul_pd(splat(8.0),
                       _mm256_floor_pd(_mm256_mul_pd(y, splat(0.125)))));
  const __m256d jhalf = _mm256_mul_pd(j, splat(0.5));
  const __m256d odd =
      _mm256_cmp_pd(_mm256_floor_pd(jhalf), jhalf, _CMP_NEQ_OQ);
  const __m256d one_if_odd = _mm256_and_pd(odd, splat(1.0));
  j = _mm256_add_pd(j, one_if_odd);
  y = _mm256_add_pd(y, one_if_odd);
  // fold 8 -> 0
  j = _mm256_andnot_pd(_mm256_cmp_pd(j, splat(8.0), _CMP_EQ_OQ), j);

  // quadrant sign and cos/sin selection
  const __m256d flip = _mm256_cmp_pd(j, splat(3.0), _CMP_GT_OQ);
  j = _mm256_sub_pd(j, _mm256_and_pd(flip, splat(4.0)));
  const __m256d use_cos = _mm256_cmp_pd(j, splat(2.0), _CMP_EQ_OQ);

  // r = ((ax - y dp1) - y dp2) - y dp3
  __m256d r = _mm256_fnmadd_pd(y, dp1, ax);
  r = _mm256_fnmadd_pd(y, dp2, r);
  r = _mm256_fnmadd_pd(y, dp3, r);
  const __m256d zz = _mm256_mul_pd(r, r);

  __m256d sp = splat(1.58962301576546568060e-10);
  sp = _mm256_fmadd_pd(sp, zz, splat(-2.50507477628578072866e-8));
  sp = _mm256_fmadd_pd(sp, zz, splat(2.75573136213857245213e-6));
  sp = _mm256_fmadd_pd(sp, zz, splat(-1.98412698295895385996e-4));
  sp = _mm256_fmadd_pd(sp, zz, splat(8.33333333332211858878e-3));
  sp = _mm256_fmadd_pd(sp, zz, splat(-1.66666666666666307295e-1));
  const __m256d sinp =
      _mm256_fmadd_pd(_mm256_mul_pd(r, zz), sp, r);  // r + r zz P(zz)

  __m256d cp = splat(-1.13585365213876817300e-11);
  cp = _mm256_fmadd_pd(cp, zz, splat(2.08757008419747316778e-9));
  cp = _mm256_fmadd_pd(cp, zz, splat(-2.75573141792967388112e-7));
  cp = _mm256_fmadd_pd(cp, zz, splat(2.48015872888517179954e-5));
  cp = _mm256_fmadd_pd(cp, zz, splat(-1.38888888888730564116e-3));
  cp = _mm256_fmadd_pd(cp, zz, splat(4.16666666666665929218e-2));
  __m256d cosp = _mm256_fmadd_pd(_mm256_mul_pd(zz, zz), cp,
                                 _mm256_fnmadd_pd(zz, splat(0.5), splat(1.0)));

  __m256d res = _mm256_blendv_pd(sinp, cosp, use_cos);
  res = _mm256_xor_pd(res, _mm256_and_pd(flip, neg0));
  return _mm256_xor_pd(res, sign_x);
}

// coth(x) for x > 0, three blended branches (see file header)
inline __m256d coth_pd(__m256d x) {
  const __m256d one = splat(1.0);

  // series: 1/x + x/3, same two divisions as the scalar reference
  const __m256d ser = _mm256_add_pd(_mm256_div_pd(one, x),
                                    _mm256_div_pd(x, splat(3.0)));

  // Cephes tanh rational on [0, 0.625): x + x z P(z)/Q(z), Q monic
  const __m256d z = _mm256_mul_pd(x, x);
  __m256d pp = splat(-9.64399179425052238628e-1);
  pp = _mm256_fmadd_pd(pp, z, splat(-9.92877231001918586564e1));
  pp = _mm256_fmadd_pd(pp, z, splat(-1.61468768441708447952e3));
  __m256d qq = _mm256_add_pd(z, splat(1.12811678491632931402e2));
  qq = _mm256_fmadd_pd(qq, z, splat(2.23548839060100448583e3));
  qq = _mm256_fmadd_pd(qq, z, splat(4.84406305325125486048e3));
  const __m256d th = _mm256_fmadd_pd(
      _mm256_mul_pd(x, z), _mm256_div_pd(pp, qq), x);
  const __m256d pol = _mm256_div_pd(one, th);

  // exp form for x >= 0.625: (1+q)/(1-q) with q = e^{-2x} <= e^{-1.25},
  // so the denominator never cancels
  const __m256d q = exp_pd(_mm256_mul_pd(x, splat(-2.0)));
  const __m256d expb =
      _mm256_div_pd(_mm256_add_pd(one, q), _mm256_sub_pd(one, q));

  __m256d res =
      _mm256_blendv_pd(expb, pol, _mm256_cmp_pd(x, splat(0.625), _CMP_LT_OQ));
  return _mm256_blendv_pd(
      res, ser, _mm256_cmp_pd(x, splat(kCothSeriesCut), _CMP_LT_OQ));
}

// x - sin(x) for x >= 0: shared Taylor series below the cut, subtraction
// above it
inline __m256d xmsin_pd(__m256d x) {
  const __m256d z = _mm256_mul_pd(x, x);
  __m256d p = splat(detail::kXmSinCoef[6]);
  for (int k = 5; k >= 0; --k) {
    p = _mm256_fmadd_pd(p, z, splat(detail::kXmSinCoef[k]));
  }
  const __m256d series = _mm256_mul_pd(_mm256_mul_pd(x, z), p);
  const __m256d direct = _mm256_sub_pd(x, sin_pd(x));
  return _mm256_blendv_pd(
      direct, series,
      _mm256_cmp_pd(x, splat(kXmSinSeriesCut), _CMP_LT_OQ));
}

// run f over e[], padding the tail with E = 1.0 and storing live lanes only
template <class F>
inline void run_batch(const double* e, double* out, std::size_t n, F f) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(out + i, f(_mm256_loadu_pd(e + i)));
  }
  if (i < n) {
    alignas(32) double ebuf[4] = {1.0, 1.0, 1.0, 1.0};
    alignas(32) double obuf[4];
    for (std::size_t k = 0; i + k < n; ++k) ebuf[k] = e[i + k];
    _mm256_store_pd(obuf, f(_mm256_load_pd(ebuf)));
    for (std::size_t k = 0; i + k < n; ++k) out[i + k] = obuf[k];
  }
}

// ------------------------- integrand kernels -------------------------
// operation order mirrors the scalar reference expressions

void b2_ohmic_avx2(const double* e, double* out, std::size_t n, double t,
                   double two_kT, const OhmicTerm& p) {
  const __m256d eta = splat(p.eta);
  const __m256d si = splat(p.sign * p.inv_E_cut);
  const __m256d ht = splat(0.5 * t);
  const __m256d tk = splat(two_kT);
  run_batch(e, out, n, [=](__m256d E) {
    const __m256d w = _mm256_mul_pd(_mm256_mul_pd(eta, E),
                                    exp_pd(_mm256_mul_pd(si, E)));
    const __m256d s = sin_pd(_mm256_mul_pd(ht, E));
    const __m256d c = coth_pd(_mm256_div_pd(E, tk));
    const __m256d num = _mm256_mul_pd(
        _mm256_mul_pd(_mm256_mul_pd(w, s), s), c);
    return _mm256_div_pd(num, _mm256_mul_pd(E, E));
  });
}

void b2_oneoverf_avx2(const double* e, double* out, std::size_t n, double t,
                      double two_kT, const OneOverFTerm& p) {
  const __m256d ka = splat(p.kappa_alpha);
  const __m256d ht = splat(0.5 * t);
  const __m256d tk = splat(two_kT);
  run_batch(e, out, n, [=](__m256d E) {
    // same computed coth divides the weight and multiplies the kernel
    const __m256d c = coth_pd(_mm256_div_pd(E, tk));
    const __m256d w = _mm256_div_pd(ka, _mm256_mul_pd(E, c));
    const __m256d s = sin_pd(_mm256_mul_pd(ht, E));
    const __m256d num = _mm256_mul_pd(
        _mm256_mul_pd(_mm256_mul_pd(w, c), s), s);
    return _mm256_div_pd(num, _mm256_mul_pd(E, E));
  });
}

void cp_ohmic_avx2(const double* e, double* out, std::size_t n, double t,
                   const OhmicTerm& p) {
  const __m256d eta = splat(p.eta);
  const __m256d si = splat(p.sign * p.inv_E_cut);
  const __m256d tv = splat(t);
  run_batch(e, out, n, [=](__m256d E) {
    const __m256d w = _mm256_mul_pd(_mm256_mul_pd(eta, E),
                                    exp_pd(_mm256_mul_pd(si, E)));
    const __m256d num = _mm256_mul_pd(w, xmsin_pd(_mm256_mul_pd(tv, E)));
    return _mm256_div_pd(num, _mm256_mul_pd(E, E));
  });
}

void cp_oneoverf_avx2(const double* e, double* out, std::size_t n, double t,
                      double two_kT, const OneOverFTerm& p) {
  const __m256d ka = splat(p.kappa_alpha);
  const __m256d tv = splat(t);
  const __m256d tk = splat(two_kT);
  run_batch(e, out, n, [=](__m256d E) {
    const __m256d c = coth_pd(_mm256_div_pd(E, tk));
    const __m256d w = _mm256_div_pd(ka, _mm256_mul_pd(E, c));
    const __m256d num = _mm256_mul_pd(w, xmsin_pd(_mm256_mul_pd(tv, E)));
    return _mm256_div_pd(num, _mm256_mul_pd(E, E));
  });
}

// ------------------------ primitive wrappers ------------------------

void v_exp_avx2(const double* x, double* out, std::size_t n) {
  run_batch(x, out, n, [](__m256d v) { return exp_pd(v); });
}

void v_sin_avx2(const double* x, double* out, std::size_t n) {
  run_batch(x, out, n, [](__m256d v) { return sin_pd(v); });
}

void v_coth_avx2(const double* x, double* out, std::size_t n) {
  run_batch(x, out, n, [](__m256d v) { return coth_pd(v); });
}

void v_xmsin_avx2(const double* x, double* out, std::size_t n) {
  run_batch(x, out, n, [](__m256d v) { return xmsin_pd(v); });
}

const KernelTable kAvx2Table = {
    "avx2",
    b2_ohmic_avx2,
    b2_oneoverf_avx2,
    cp_ohmic_avx2,
    cp_oneoverf_avx2,
    v_exp_avx2,
    v_sin_avx2,
    v_coth_avx2,
    v_xmsin_avx2,
};

}  // namespace

const KernelTable* avx2_table() { return &kAvx2Table; }

}  // namespace jcq::simd

#else  // no AVX2/FMA at compile time: stub

namespace jcq::simd {

const KernelTable* avx2_table() { return nullptr; }

}  // namespace jcq::simd

#endif
