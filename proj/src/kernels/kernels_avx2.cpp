// Compiled with -mavx2 -mfma. Nothing here may run before the dispatcher has
// confirmed CPU support.

#include <immintrin.h>

#include "sgate/kernels.hpp"

namespace sgate::kernels {
namespace {

// Two complex doubles per __m256d: [re0, im0, re1, im1].

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

// Sum of the two complex lanes of v.
inline cplx csum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return {_mm_cvtsd_f64(s), _mm_cvtsd_f64(_mm_unpackhi_pd(s, s))};
}

// a·b for two complex lanes.
inline __m256d cmul(__m256d a, __m256d b) {
  const __m256d b_re = _mm256_movedup_pd(b);           // [br0, br0, br1, br1]
  const __m256d b_im = _mm256_permute_pd(b, 0xF);      // [bi0, bi0, bi1, bi1]
  const __m256d a_sw = _mm256_permute_pd(a, 0x5);      // [ai0, ar0, ai1, ar1]
  return _mm256_fmaddsub_pd(a, b_re, _mm256_mul_pd(a_sw, b_im));
}

cplx dotc_avx2(const cplx* a, const cplx* b, std::size_t n) {
  const double* pa = reinterpret_cast<const double*>(a);
  const double* pb = reinterpret_cast<const double*>(b);
  __m256d acc_re = _mm256_setzero_pd();  // ar·br, ai·bi
  __m256d acc_im = _mm256_setzero_pd();  // ar·bi, ai·br
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d va = _mm256_loadu_pd(pa + 2 * i);
    const __m256d vb = _mm256_loadu_pd(pb + 2 * i);
    acc_re = _mm256_fmadd_pd(va, vb, acc_re);
    acc_im = _mm256_fmadd_pd(va, _mm256_permute_pd(vb, 0x5), acc_im);
  }
  const double re = hsum(acc_re);
  const cplx parts = csum(acc_im);  // (Σ ar·bi, Σ ai·br)
  double im = parts.imag() - parts.real();
  double re_tail = 0.0;
  for (; i < n; ++i) {
    re_tail += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
    im += a[i].imag() * b[i].real() - a[i].real() * b[i].imag();
  }
  return {re + re_tail, im};
}

double norm2_avx2(const cplx* a, std::size_t n) {
  const double* pa = reinterpret_cast<const double*>(a);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d va = _mm256_loadu_pd(pa + 2 * i);
    acc = _mm256_fmadd_pd(va, va, acc);
  }
  double s = hsum(acc);
  for (; i < n; ++i) s += a[i].real() * a[i].real() + a[i].imag() * a[i].imag();
  return s;
}

void axpy_avx2(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
  const double* px = reinterpret_cast<const double*>(x);
  double* py = reinterpret_cast<double*>(y);
  const __m256d va = _mm256_setr_pd(alpha.real(), alpha.imag(), alpha.real(), alpha.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d vx = _mm256_loadu_pd(px + 2 * i);
    const __m256d vy = _mm256_loadu_pd(py + 2 * i);
    _mm256_storeu_pd(py + 2 * i, _mm256_add_pd(vy, cmul(vx, va)));
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

void batched_matvec_avx2(const cplx* mats, const cplx* vecs, cplx* out, std::size_t count,
                         std::size_t dim) {
  const std::size_t msize = dim * dim;
  for (std::size_t p = 0; p < count; ++p) {
    const cplx* m = mats + p * msize;
    const cplx* v = vecs + p * dim;
    const double* pv = reinterpret_cast<const double*>(v);
    cplx* o = out + p * dim;
    for (std::size_t r = 0; r < dim; ++r) {
      const double* row = reinterpret_cast<const double*>(m + r * dim);
      __m256d acc = _mm256_setzero_pd();
      std::size_t c = 0;
      for (; c + 2 <= dim; c += 2) {
        acc = _mm256_add_pd(acc, cmul(_mm256_loadu_pd(row + 2 * c), _mm256_loadu_pd(pv + 2 * c)));
      }
      cplx s = csum(acc);
      for (; c < dim; ++c) s += m[r * dim + c] * v[c];
      o[r] = s;
    }
  }
}

}  // namespace

const KernelTable& avx2_table_impl() {
  static const KernelTable table{Isa::Avx2, dotc_avx2, norm2_avx2, axpy_avx2, batched_matvec_avx2};
  return table;
}

}  // namespace sgate::kernels
