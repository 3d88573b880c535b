#pragma once

// Inner loops shared by every module. Each kernel has a scalar reference
// implementation and, on x86-64, an AVX2/FMA variant. `active()` picks the
// variant once per process: AVX2 when the CPU reports avx2+fma, unless the
// environment variable SPECTRAL_GATE_ISA=scalar is set.

#include <complex>
#include <cstddef>

namespace sgate::kernels {

using cplx = std::complex<double>;

enum class Isa { Scalar, Avx2 };

struct KernelTable {
  Isa isa;
  /// Σ a[i]·conj(b[i])
  cplx (*dotc)(const cplx* a, const cplx* b, std::size_t n);
  /// Σ |a[i]|²
  double (*norm2)(const cplx* a, std::size_t n);
  /// y[i] += alpha·x[i]
  void (*axpy)(cplx alpha, const cplx* x, cplx* y, std::size_t n);
  /// out[p] = M[p]·v[p] for `count` row-major dim×dim matrices. out must not alias v.
  void (*batched_matvec)(const cplx* mats, const cplx* vecs, cplx* out, std::size_t count,
                         std::size_t dim);
};

const KernelTable& scalar_table();
/// nullptr when the AVX2 variant is not compiled in or the CPU lacks it.
const KernelTable* avx2_table();
const KernelTable& active();
const char* to_string(Isa isa);

}  // namespace sgate::kernels
