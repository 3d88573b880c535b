#include "sgate/kernels.hpp"

namespace sgate::kernels {
namespace {

cplx dotc_scalar(const cplx* a, const cplx* b, std::size_t n) {
  double re = 0.0;
  double im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    re += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
    im += a[i].imag() * b[i].real() - a[i].real() * b[i].imag();
  }
  return {re, im};
}

double norm2_scalar(const cplx* a, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i].real() * a[i].real() + a[i].imag() * a[i].imag();
  return s;
}

void axpy_scalar(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void batched_matvec_scalar(const cplx* mats, const cplx* vecs, cplx* out, std::size_t count,
                           std::size_t dim) {
  const std::size_t msize = dim * dim;
  for (std::size_t p = 0; p < count; ++p) {
    const cplx* m = mats + p * msize;
    const cplx* v = vecs + p * dim;
    cplx* o = out + p * dim;
    for (std::size_t r = 0; r < dim; ++r) {
      double re = 0.0;
      double im = 0.0;
      const cplx* row = m + r * dim;
      for (std::size_t c = 0; c < dim; ++c) {
        re += row[c].real() * v[c].real() - row[c].imag() * v[c].imag();
        im += row[c].real() * v[c].imag() + row[c].imag() * v[c].real();
      }
      o[r] = {re, im};
    }
  }
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable table{Isa::Scalar, dotc_scalar, norm2_scalar, axpy_scalar,
                                 batched_matvec_scalar};
  return table;
}

}  // namespace sgate::kernels
