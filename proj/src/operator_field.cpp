#include "sgate/operator_field.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sgate/errors.hpp"
#include "sgate/kernels.hpp"

namespace sgate {

namespace {

[[noreturn]] void dim_error(const std::string& what) {
  throw Error(ErrorKind::Dimension, "operator-pencil", what);
}

void store(const Matrix& m, cplx* dst, std::size_t d) {
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c) dst[r * d + c] = m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
}

}  // namespace

OperatorField::OperatorField(Grid grid, TensorShape shape, std::vector<cplx> mats)
    : grid_(std::move(grid)), shape_(std::move(shape)), mats_(std::move(mats)) {
  if (mats_.size() != grid_.points() * shape_.dim() * shape_.dim())
    dim_error("operator field size does not match grid points × dim²");
}

OperatorField OperatorField::constant(const Grid& grid, const TensorShape& shape, const Matrix& m) {
  auto ids = std::make_shared<const std::vector<int>>(grid.points(), 0);
  return multiphase(grid, shape, std::move(ids), {m});
}

OperatorField OperatorField::multiphase(const Grid& grid, const TensorShape& shape,
                                        std::shared_ptr<const std::vector<int>> phase_ids,
                                        std::vector<Matrix> phase_mats) {
  const auto d = shape.dim();
  if (!phase_ids || phase_ids->size() != grid.points()) dim_error("phase ids do not cover the grid");
  for (const auto& m : phase_mats)
    if (static_cast<std::size_t>(m.rows()) != d || static_cast<std::size_t>(m.cols()) != d)
      dim_error("phase matrix does not match shape dim");
  std::vector<cplx> flat(phase_mats.size() * d * d);
  for (std::size_t i = 0; i < phase_mats.size(); ++i) store(phase_mats[i], flat.data() + i * d * d, d);
  std::vector<cplx> mats(grid.points() * d * d);
  for (std::size_t x = 0; x < grid.points(); ++x) {
    const int id = (*phase_ids)[x];
    if (id < 0 || static_cast<std::size_t>(id) >= phase_mats.size()) dim_error("phase id without a matrix");
    std::copy_n(flat.data() + static_cast<std::size_t>(id) * d * d, d * d, mats.data() + x * d * d);
  }
  OperatorField out(grid, shape, std::move(mats));
  out.phase_ids_ = std::move(phase_ids);
  out.phase_mats_ = std::move(phase_mats);
  return out;
}

Matrix OperatorField::at(std::size_t x) const {
  const auto d = static_cast<Eigen::Index>(dim());
  Matrix m(d, d);
  const cplx* src = mats_.data() + x * dim() * dim();
  for (Eigen::Index r = 0; r < d; ++r)
    for (Eigen::Index c = 0; c < d; ++c) m(r, c) = src[r * d + c];
  return m;
}

Field OperatorField::apply(const Field& p) const {
  if (!(p.grid() == grid_) || p.dim() != dim()) dim_error("field does not match operator grid/dim");
  Field out(p.grid(), p.shape());
  kernels::active().batched_matvec(mats_.data(), p.values().data(), out.values().data(), points(), dim());
  return out;
}

std::vector<Matrix> OperatorField::distinct() const {
  if (has_phases()) {
    std::vector<char> present(phase_mats_.size(), 0);
    for (int id : *phase_ids_) present[static_cast<std::size_t>(id)] = 1;
    std::vector<Matrix> out;
    for (std::size_t i = 0; i < phase_mats_.size(); ++i)
      if (present[i]) out.push_back(phase_mats_[i]);
    return out;
  }
  const auto dd = dim() * dim();
  std::vector<std::size_t> order(points());
  std::iota(order.begin(), order.end(), 0);
  auto less = [&](std::size_t a, std::size_t b) {
    const cplx* pa = mats_.data() + a * dd;
    const cplx* pb = mats_.data() + b * dd;
    for (std::size_t i = 0; i < dd; ++i) {
      if (pa[i].real() != pb[i].real()) return pa[i].real() < pb[i].real();
      if (pa[i].imag() != pb[i].imag()) return pa[i].imag() < pb[i].imag();
    }
    return false;
  };
  std::sort(order.begin(), order.end(), less);
  std::vector<Matrix> out;
  for (std::size_t i = 0; i < order.size(); ++i)
    if (i == 0 || less(order[i - 1], order[i])) out.push_back(at(order[i]));
  return out;
}

Matrix hermitian_part(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

double min_eig_hermitian(const Matrix& h) {
  if (h.rows() == 1) return h(0, 0).real();
  if (h.rows() == 2) {
    const double a = h(0, 0).real();
    const double c = h(1, 1).real();
    const double half_diff = 0.5 * (a - c);
    return 0.5 * (a + c) - std::sqrt(half_diff * half_diff + std::norm(h(0, 1)));
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

}  // namespace sgate
