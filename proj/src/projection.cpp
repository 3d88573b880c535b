#include "sgate/projection.hpp"

#include <cmath>

#include <Eigen/SVD>

#include "sgate/errors.hpp"
#include "sgate/kernels.hpp"
#include "sgate/parallel.hpp"

namespace sgate {

namespace {

Matrix eigen_range(const Matrix& pi) {
  // Π is a Hermitian projector; its range is spanned by eigenvectors with
  // eigenvalue 1.
  Eigen::SelfAdjointEigenSolver<Matrix> es(pi);
  const auto& ev = es.eigenvalues();
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (ev(i) > 0.5) keep.push_back(i);
  Matrix u(pi.rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t j = 0; j < keep.size(); ++j)
    u.col(static_cast<Eigen::Index>(j)) = es.eigenvectors().col(keep[j]);
  return u;
}

}  // namespace

Matrix range_basis(const Matrix& s, double rel_tol) {
  if (s.size() == 0) return Matrix(s.rows(), 0);
  Eigen::JacobiSVD<Matrix> svd(s, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return Matrix(s.rows(), 0);
  Eigen::Index r = 0;
  while (r < sv.size() && sv(r) > rel_tol * sv(0)) ++r;
  return svd.matrixU().leftCols(r);
}

Field apply_symbol(const SymbolMap& symbol, const Field& potential) {
  const auto& grid = potential.grid();
  if (potential.dim() != static_cast<std::size_t>(symbol.potential_dim))
    throw Error(ErrorKind::Dimension, "subspace-projections", "potential has wrong number of components");
  const Field u = transform(potential, Direction::Forward);
  Field e(grid, symbol.shape);
  for (std::size_t k = 0; k < grid.points(); ++k) {
    const Matrix s = symbol.eval(grid.wavevector(k));
    const auto uk = u.at(k);
    const Vector v = s * Eigen::Map<const Vector>(uk.data(), static_cast<Eigen::Index>(uk.size()));
    std::copy(v.data(), v.data() + v.size(), e.at(k).begin());
  }
  transform_inplace(grid, e.dim(), e.values(), Direction::Inverse);
  return e;
}

ProjectionOperator::ProjectionOperator(Grid grid, TensorShape shape, std::string symbol_name,
                                       std::vector<Matrix> projectors)
    : grid_(std::move(grid)), shape_(std::move(shape)), symbol_name_(std::move(symbol_name)) {
  const auto n = grid_.points();
  const auto d = static_cast<Eigen::Index>(shape_.dim());
  if (projectors.size() != n)
    throw Error(ErrorKind::Dimension, "subspace-projections", "one projector per Fourier index required");
  mats_.resize(n * shape_.dim() * shape_.dim());
  bases_.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const Matrix& p = projectors[k];
    if (p.rows() != d || p.cols() != d)
      throw Error(ErrorKind::Dimension, "subspace-projections", "projector has wrong size");
    cplx* dst = mats_.data() + k * shape_.dim() * shape_.dim();
    for (Eigen::Index r = 0; r < d; ++r)
      for (Eigen::Index c = 0; c < d; ++c) dst[r * d + c] = p(r, c);
    bases_[k] = eigen_range(p);
    subspace_dim_ += static_cast<std::size_t>(bases_[k].cols());
  }
}

Matrix ProjectionOperator::projector(std::size_t k) const {
  const auto d = static_cast<Eigen::Index>(dim());
  Matrix p(d, d);
  const cplx* src = mats_.data() + k * dim() * dim();
  for (Eigen::Index r = 0; r < d; ++r)
    for (Eigen::Index c = 0; c < d; ++c) p(r, c) = src[r * d + c];
  return p;
}

void ProjectionOperator::check(const Field& p) const {
  if (!(p.grid() == grid_) || p.dim() != dim())
    throw Error(ErrorKind::Dimension, "subspace-projections", "field does not match projector grid/shape");
}

void ProjectionOperator::apply_fourier(std::span<cplx> coeffs) const {
  std::vector<cplx> tmp(coeffs.begin(), coeffs.end());
  kernels::active().batched_matvec(mats_.data(), tmp.data(), coeffs.data(), grid_.points(), dim());
}

Field ProjectionOperator::apply(const Field& p) const {
  check(p);
  Field f = transform(p, Direction::Forward);
  apply_fourier(f.values());
  transform_inplace(f.grid(), f.dim(), f.values(), Direction::Inverse);
  return f;
}

Field ProjectionOperator::apply_complement(const Field& p) const {
  check(p);
  Field f = transform(p, Direction::Forward);
  std::vector<cplx> proj(f.values().size());
  kernels::active().batched_matvec(mats_.data(), f.values().data(), proj.data(), grid_.points(), dim());
  kernels::active().axpy(-1.0, proj.data(), f.values().data(), proj.size());
  transform_inplace(f.grid(), f.dim(), f.values(), Direction::Inverse);
  return f;
}

ProjectionOperator ProjectionOperator::complement() const {
  std::vector<Matrix> out(grid_.points());
  const auto d = static_cast<Eigen::Index>(dim());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = Matrix::Identity(d, d) - projector(k);
  return ProjectionOperator(grid_, shape_, symbol_name_ + "/complement", std::move(out));
}

ProjectionOperator ProjectionOperator::doubled() const {
  std::vector<Matrix> out(grid_.points());
  const auto d = static_cast<Eigen::Index>(dim());
  for (std::size_t k = 0; k < out.size(); ++k) {
    const Matrix p = projector(k);
    Matrix m = Matrix::Zero(2 * d, 2 * d);
    m.topLeftCorner(d, d) = Matrix::Identity(d, d) - p;
    m.bottomRightCorner(d, d) = p;
    out[k] = std::move(m);
  }
  return ProjectionOperator(grid_, shape_.repeated(2), symbol_name_ + "/doubled", std::move(out));
}

ProjectionOperator build_projection(const SymbolMap& symbol, const Grid& grid, int workers) {
  if (!symbol.eval) throw Error(ErrorKind::Symbol, "subspace-projections", "symbol has no evaluator");
  const auto d = static_cast<Eigen::Index>(symbol.shape.dim());
  std::vector<Matrix> pis(grid.points());
  parallel_for(grid.points(), workers, [&](std::size_t k) {
    const Matrix s = symbol.eval(grid.wavevector(k));
    if (s.rows() != d)
      throw Error(ErrorKind::Symbol, "subspace-projections", "symbol rows do not match shape dim");
    if (!s.allFinite())
      throw Error(ErrorKind::Symbol, "subspace-projections", "symbol '" + symbol.name + "' has non-finite entries");
    const Matrix u = range_basis(s);
    // Full rank snaps to the exact identity so complement spaces are exactly zero.
    pis[k] = u.cols() == d ? Matrix(Matrix::Identity(d, d)) : Matrix(u * u.adjoint());
  });
  return ProjectionOperator(grid, symbol.shape, symbol.name, std::move(pis));
}

double verify_subspace_orthogonality(const ProjectionOperator& pi, int trials, std::uint64_t seed) {
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    const Field p = random_field(pi.grid(), pi.shape(), seed + 2 * static_cast<std::uint64_t>(t));
    const Field q = random_field(pi.grid(), pi.shape(), seed + 2 * static_cast<std::uint64_t>(t) + 1);
    const double scale = norm(p) * norm(q);
    const double v = std::abs(inner_product(apply_gamma2(pi, p), apply_gamma1(pi, q)));
    if (scale > 0.0) worst = std::max(worst, v / scale);
  }
  return worst;
}

ProjectorDefects projector_defects(const ProjectionOperator& pi) {
  ProjectorDefects out;
  for (std::size_t k = 0; k < pi.grid().points(); ++k) {
    const Matrix p = pi.projector(k);
    out.idempotence = std::max(out.idempotence, (p * p - p).norm());
    out.hermiticity = std::max(out.hermiticity, (p.adjoint() - p).norm());
  }
  return out;
}

}  // namespace sgate
