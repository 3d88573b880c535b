#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sgate/field.hpp"

namespace sgate {

/// Fourier symbol of the differential constraint: E-fields at wavevector k
/// take values in range S(k), where S(k) is dim × potential_dim.
struct SymbolMap {
  std::string name;
  TensorShape shape;
  int potential_dim = 0;
  std::function<Matrix(const Vec3& k)> eval;
  /// range S(sk) = range S(k) for every s > 0.
  bool scale_invariant = false;
  /// Optional exact limit of range S(s·khat) as s → ∞, given as a matrix whose
  /// range is that limit. Used by the Q* checker.
  std::function<Matrix(const Vec3& khat)> asymptotic;
};

/// E = S(∇)u for a potential field u with potential_dim components, computed
/// spectrally.
Field apply_symbol(const SymbolMap& symbol, const Field& potential);

/// Orthonormal basis of range(S) with rank tolerance relative to σ_max.
Matrix range_basis(const Matrix& s, double rel_tol = 1e-10);

/// Per-wavevector orthogonal projectors Π(k) onto E_k on a fixed grid.
/// Immutable once built.
class ProjectionOperator {
 public:
  ProjectionOperator() = default;
  /// Builds from per-k projectors (row-major dim×dim each, Fourier index order).
  ProjectionOperator(Grid grid, TensorShape shape, std::string symbol_name,
                     std::vector<Matrix> projectors);

  const Grid& grid() const noexcept { return grid_; }
  const TensorShape& shape() const noexcept { return shape_; }
  std::size_t dim() const noexcept { return shape_.dim(); }
  const std::string& symbol_name() const noexcept { return symbol_name_; }

  Matrix projector(std::size_t k) const;
  /// Orthonormal columns spanning E_k.
  const Matrix& basis(std::size_t k) const { return bases_[k]; }
  /// Total dimension of the discrete E-space.
  std::size_t subspace_dim() const noexcept { return subspace_dim_; }
  /// Row-major projector storage, dim² values per Fourier index.
  const std::vector<cplx>& raw() const noexcept { return mats_; }

  /// Γ₁P
  Field apply(const Field& p) const;
  /// Γ₂P = P − Γ₁P
  Field apply_complement(const Field& p) const;
  /// Applies Π(k) to Fourier coefficients in place.
  void apply_fourier(std::span<cplx> coeffs) const;

  /// Operator with Π'(k) = I − Π(k).
  ProjectionOperator complement() const;
  /// Projector of the doubled space blockdiag(I − Π(k), Π(k)): first slot
  /// J-type, second slot E-type.
  ProjectionOperator doubled() const;

 private:
  void check(const Field& p) const;

  Grid grid_;
  TensorShape shape_;
  std::string symbol_name_;
  std::vector<cplx> mats_;
  std::vector<Matrix> bases_;
  std::size_t subspace_dim_ = 0;
};

ProjectionOperator build_projection(const SymbolMap& symbol, const Grid& grid, int workers = 0);

inline Field apply_gamma1(const ProjectionOperator& pi, const Field& p) { return pi.apply(p); }
inline Field apply_gamma2(const ProjectionOperator& pi, const Field& p) {
  return pi.apply_complement(p);
}

/// max over trials of |(Γ₂P, Γ₁Q)| / (‖P‖‖Q‖) for random P, Q.
double verify_subspace_orthogonality(const ProjectionOperator& pi, int trials, std::uint64_t seed);

/// Largest entrywise defects of Π(k)² − Π(k) and Π(k)† − Π(k) over all k.
struct ProjectorDefects {
  double idempotence = 0.0;
  double hermiticity = 0.0;
};
ProjectorDefects projector_defects(const ProjectionOperator& pi);

}  // namespace sgate
