#pragma once

#include <memory>
#include <vector>

#include "sgate/field.hpp"

namespace sgate {

/// Field of dim×dim matrices acting pointwise on fields of a given shape.
/// When built from a phase layout it remembers the per-phase matrices, so
/// reductions can run over phases instead of grid points.
class OperatorField {
 public:
  OperatorField() = default;
  /// `mats` holds points × dim² values, row-major per point.
  OperatorField(Grid grid, TensorShape shape, std::vector<cplx> mats);

  static OperatorField constant(const Grid& grid, const TensorShape& shape, const Matrix& m);
  /// L(x) = phase_mats[phase_ids[x]].
  static OperatorField multiphase(const Grid& grid, const TensorShape& shape,
                                  std::shared_ptr<const std::vector<int>> phase_ids,
                                  std::vector<Matrix> phase_mats);

  const Grid& grid() const noexcept { return grid_; }
  const TensorShape& shape() const noexcept { return shape_; }
  std::size_t dim() const noexcept { return shape_.dim(); }
  std::size_t points() const noexcept { return grid_.points(); }
  const std::vector<cplx>& raw() const noexcept { return mats_; }

  Matrix at(std::size_t x) const;
  /// Pointwise product L(x)P(x).
  Field apply(const Field& p) const;

  bool has_phases() const noexcept { return phase_ids_ != nullptr; }
  const std::shared_ptr<const std::vector<int>>& phase_ids() const noexcept { return phase_ids_; }
  const std::vector<Matrix>& phase_matrices() const noexcept { return phase_mats_; }

  /// Matrices L takes on the grid, each listed once: the phases that occupy
  /// at least one point, or the distinct point values otherwise.
  std::vector<Matrix> distinct() const;

  /// Applies f to every matrix, keeping phase structure.
  template <class Fn>
  OperatorField map(Fn&& f, const TensorShape& new_shape) const {
    if (has_phases()) {
      std::vector<Matrix> pm;
      pm.reserve(phase_mats_.size());
      for (const auto& m : phase_mats_) pm.push_back(f(m));
      return multiphase(grid_, new_shape, phase_ids_, std::move(pm));
    }
    const auto nd = new_shape.dim();
    std::vector<cplx> out(points() * nd * nd);
    for (std::size_t x = 0; x < points(); ++x) {
      const Matrix m = f(at(x));
      for (std::size_t r = 0; r < nd; ++r)
        for (std::size_t c = 0; c < nd; ++c)
          out[x * nd * nd + r * nd + c] = m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    }
    return OperatorField(grid_, new_shape, std::move(out));
  }
  template <class Fn>
  OperatorField map(Fn&& f) const {
    return map(std::forward<Fn>(f), shape_);
  }

 private:
  Grid grid_;
  TensorShape shape_;
  std::vector<cplx> mats_;
  std::shared_ptr<const std::vector<int>> phase_ids_;
  std::vector<Matrix> phase_mats_;
};

/// Hermitian part (M + M†)/2.
Matrix hermitian_part(const Matrix& m);
/// Smallest eigenvalue of a Hermitian matrix (closed form up to 2×2).
double min_eig_hermitian(const Matrix& h);

}  // namespace sgate
