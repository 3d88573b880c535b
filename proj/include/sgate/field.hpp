#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "sgate/common.hpp"

namespace sgate {

/// Layout of the tensor space values live in: an ordered list of complex
/// matrix blocks. A value is flattened block by block in declared order,
/// row-major inside each block. This order is also the on-disk order and must
/// not change.
class TensorShape {
 public:
  struct Block {
    int rows;
    int cols;
    friend bool operator==(const Block&, const Block&) = default;
  };

  TensorShape() = default;
  explicit TensorShape(std::vector<Block> blocks);

  static TensorShape vector(int n) { return TensorShape({{n, 1}}); }

  const std::vector<Block>& blocks() const noexcept { return blocks_; }
  std::size_t dim() const noexcept { return dim_; }
  /// Offset of block b inside a flattened value.
  std::size_t offset(std::size_t b) const;
  /// Shape of the ℓ-fold or doubled space: the block list repeated `times`.
  TensorShape repeated(int times) const;

  friend bool operator==(const TensorShape&, const TensorShape&) = default;

 private:
  std::vector<Block> blocks_;
  std::size_t dim_ = 0;
};

using Vec3 = std::array<double, 3>;

/// Periodic cell sampled on a regular grid. Points are numbered row-major with
/// axis 0 slowest, matching FFTW's layout.
class Grid {
 public:
  Grid() = default;
  Grid(int d, std::array<int, 3> sizes, Vec3 cell = {1.0, 1.0, 1.0});

  static Grid square(int d, int n, double length = 1.0);

  int d() const noexcept { return d_; }
  int size(int axis) const { return sizes_[static_cast<std::size_t>(axis)]; }
  const std::array<int, 3>& sizes() const noexcept { return sizes_; }
  const Vec3& cell() const noexcept { return cell_; }
  std::size_t points() const noexcept { return points_; }

  std::array<int, 3> multi_index(std::size_t linear) const;
  std::size_t linear_index(std::array<int, 3> idx) const;
  /// Signed lattice frequency of an index along one axis, in [-N/2, N/2).
  static int frequency(int index, int n) { return index < (n + 1) / 2 ? index : index - n; }
  /// Integer frequency vector of a Fourier-side index.
  std::array<int, 3> frequencies(std::size_t linear) const;
  /// Wavevector 2π m / L of a Fourier-side index (zero beyond d).
  Vec3 wavevector(std::size_t linear) const;
  /// Physical position of a real-space point (zero beyond d).
  Vec3 position(std::size_t linear) const;

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  int d_ = 0;
  std::array<int, 3> sizes_{1, 1, 1};
  Vec3 cell_{1.0, 1.0, 1.0};
  std::size_t points_ = 0;
};

/// Discrete periodic field: `points × dim` complex values, point-major.
class Field {
 public:
  Field() = default;
  Field(Grid grid, TensorShape shape);
  Field(Grid grid, TensorShape shape, std::vector<cplx> values);

  const Grid& grid() const noexcept { return grid_; }
  const TensorShape& shape() const noexcept { return shape_; }
  std::size_t dim() const noexcept { return shape_.dim(); }
  std::size_t points() const noexcept { return grid_.points(); }

  std::span<const cplx> values() const noexcept { return values_; }
  std::span<cplx> values() noexcept { return values_; }
  std::span<const cplx> at(std::size_t point) const {
    return std::span<const cplx>(values_).subspan(point * dim(), dim());
  }
  std::span<cplx> at(std::size_t point) {
    return std::span<cplx>(values_).subspan(point * dim(), dim());
  }
  cplx& operator()(std::size_t point, std::size_t comp) { return values_[point * dim() + comp]; }
  cplx operator()(std::size_t point, std::size_t comp) const {
    return values_[point * dim() + comp];
  }

  bool compatible(const Field& other) const {
    return grid_ == other.grid_ && shape_ == other.shape_;
  }

 private:
  Grid grid_;
  TensorShape shape_;
  std::vector<cplx> values_;
};

enum class Direction { Forward, Inverse };

/// (1/N) Σ_x Σ_c P·conj(Q). Throws a dimension error on mismatch.
cplx inner_product(const Field& p, const Field& q);
double norm(const Field& p);
/// Unitary DFT applied to every component.
Field transform(const Field& p, Direction direction);
/// In-place unitary DFT of a point-major buffer with `dim` interleaved components.
void transform_inplace(const Grid& grid, std::size_t dim, std::span<cplx> data, Direction direction);
/// Complex Gaussian entries with E|z|² = 1, reproducible for a given seed.
Field random_field(const Grid& grid, const TensorShape& shape, std::uint64_t seed);

Field operator+(const Field& a, const Field& b);
Field operator-(const Field& a, const Field& b);
Field operator*(cplx s, const Field& a);
/// y += alpha·x
void axpy(cplx alpha, const Field& x, Field& y);
/// Component-wise concatenation [a; b] on the doubled shape.
Field stack(const Field& a, const Field& b);
/// Inverse of stack: first or second half of the components.
Field half(const Field& ab, int which);

}  // namespace sgate
