#include "sgate/field.hpp"

#include <cmath>
#include <numeric>
#include <random>

#include "sgate/errors.hpp"
#include "sgate/kernels.hpp"

namespace sgate {

namespace {

[[noreturn]] void dimension_error(const std::string& what) {
  throw Error(ErrorKind::Dimension, "field-core", what);
}

void require_compatible(const Field& a, const Field& b, const char* op) {
  if (!a.compatible(b)) dimension_error(std::string(op) + ": grid or shape mismatch");
}

}  // namespace

TensorShape::TensorShape(std::vector<Block> blocks) : blocks_(std::move(blocks)) {
  if (blocks_.empty()) dimension_error("tensor shape needs at least one block");
  for (const auto& b : blocks_) {
    if (b.rows < 1 || b.cols < 1) dimension_error("tensor shape block with non-positive extent");
    dim_ += static_cast<std::size_t>(b.rows * b.cols);
  }
}

std::size_t TensorShape::offset(std::size_t b) const {
  if (b > blocks_.size()) dimension_error("block index out of range");
  std::size_t off = 0;
  for (std::size_t i = 0; i < b; ++i) off += static_cast<std::size_t>(blocks_[i].rows * blocks_[i].cols);
  return off;
}

TensorShape TensorShape::repeated(int times) const {
  if (times < 1) dimension_error("repetition count must be positive");
  std::vector<Block> out;
  out.reserve(blocks_.size() * static_cast<std::size_t>(times));
  for (int i = 0; i < times; ++i) out.insert(out.end(), blocks_.begin(), blocks_.end());
  return TensorShape(std::move(out));
}

Grid::Grid(int d, std::array<int, 3> sizes, Vec3 cell) : d_(d) {
  if (d < 1 || d > 3) dimension_error("grid dimension must be 1, 2 or 3");
  points_ = 1;
  for (int a = 0; a < 3; ++a) {
    const auto i = static_cast<std::size_t>(a);
    if (a < d) {
      if (sizes[i] < 2) dimension_error("every grid axis needs at least 2 points");
      if (!(cell[i] > 0.0) || !std::isfinite(cell[i])) dimension_error("cell lengths must be positive");
      sizes_[i] = sizes[i];
      cell_[i] = cell[i];
      points_ *= static_cast<std::size_t>(sizes[i]);
    } else {
      sizes_[i] = 1;
      cell_[i] = 1.0;
    }
  }
}

Grid Grid::square(int d, int n, double length) {
  return Grid(d, {n, d > 1 ? n : 1, d > 2 ? n : 1}, {length, length, length});
}

std::array<int, 3> Grid::multi_index(std::size_t linear) const {
  std::array<int, 3> idx{0, 0, 0};
  for (int a = d_ - 1; a >= 0; --a) {
    const auto n = static_cast<std::size_t>(sizes_[static_cast<std::size_t>(a)]);
    idx[static_cast<std::size_t>(a)] = static_cast<int>(linear % n);
    linear /= n;
  }
  return idx;
}

std::size_t Grid::linear_index(std::array<int, 3> idx) const {
  std::size_t lin = 0;
  for (int a = 0; a < d_; ++a) {
    const auto i = static_cast<std::size_t>(a);
    const int n = sizes_[i];
    const int v = ((idx[i] % n) + n) % n;
    lin = lin * static_cast<std::size_t>(n) + static_cast<std::size_t>(v);
  }
  return lin;
}

std::array<int, 3> Grid::frequencies(std::size_t linear) const {
  auto idx = multi_index(linear);
  for (int a = 0; a < d_; ++a) {
    const auto i = static_cast<std::size_t>(a);
    idx[i] = frequency(idx[i], sizes_[i]);
  }
  return idx;
}

Vec3 Grid::wavevector(std::size_t linear) const {
  const auto m = frequencies(linear);
  Vec3 k{0.0, 0.0, 0.0};
  for (int a = 0; a < d_; ++a) {
    const auto i = static_cast<std::size_t>(a);
    k[i] = 2.0 * kPi * m[i] / cell_[i];
  }
  return k;
}

Vec3 Grid::position(std::size_t linear) const {
  const auto idx = multi_index(linear);
  Vec3 x{0.0, 0.0, 0.0};
  for (int a = 0; a < d_; ++a) {
    const auto i = static_cast<std::size_t>(a);
    x[i] = cell_[i] * idx[i] / sizes_[i];
  }
  return x;
}

Field::Field(Grid grid, TensorShape shape)
    : grid_(std::move(grid)), shape_(std::move(shape)), values_(grid_.points() * shape_.dim()) {}

Field::Field(Grid grid, TensorShape shape, std::vector<cplx> values)
    : grid_(std::move(grid)), shape_(std::move(shape)), values_(std::move(values)) {
  if (values_.size() != grid_.points() * shape_.dim())
    dimension_error("field value count does not match grid points × shape dim");
  for (const auto& v : values_)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      dimension_error("field values must be finite");
}

cplx inner_product(const Field& p, const Field& q) {
  require_compatible(p, q, "inner_product");
  const auto& k = kernels::active();
  const auto n = p.values().size();
  return k.dotc(p.values().data(), q.values().data(), n) / static_cast<double>(p.points());
}

double norm(const Field& p) {
  const auto& k = kernels::active();
  return std::sqrt(k.norm2(p.values().data(), p.values().size()) / static_cast<double>(p.points()));
}

Field transform(const Field& p, Direction direction) {
  Field out = p;
  transform_inplace(out.grid(), out.dim(), out.values(), direction);
  return out;
}

Field random_field(const Grid& grid, const TensorShape& shape, std::uint64_t seed) {
  Field f(grid, shape);
  std::mt19937_64 rng(seed);
  // Var(re) = Var(im) = 1/2 so that E|z|² = 1.
  std::normal_distribution<double> g(0.0, std::sqrt(0.5));
  for (auto& v : f.values()) {
    const double re = g(rng);
    const double im = g(rng);
    v = cplx(re, im);
  }
  return f;
}

Field operator+(const Field& a, const Field& b) {
  Field out = a;
  axpy(1.0, b, out);
  return out;
}

Field operator-(const Field& a, const Field& b) {
  Field out = a;
  axpy(-1.0, b, out);
  return out;
}

Field operator*(cplx s, const Field& a) {
  Field out = a;
  for (auto& v : out.values()) v *= s;
  return out;
}

void axpy(cplx alpha, const Field& x, Field& y) {
  require_compatible(x, y, "axpy");
  kernels::active().axpy(alpha, x.values().data(), y.values().data(), x.values().size());
}

Field stack(const Field& a, const Field& b) {
  if (!(a.grid() == b.grid())) dimension_error("stack: grid mismatch");
  std::vector<TensorShape::Block> blocks = a.shape().blocks();
  blocks.insert(blocks.end(), b.shape().blocks().begin(), b.shape().blocks().end());
  Field out(a.grid(), TensorShape(std::move(blocks)));
  const auto da = a.dim();
  const auto db = b.dim();
  for (std::size_t x = 0; x < a.points(); ++x) {
    auto dst = out.at(x);
    std::copy_n(a.at(x).begin(), da, dst.begin());
    std::copy_n(b.at(x).begin(), db, dst.begin() + static_cast<std::ptrdiff_t>(da));
  }
  return out;
}

Field half(const Field& ab, int which) {
  const auto& blocks = ab.shape().blocks();
  if (blocks.size() % 2 != 0 || (which != 0 && which != 1))
    dimension_error("half: field is not on a doubled shape");
  const auto nb = blocks.size() / 2;
  std::vector<TensorShape::Block> first(blocks.begin(), blocks.begin() + static_cast<std::ptrdiff_t>(nb));
  std::vector<TensorShape::Block> second(blocks.begin() + static_cast<std::ptrdiff_t>(nb), blocks.end());
  if (first != second) dimension_error("half: the two halves have different shapes");
  Field out(ab.grid(), TensorShape(first));
  const auto d = out.dim();
  const auto off = static_cast<std::ptrdiff_t>(which == 0 ? 0 : d);
  for (std::size_t x = 0; x < ab.points(); ++x)
    std::copy_n(ab.at(x).begin() + off, d, out.at(x).begin());
  return out;
}

}  // namespace sgate
