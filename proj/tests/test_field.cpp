#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <sstream>

#include "sgate/errors.hpp"
#include "sgate/field.hpp"
#include "sgate/field_io.hpp"

using namespace sgate;

namespace {

Field constant(const Grid& g, const TensorShape& s, cplx v) {
  Field f(g, s);
  for (auto& x : f.values()) x = v;
  return f;
}

cplx brute_inner(const Field& p, const Field& q) {
  cplx acc = 0.0;
  for (std::size_t x = 0; x < p.points(); ++x)
    for (std::size_t c = 0; c < p.dim(); ++c) acc += p(x, c) * std::conj(q(x, c));
  return acc / static_cast<double>(p.points());
}

}  // namespace

TEST_CASE("tensor shape flattening") {
  TensorShape s({{2, 2}, {2, 1}});
  CHECK(s.dim() == 6);
  CHECK(s.offset(1) == 4);
  CHECK(s.repeated(2).dim() == 12);
  CHECK_THROWS_AS(TensorShape(std::vector<TensorShape::Block>{}), Error);
}

TEST_CASE("grid indexing and wavevectors") {
  Grid g(2, {4, 6, 1}, {1.0, 2.0, 1.0});
  CHECK(g.points() == 24);
  CHECK(g.linear_index({1, 5, 0}) == 11);
  const auto mi = g.multi_index(11);
  CHECK(mi[0] == 1);
  CHECK(mi[1] == 5);
  const auto k = g.wavevector(11);
  CHECK(k[0] == doctest::Approx(2 * kPi));
  CHECK(k[1] == doctest::Approx(2 * kPi * -1 / 2.0));
  CHECK_THROWS_AS(Grid(2, {1, 4, 1}), Error);
}

TEST_CASE("inner product examples") {
  const Grid g = Grid::square(2, 8);
  const auto s3 = TensorShape::vector(3);
  const Field ones = constant(g, s3, 1.0);
  CHECK(std::abs(inner_product(ones, ones) - cplx(3.0, 0.0)) < 1e-15);
  const Field p = random_field(g, s3, 1);
  CHECK(std::abs(inner_product(p, Field(g, s3))) == 0.0);
  const Field q = random_field(g, s3, 2);
  CHECK(std::abs(inner_product(p, q) - brute_inner(p, q)) < 1e-13);
  CHECK(std::abs(inner_product(p, q) - std::conj(inner_product(q, p))) < 1e-14);
  CHECK_THROWS_AS(inner_product(p, random_field(g, TensorShape::vector(2), 3)), Error);
  CHECK_THROWS_AS(inner_product(p, random_field(Grid::square(2, 4), s3, 3)), Error);
}

TEST_CASE("inner product is sesquilinear") {
  const Grid g = Grid::square(2, 8);
  const auto s = TensorShape::vector(2);
  const Field p = random_field(g, s, 10), q = random_field(g, s, 11), r = random_field(g, s, 12);
  const cplx a(0.3, -1.7), b(-2.1, 0.4);
  CHECK(std::abs(inner_product(a * p + b * r, q) - (a * inner_product(p, q) + b * inner_product(r, q))) < 1e-12);
  CHECK(std::abs(inner_product(q, a * p + b * r) -
                 (std::conj(a) * inner_product(q, p) + std::conj(b) * inner_product(q, r))) < 1e-12);
}

TEST_CASE("norm examples and homogeneity") {
  const Grid g = Grid::square(2, 8);
  const auto s1 = TensorShape::vector(1);
  CHECK(norm(Field(g, s1)) == 0.0);
  CHECK(norm(constant(g, s1, 1.0)) == doctest::Approx(1.0).epsilon(1e-15));
  const Field p = random_field(g, TensorShape::vector(4), 5);
  CHECK(std::abs(norm(p) - std::sqrt(brute_inner(p, p).real())) < 1e-13);
  const cplx a(-1.5, 2.0);
  CHECK(std::abs(norm(a * p) - std::abs(a) * norm(p)) < 1e-13);
}

TEST_CASE("transform examples") {
  const Grid g = Grid::square(2, 8);
  const auto s1 = TensorShape::vector(1);
  Field delta(g, s1);
  delta(0, 0) = 1.0;
  const Field spec = transform(delta, Direction::Forward);
  for (std::size_t k = 0; k < g.points(); ++k) CHECK(std::abs(spec(k, 0) - cplx(1.0 / 8.0, 0.0)) < 1e-15);

  const Field p = random_field(g, TensorShape::vector(3), 9);
  const Field back = transform(transform(p, Direction::Forward), Direction::Inverse);
  CHECK(norm(back - p) < 1e-13);

  // plane wave e^{i k·x} with k = 2π(2, -3)
  const std::size_t target = g.linear_index({2, -3, 0});
  const auto kv = g.wavevector(target);
  Field wave(g, s1);
  for (std::size_t x = 0; x < g.points(); ++x) {
    const auto pos = g.position(x);
    wave(x, 0) = std::exp(kI * (kv[0] * pos[0] + kv[1] * pos[1]));
  }
  const Field ws = transform(wave, Direction::Forward);
  for (std::size_t k = 0; k < g.points(); ++k) {
    if (k == target)
      CHECK(std::abs(ws(k, 0) - cplx(8.0, 0.0)) < 1e-12);
    else
      CHECK(std::abs(ws(k, 0)) < 1e-12);
  }
}

TEST_CASE("Parseval on grids up to 32^3") {
  for (const Grid& g : {Grid::square(2, 8), Grid(2, {6, 10, 1}), Grid::square(3, 16), Grid::square(3, 32)}) {
    const auto s = TensorShape::vector(2);
    const Field p = random_field(g, s, 21), q = random_field(g, s, 22);
    const Field pf = transform(p, Direction::Forward), qf = transform(q, Direction::Forward);
    CHECK(std::abs(inner_product(pf, qf) - inner_product(p, q)) < 1e-12);
    CHECK(std::abs(norm(pf) - norm(p)) < 1e-13);
  }
}

TEST_CASE("random field determinism and statistics") {
  const Grid g = Grid::square(2, 8);
  const auto s = TensorShape::vector(2);
  const Field a = random_field(g, s, 42), b = random_field(g, s, 42), c = random_field(g, s, 43);
  CHECK(norm(a - b) == 0.0);
  CHECK(norm(a - c) > 0.0);
  cplx mean = 0.0;
  const int samples = 10000;
  const Grid big(2, {100, 100, 1});
  const Field many = random_field(big, TensorShape::vector(1), 7);
  for (int i = 0; i < samples; ++i) mean += many(static_cast<std::size_t>(i), 0);
  mean /= static_cast<double>(samples);
  CHECK(std::abs(mean) < 0.05);
}

TEST_CASE("stack and half round trip") {
  const Grid g = Grid::square(2, 4);
  const Field a = random_field(g, TensorShape({{2, 1}, {1, 1}}), 1);
  const Field b = random_field(g, TensorShape({{2, 1}, {1, 1}}), 2);
  const Field ab = stack(a, b);
  CHECK(ab.dim() == 6);
  CHECK(norm(half(ab, 0) - a) == 0.0);
  CHECK(norm(half(ab, 1) - b) == 0.0);
}

TEST_CASE("SGF1 save/load and CSV export") {
  const Grid g(2, {4, 6, 1}, {1.0, 2.5, 1.0});
  const Field p = random_field(g, TensorShape({{2, 2}, {2, 1}}), 3);
  const auto path = std::filesystem::temp_directory_path() / "sgate_test_field.sgf";
  save_field(p, path);
  const Field q = load_field(path);
  CHECK(q.grid() == p.grid());
  CHECK(q.shape() == p.shape());
  CHECK(norm(q - p) == 0.0);
  std::filesystem::remove(path);

  Field small(Grid::square(2, 2), TensorShape::vector(1));
  small(1, 0) = cplx(0.5, -1.0);
  std::ostringstream csv;
  export_field_csv(small, csv);
  CHECK(csv.str() == "x_index,component,re,im\n0,0,0,0\n1,0,0.5,-1\n2,0,0,0\n3,0,0,0\n");
  CHECK_THROWS_AS(load_field("/nonexistent/sgate.sgf"), Error);
}
