#include "sgate/translation.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "sgate/errors.hpp"
#include "sgate/operator_field.hpp"
#include "sgate/parallel.hpp"
#include "sgate/pencil.hpp"
#include "sgate/projection.hpp"

namespace sgate {

namespace {

[[noreturn]] void tr_error(const std::string& what) { throw Error(ErrorKind::Translation, "translation-certifier", what); }

Matrix rperp() {
  Matrix r = Matrix::Zero(2, 2);
  r(0, 1) = -1.0;
  r(1, 0) = 1.0;
  return r;
}

std::vector<Vec3> directions(int d, int n) {
  std::vector<Vec3> out;
  out.reserve(static_cast<std::size_t>(n));
  if (d == 1) {
    out.push_back({1.0, 0.0, 0.0});
    out.push_back({-1.0, 0.0, 0.0});
    return out;
  }
  if (d == 2) {
    for (int i = 0; i < n; ++i) {
      const double a = 2.0 * kPi * i / n;
      out.push_back({std::cos(a), std::sin(a), 0.0});
    }
    return out;
  }
  // Fibonacci sphere
  const double golden = kPi * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < n; ++i) {
    const double y = 1.0 - 2.0 * (i + 0.5) / n;
    const double r = std::sqrt(std::max(0.0, 1.0 - y * y));
    const double a = golden * i;
    out.push_back({r * std::cos(a), y, r * std::sin(a)});
  }
  return out;
}

Vec3 scaled(const Vec3& v, double s) { return {v[0] * s, v[1] * s, v[2] * s}; }

int symbol_dimension(const SymbolMap& symbol) {
  // Probe which wavevector components the symbol depends on.
  const Matrix base = symbol.eval({0.0, 0.0, 0.0});
  int d = 1;
  for (int a = 0; a < 3; ++a) {
    Vec3 k{0.0, 0.0, 0.0};
    k[static_cast<std::size_t>(a)] = 1.0;
    if ((symbol.eval(k) - base).cwiseAbs().maxCoeff() > 0.0) d = a + 1;
  }
  return d;
}

}  // namespace

Translation::Translation(std::string id, int ell, Matrix t) : id_(std::move(id)), ell_(ell), t_(std::move(t)) {
  if (ell_ < 1) tr_error("translation '" + id_ + "': ℓ must be ≥ 1");
  if (t_.rows() != t_.cols() || t_.rows() == 0) tr_error("translation '" + id_ + "' must be a non-empty square matrix");
  if (t_.rows() % ell_ != 0) tr_error("translation '" + id_ + "': size is not a multiple of ℓ");
  if (!t_.allFinite()) tr_error("translation '" + id_ + "' has non-finite entries");
  const double scale = std::max(1.0, t_.cwiseAbs().maxCoeff());
  if ((t_ - t_.adjoint()).cwiseAbs().maxCoeff() > 1e-13 * scale)
    tr_error("translation '" + id_ + "' is not Hermitian");
  t_ = hermitian_part(t_);
  if (t_.isZero(0.0)) {
    norm_ = 0.0;
  } else {
    Eigen::SelfAdjointEigenSolver<Matrix> es(t_, Eigen::EigenvaluesOnly);
    norm_ = es.eigenvalues().cwiseAbs().maxCoeff();
  }
}

double qstar_min_eig(Translation& t, const SymbolMap& symbol, const QstarSampling& sampling) {
  const auto dim = static_cast<Eigen::Index>(symbol.shape.dim());
  if (dim * t.ell() != t.matrix().rows())
    throw Error(ErrorKind::Dimension, "translation-certifier",
                "translation '" + t.id() + "' does not act on the ℓ-fold space of symbol '" + symbol.name + "'");
  const int d = symbol_dimension(symbol);

  // Each sample yields a matrix whose range is E_k (or its limit).
  std::vector<std::function<Matrix()>> samples;
  if (symbol.scale_invariant) {
    for (const auto& u : directions(d, sampling.directions_scale_invariant))
      samples.emplace_back([&symbol, u] { return symbol.eval(u); });
  } else {
    const auto dirs = directions(d, sampling.directions);
    samples.emplace_back([&symbol] { return symbol.eval({0.0, 0.0, 0.0}); });
    for (const auto& u : dirs) {
      for (int r = 0; r < sampling.radii; ++r) {
        const double frac = sampling.radii == 1 ? 0.0 : static_cast<double>(r) / (sampling.radii - 1);
        const double rad = sampling.r_min * std::pow(sampling.r_max / sampling.r_min, frac);
        samples.emplace_back([&symbol, u, rad] { return symbol.eval(scaled(u, rad)); });
      }
      if (symbol.asymptotic)
        samples.emplace_back([&symbol, u] { return symbol.asymptotic(u); });
      else
        samples.emplace_back([&symbol, u] { return symbol.eval(scaled(u, 1e8)); });
    }
  }

  std::vector<double> worst(samples.size(), std::numeric_limits<double>::infinity());
  parallel_for(samples.size(), 0, [&](std::size_t i) {
    const Matrix u = range_basis(samples[i]());
    if (u.cols() == 0) return;
    const Matrix b = blockdiag_repeat(u, t.ell());
    const Matrix form = b.adjoint() * t.matrix() * b;
    worst[i] = min_eig_hermitian(hermitian_part(form));
  });
  double w = std::numeric_limits<double>::infinity();
  for (double v : worst) w = std::min(w, v);
  if (!std::isfinite(w)) w = 0.0;

  t.status_.checked = true;
  t.status_.worst = w;
  t.status_.samples = samples.size();
  t.status_.symbol = symbol.name;
  t.status_.pass = w >= sampling.tolerance;
  return w;
}

Translation zero_translation(std::size_t dim) {
  const auto n = static_cast<Eigen::Index>(dim);
  return Translation("zero", 1, Matrix::Zero(n, n));
}

Translation rotation2d_translation() {
  const Matrix r = rperp();
  Matrix t = Matrix::Zero(4, 4);
  t.block(0, 2, 2, 2) = r;
  t.block(2, 0, 2, 2) = -r;
  return Translation("rotation2d", 2, t);
}

Translation hall2d_translation(int sign) {
  return Translation(sign >= 0 ? "hall2d+" : "hall2d-", 1, (sign >= 0 ? 1.0 : -1.0) * kI * rperp());
}

Translation builtin_translation(const std::string& id, std::size_t dim) {
  if (id == "zero") return zero_translation(dim);
  if (id == "rotation2d" || id == "hall2d+" || id == "hall2d-") {
    if (dim != 2) tr_error("built-in translation '" + id + "' needs a 2-component tensor space");
    if (id == "rotation2d") return rotation2d_translation();
    return hall2d_translation(id == "hall2d+" ? 1 : -1);
  }
  tr_error("unknown built-in translation '" + id + "'");
}

Translation load_translation_csv(std::istream& in, const std::string& id, std::size_t dim) {
  std::map<std::pair<long, long>, cplx> entries;
  long n = 0;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::stringstream ss(line);
    std::string cell;
    std::vector<std::string> cells;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != 4) tr_error("translation CSV line " + std::to_string(line_no) + ": expected row,col,re,im");
    try {
      const long r = std::stol(cells[0]);
      const long c = std::stol(cells[1]);
      const double re = std::stod(cells[2]);
      const double im = std::stod(cells[3]);
      if (r < 0 || c < 0) tr_error("translation CSV line " + std::to_string(line_no) + ": negative index");
      entries[{r, c}] = cplx(re, im);
      n = std::max({n, r + 1, c + 1});
    } catch (const std::invalid_argument&) {
      if (line_no == 1) continue;
      tr_error("translation CSV line " + std::to_string(line_no) + ": not numeric");
    } catch (const std::out_of_range&) {
      tr_error("translation CSV line " + std::to_string(line_no) + ": value out of range");
    }
  }
  if (n == 0) tr_error("translation CSV '" + id + "' has no entries");
  if (dim == 0 || n % static_cast<long>(dim) != 0)
    tr_error("translation CSV '" + id + "': size " + std::to_string(n) + " is not a multiple of the tensor dim");
  Matrix t = Matrix::Zero(n, n);
  for (const auto& [rc, v] : entries) t(rc.first, rc.second) = v;
  return Translation(id, static_cast<int>(n / static_cast<long>(dim)), t);
}

Translation load_translation_csv(const std::filesystem::path& path, std::size_t dim) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "translation-certifier", "cannot open translation file " + path.string());
  return load_translation_csv(in, path.stem().string(), dim);
}

}  // namespace sgate
