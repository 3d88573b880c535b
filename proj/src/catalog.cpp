#include "sgate/catalog.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "sgate/errors.hpp"
#include "sgate/parallel.hpp"

namespace sgate {

namespace {

[[noreturn]] void preset_error(const std::string& what) { throw Error(ErrorKind::Preset, "physics-catalog", what); }
[[noreturn]] void layout_error(const std::string& what) { throw Error(ErrorKind::Layout, "physics-catalog", what); }

using Idx = Eigen::Index;

double comp(const Vec3& k, int a) { return k[static_cast<std::size_t>(a)]; }

// Rows: gradient block E_{jβ} = ∂_j u_β flattened as j·s + β, then the s
// values u_β. Columns: the s potential components.
Matrix grad_value_symbol(int d, int s, const Vec3& k, bool gradient_only = false) {
  Matrix m = Matrix::Zero(d * s + s, s);
  for (int j = 0; j < d; ++j)
    for (int b = 0; b < s; ++b) m(j * s + b, b) = kI * comp(k, j);
  if (!gradient_only)
    for (int b = 0; b < s; ++b) m(d * s + b, b) = 1.0;
  return m;
}

Matrix blockdiag(const Matrix& a, const Matrix& b) {
  Matrix m = Matrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  m.topLeftCorner(a.rows(), a.cols()) = a;
  m.bottomRightCorner(b.rows(), b.cols()) = b;
  return m;
}

Matrix vec_identity(int d) {
  Matrix v = Matrix::Zero(d * d, 1);
  for (int j = 0; j < d; ++j) v(j * d + j, 0) = 1.0;
  return v;
}

// λ tr(A) I + μ (A + Aᵀ) acting on row-major vec(A).
Matrix isotropic_stiffness(int d, cplx lambda, cplx mu) {
  Matrix c = Matrix::Zero(d * d, d * d);
  for (int j = 0; j < d; ++j)
    for (int b = 0; b < d; ++b)
      for (int l = 0; l < d; ++l)
        for (int g = 0; g < d; ++g) {
          cplx v = 0.0;
          if (j == b && l == g) v += lambda;
          if (j == l && b == g) v += mu;
          if (j == g && b == l) v += mu;
          c(j * d + b, l * d + g) = v;
        }
  return c;
}

Matrix scaled_identity(int n, cplx s) { return s * Matrix::Identity(n, n); }

cplx get(const Moduli& m, const char* key) { return m.at(key); }

Vec3 unit(const Vec3& k) {
  const double n = std::sqrt(k[0] * k[0] + k[1] * k[1] + k[2] * k[2]);
  if (n == 0.0) return k;
  return {k[0] / n, k[1] / n, k[2] / n};
}

SymbolMap make_symbol(std::string name, TensorShape shape, int p, std::function<Matrix(const Vec3&)> eval,
                      std::function<Matrix(const Vec3&)> asym, bool scale_invariant = false) {
  SymbolMap s;
  s.name = std::move(name);
  s.shape = std::move(shape);
  s.potential_dim = p;
  s.eval = std::move(eval);
  s.asymptotic = std::move(asym);
  s.scale_invariant = scale_invariant;
  return s;
}

SymbolMap gradient_value_preset_symbol(const std::string& name, int d) {
  return make_symbol(
      name, TensorShape({{d, 1}, {1, 1}}), 1, [d](const Vec3& k) { return grad_value_symbol(d, 1, k); },
      [d](const Vec3& k) { return grad_value_symbol(d, 1, unit(k), true); });
}

SymbolMap thermal_symbol(const std::string& name, int d) {
  return make_symbol(
      name, TensorShape({{d, d}, {d, 1}, {d, 1}, {1, 1}}), d + 1,
      [d](const Vec3& k) { return blockdiag(grad_value_symbol(d, d, k), grad_value_symbol(d, 1, k)); },
      [d](const Vec3& k) {
        const Vec3 u = unit(k);
        return blockdiag(grad_value_symbol(d, d, u, true), grad_value_symbol(d, 1, u, true));
      });
}

Matrix cross_matrix(const Vec3& k) {
  Matrix m = Matrix::Zero(3, 3);
  m(0, 1) = -k[2];
  m(0, 2) = k[1];
  m(1, 0) = k[2];
  m(1, 2) = -k[0];
  m(2, 0) = -k[1];
  m(2, 1) = k[0];
  return m;
}

Matrix mindlin_symbol(const Vec3& k, bool linear_only) {
  const double kx = k[0], ky = k[1];
  const double c = linear_only ? 0.0 : 1.0;
  Matrix s = Matrix::Zero(8, 3);
  // ψx column
  s(0, 0) = kx;
  s(2, 0) = ky;
  s(3, 0) = -kI * c;
  s(5, 0) = -c;
  // ψy column
  s(1, 1) = ky;
  s(2, 1) = kx;
  s(4, 1) = -kI * c;
  s(6, 1) = -c;
  // w column
  s(3, 2) = -kx;
  s(4, 2) = -ky;
  s(7, 2) = -c;
  return s;
}

PhysicsPreset make_preset(const std::string& name, int d) {
  PhysicsPreset p;
  p.name = name;
  p.d = d;
  auto need_d = [&](std::initializer_list<int> ok) {
    for (int v : ok)
      if (v == d) return;
    preset_error("preset '" + name + "' does not support d = " + std::to_string(d));
  };

  if (name == "conductivity") {
    need_d({2, 3});
    p.symbol = make_symbol(
        name, TensorShape::vector(d), 1, [d](const Vec3& k) -> Matrix { return grad_value_symbol(d, 1, k, true).topRows(d); }, {}, true);
    p.defaults = {{"sigma", 1.0}, {"hall", 0.0}};
    p.builder = [d](const Moduli& m) {
      Matrix l = scaled_identity(d, get(m, "sigma"));
      const cplx h = get(m, "hall");
      if (h != 0.0) {
        if (d != 2) preset_error("hall term is only defined for d = 2");
        l(0, 1) -= h;
        l(1, 0) += h;
      }
      return l;
    };
  } else if (name == "acoustics") {
    need_d({2, 3});
    p.symbol = gradient_value_preset_symbol(name, d);
    p.defaults = {{"omega", 1.0}, {"rho", 1.0}, {"kappa", 1.0}};
    p.builder = [d](const Moduli& m) {
      const cplx w = get(m, "omega");
      Matrix l = Matrix::Zero(d + 1, d + 1);
      l.topLeftCorner(d, d) = scaled_identity(d, -1.0 / (w * get(m, "rho")));
      l(d, d) = w / get(m, "kappa");
      return l;
    };
  } else if (name == "maxwell") {
    need_d({3});
    p.symbol = make_symbol(
        name, TensorShape({{3, 1}, {3, 1}}), 3,
        [](const Vec3& k) {
          Matrix s(6, 3);
          s.topRows(3) = kI * cross_matrix(k);
          s.bottomRows(3) = Matrix::Identity(3, 3);
          return s;
        },
        [](const Vec3& k) {
          const Vec3 u = unit(k);
          Matrix s = Matrix::Zero(6, 4);
          s.topLeftCorner(3, 3) = kI * cross_matrix(u);
          for (int a = 0; a < 3; ++a) s(3 + a, 3) = comp(u, a);
          return s;
        });
    p.defaults = {{"omega", 1.0}, {"mu", 1.0}, {"eps", 1.0}};
    p.builder = [](const Moduli& m) {
      const cplx w = get(m, "omega");
      return blockdiag(scaled_identity(3, -1.0 / (w * get(m, "mu"))), scaled_identity(3, w * get(m, "eps")));
    };
  } else if (name == "elastodynamics") {
    need_d({2, 3});
    p.symbol = make_symbol(
        name, TensorShape({{d, d}, {d, 1}}), d, [d](const Vec3& k) { return grad_value_symbol(d, d, k); },
        [d](const Vec3& k) { return grad_value_symbol(d, d, unit(k), true); });
    p.defaults = {{"omega", 1.0}, {"lambda", 1.0}, {"mu", 1.0}, {"rho", 1.0}};
    p.builder = [d](const Moduli& m) {
      const cplx w = get(m, "omega");
      return blockdiag(-isotropic_stiffness(d, get(m, "lambda"), get(m, "mu")) / w,
                       scaled_identity(d, w * get(m, "rho")));
    };
  } else if (name == "schrodinger_freq") {
    need_d({2, 3});
    p.symbol = gradient_value_preset_symbol(name, d);
    p.defaults = {{"A", 0.5}, {"E", cplx(1.0, 0.1)}, {"V", 0.0}};
    p.builder = [d](const Moduli& m) {
      Matrix l = Matrix::Zero(d + 1, d + 1);
      l.topLeftCorner(d, d) = scaled_identity(d, -get(m, "A"));
      l(d, d) = get(m, "E") - get(m, "V");
      return l;
    };
  } else if (name == "thermoacoustics") {
    need_d({2, 3});
    p.symbol = thermal_symbol(name, d);
    p.defaults = {{"omega", 1.0}, {"mu", 0.1},    {"mu_B", 0.05}, {"beta_T", 1.0}, {"alpha0", 0.3},
                  {"T0", 1.0},    {"rho0", 1.0},  {"Cp", 1.0},    {"k_th", 0.2}};
    p.builder = [d](const Moduli& m) {
      const cplx w = get(m, "omega"), mu = get(m, "mu"), mub = get(m, "mu_B"), bt = get(m, "beta_T");
      const cplx a0 = get(m, "alpha0"), t0 = get(m, "T0"), rho0 = get(m, "rho0"), cp = get(m, "Cp");
      const cplx kth = get(m, "k_th");
      const cplx beta0 = bt - a0 * a0 * t0 / (rho0 * cp);
      const int n = d * d + d + d + 1;
      const Matrix vi = vec_identity(d);
      // 𝒟[A] = μ(A + Aᵀ) + (μ_B − 2μ/3) tr(A) I
      const Matrix visc = isotropic_stiffness(d, mub - 2.0 * mu / 3.0, mu);
      Matrix l = Matrix::Zero(n, n);
      l.topLeftCorner(d * d, d * d) = kI * visc - (vi * vi.transpose()) / (w * bt);
      l.block(d * d, d * d, d, d) = scaled_identity(d, w * rho0);
      l.block(d * d + d, d * d + d, d, d) = scaled_identity(d, kI * kth * t0);
      l(n - 1, n - 1) = w * rho0 * cp * t0 * beta0 / bt;
      l.block(0, n - 1, d * d, 1) = kI * a0 * t0 * vi / bt;
      l.block(n - 1, 0, 1, d * d) = -kI * a0 * t0 * vi.transpose() / bt;
      return l;
    };
  } else if (name == "thermoelasticity") {
    need_d({2, 3});
    p.symbol = thermal_symbol(name, d);
    p.defaults = {{"omega", 1.0}, {"lambda", 1.0}, {"mu", 1.0},   {"rho", 1.0},
                  {"T0", 1.0},    {"kappa", 0.5},  {"beta", 0.2}, {"c", 1.0}};
    p.builder = [d](const Moduli& m) {
      const cplx w = get(m, "omega"), t0 = get(m, "T0"), beta = get(m, "beta");
      const int n = d * d + d + d + 1;
      const Matrix vi = vec_identity(d);
      Matrix l = Matrix::Zero(n, n);
      l.topLeftCorner(d * d, d * d) = -isotropic_stiffness(d, get(m, "lambda"), get(m, "mu")) / w;
      l.block(d * d, d * d, d, d) = scaled_identity(d, w * get(m, "rho"));
      l.block(d * d + d, d * d + d, d, d) = scaled_identity(d, kI * t0 * get(m, "kappa"));
      l(n - 1, n - 1) = w * t0 * get(m, "rho") * get(m, "c");
      l.block(0, n - 1, d * d, 1) = kI * beta * t0 * vi;
      l.block(n - 1, 0, 1, d * d) = -kI * beta * t0 * vi.transpose();
      return l;
    };
  } else if (name == "kirchhoff_plate") {
    need_d({2});
    p.symbol = make_symbol(
        name, TensorShape({{2, 2}, {1, 1}}), 1,
        [](const Vec3& k) {
          Matrix s(5, 1);
          for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) s(i * 2 + j, 0) = -comp(k, i) * comp(k, j);
          s(4, 0) = kI;
          return s;
        },
        [](const Vec3& k) {
          const Vec3 u = unit(k);
          Matrix s = Matrix::Zero(5, 1);
          for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) s(i * 2 + j, 0) = -comp(u, i) * comp(u, j);
          return s;
        });
    p.defaults = {{"omega", 1.0}, {"E", 1.0}, {"nu", 0.3}, {"h", 1.0}, {"rho", 1.0}};
    p.builder = [](const Moduli& m) {
      const cplx w = get(m, "omega"), nu = get(m, "nu"), h = get(m, "h");
      const cplx dflex = get(m, "E") * h * h * h / (12.0 * (1.0 - nu * nu));
      // 𝒟[A] = D(1−ν)(A + Aᵀ)/2 + Dν tr(A) I
      const Matrix rig = isotropic_stiffness(2, dflex * nu, dflex * (1.0 - nu) / 2.0);
      Matrix l = Matrix::Zero(5, 5);
      l.topLeftCorner(4, 4) = -rig / w;
      l(4, 4) = h * w * get(m, "rho");
      return l;
    };
  } else if (name == "mindlin_plate") {
    need_d({2});
    // The common factor ω of every E-component is dropped; it does not change
    // the range of the symbol.
    p.symbol = make_symbol(
        name, TensorShape({{5, 1}, {1, 1}, {1, 1}, {1, 1}}), 3, [](const Vec3& k) { return mindlin_symbol(k, false); },
        [](const Vec3& k) { return mindlin_symbol(unit(k), true); });
    p.defaults = {{"omega", 1.0}, {"E", 1.0}, {"nu", 0.3}, {"G", 0.4}, {"kshear", 5.0 / 6.0}, {"h", 0.2}, {"rho", 1.0}};
    p.builder = [](const Moduli& m) {
      const cplx w = get(m, "omega"), nu = get(m, "nu"), h = get(m, "h"), rho = get(m, "rho");
      const cplx dflex = get(m, "E") * h * h * h / (12.0 * (1.0 - nu * nu));
      const cplx shear = get(m, "kshear") * get(m, "G") * h;
      Matrix dm = Matrix::Zero(5, 5);
      dm(0, 0) = dflex;
      dm(0, 1) = nu * dflex;
      dm(1, 0) = nu * dflex;
      dm(1, 1) = dflex;
      dm(2, 2) = (1.0 - nu) / 2.0 * dflex;
      dm(3, 3) = shear;
      dm(4, 4) = shear;
      Matrix l = Matrix::Zero(8, 8);
      l.topLeftCorner(5, 5) = -dm / w;
      l(5, 5) = w * rho * h * h * h / 12.0;
      l(6, 6) = w * rho * h * h * h / 12.0;
      l(7, 7) = w * rho * h;
      return l;
    };
  } else if (name == "dirichlet_laplacian") {
    need_d({2, 3});
    p.symbol = gradient_value_preset_symbol(name, d);
    p.defaults = {{"z", 1.0}};
    p.builder = [d](const Moduli& m) {
      Matrix l = Matrix::Identity(d + 1, d + 1);
      l(d, d) = -get(m, "z");
      return l;
    };
  } else {
    preset_error("unknown preset '" + name + "'");
  }
  p.shape = p.symbol.shape;
  return p;
}

Moduli merge(const PhysicsPreset& p, const Moduli& base, const Moduli& overrides) {
  Moduli out = base;
  for (const auto& [key, value] : overrides) {
    if (!p.defaults.contains(key)) preset_error("unknown modulus '" + key + "' for preset '" + p.name + "'");
    if (!std::isfinite(value.real()) || !std::isfinite(value.imag()))
      preset_error("modulus '" + key + "' is not finite");
    out[key] = value;
  }
  return out;
}

}  // namespace

Matrix PhysicsPreset::phase_matrix(const Moduli& moduli) const {
  const Moduli full = merge(*this, defaults, moduli);
  Matrix l = builder(full);
  if (!l.allFinite()) preset_error("moduli give a non-finite L for preset '" + name + "' (zero frequency or modulus?)");
  return l;
}

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = {
      "conductivity",    "acoustics",        "maxwell",         "elastodynamics", "schrodinger_freq",
      "thermoacoustics", "thermoelasticity", "kirchhoff_plate", "mindlin_plate",  "dirichlet_laplacian"};
  return names;
}

int default_dimension(const std::string& name) { return name == "maxwell" ? 3 : 2; }

PhysicsPreset build_preset(const std::string& name, int d, const Moduli& parameters) {
  PhysicsPreset p = make_preset(name, d);
  p.defaults = merge(p, p.defaults, parameters);
  return p;
}

PhaseLayout::PhaseLayout(Grid grid, int phases, std::vector<int> ids) : grid_(std::move(grid)), phases_(phases) {
  if (phases < 1) layout_error("layout needs at least one phase");
  if (ids.size() != grid_.points()) layout_error("layout does not cover every grid point");
  for (int id : ids)
    if (id < 0 || id >= phases) layout_error("phase id out of range");
  ids_ = std::make_shared<const std::vector<int>>(std::move(ids));
}

PhaseLayout PhaseLayout::from_indicators(const Grid& grid, const std::vector<std::vector<double>>& chi) {
  if (chi.empty()) layout_error("no indicator fields");
  std::vector<int> ids(grid.points(), -1);
  for (std::size_t i = 0; i < chi.size(); ++i) {
    if (chi[i].size() != grid.points()) layout_error("indicator size does not match grid");
    for (std::size_t x = 0; x < grid.points(); ++x) {
      const double v = chi[i][x];
      if (v != 0.0 && v != 1.0) layout_error("indicator values must be 0 or 1");
      if (v == 1.0) {
        if (ids[x] != -1) layout_error("indicators overlap: they do not sum to one");
        ids[x] = static_cast<int>(i);
      }
    }
  }
  for (int id : ids)
    if (id == -1) layout_error("indicators leave a point uncovered: they do not sum to one");
  return PhaseLayout(grid, static_cast<int>(chi.size()), std::move(ids));
}

PhaseLayout PhaseLayout::uniform(const Grid& grid, int phases, int phase) {
  return PhaseLayout(grid, phases, std::vector<int>(grid.points(), phase));
}

PhaseLayout PhaseLayout::laminate(const Grid& grid, int axis, double fraction) {
  if (axis < 0 || axis >= grid.d()) layout_error("laminate axis out of range");
  if (!(fraction >= 0.0 && fraction <= 1.0)) layout_error("laminate fraction must lie in [0, 1]");
  const int n = grid.size(axis);
  const int cut = static_cast<int>(std::lround(fraction * n));
  std::vector<int> ids(grid.points());
  for (std::size_t x = 0; x < grid.points(); ++x)
    ids[x] = grid.multi_index(x)[static_cast<std::size_t>(axis)] < cut ? 1 : 0;
  return PhaseLayout(grid, 2, std::move(ids));
}

PhaseLayout PhaseLayout::checkerboard(const Grid& grid, int cells) {
  if (cells < 1) layout_error("checkerboard needs at least one cell per axis");
  std::vector<int> ids(grid.points());
  for (std::size_t x = 0; x < grid.points(); ++x) {
    const auto idx = grid.multi_index(x);
    int parity = 0;
    for (int a = 0; a < grid.d(); ++a) parity += idx[static_cast<std::size_t>(a)] * cells / grid.size(a);
    ids[x] = parity % 2;
  }
  return PhaseLayout(grid, 2, std::move(ids));
}

PhaseLayout PhaseLayout::disk(const Grid& grid, double radius) {
  if (!(radius >= 0.0)) layout_error("disk radius must be non-negative");
  std::vector<int> ids(grid.points());
  for (std::size_t x = 0; x < grid.points(); ++x) {
    const auto p = grid.position(x);
    double r2 = 0.0;
    for (int a = 0; a < grid.d(); ++a) {
      const double c = p[static_cast<std::size_t>(a)] - 0.5 * grid.cell()[static_cast<std::size_t>(a)];
      r2 += c * c;
    }
    ids[x] = r2 <= radius * radius ? 1 : 0;
  }
  return PhaseLayout(grid, 2, std::move(ids));
}

PhaseLayout PhaseLayout::voxel_csv(const Grid& grid, std::istream& in) {
  std::vector<int> ids(grid.points(), -1);
  std::string line;
  int line_no = 0;
  int max_id = -1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::vector<long> vals;
    std::stringstream ss(line);
    std::string cell;
    bool numeric = true;
    while (std::getline(ss, cell, ',')) {
      long v = 0;
      const auto first = cell.find_first_not_of(" \t\r");
      const auto last = cell.find_last_not_of(" \t\r");
      if (first == std::string::npos) {
        numeric = false;
        break;
      }
      const char* b = cell.data() + first;
      const char* e = cell.data() + last + 1;
      auto [ptr, ec] = std::from_chars(b, e, v);
      if (ec != std::errc() || ptr != e) {
        numeric = false;
        break;
      }
      vals.push_back(v);
    }
    if (!numeric) {
      if (line_no == 1) continue;
      layout_error("voxel CSV line " + std::to_string(line_no) + ": not numeric");
    }
    if (vals.size() != static_cast<std::size_t>(grid.d()) + 1)
      layout_error("voxel CSV line " + std::to_string(line_no) + ": expected d indices and a phase id");
    std::array<int, 3> idx{0, 0, 0};
    for (int a = 0; a < grid.d(); ++a) {
      const long v = vals[static_cast<std::size_t>(a)];
      if (v < 0 || v >= grid.size(a)) layout_error("voxel CSV line " + std::to_string(line_no) + ": index out of range");
      idx[static_cast<std::size_t>(a)] = static_cast<int>(v);
    }
    const long phase = vals.back();
    if (phase < 0 || phase > 255) layout_error("voxel CSV line " + std::to_string(line_no) + ": bad phase id");
    const auto lin = grid.linear_index(idx);
    if (ids[lin] != -1) layout_error("voxel CSV line " + std::to_string(line_no) + ": duplicate voxel");
    ids[lin] = static_cast<int>(phase);
    max_id = std::max(max_id, static_cast<int>(phase));
  }
  for (int id : ids)
    if (id == -1) layout_error("voxel CSV does not cover every grid point");
  return PhaseLayout(grid, max_id + 1, std::move(ids));
}

PhaseLayout PhaseLayout::voxel_csv(const Grid& grid, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "physics-catalog", "cannot open voxel file " + path.string());
  return voxel_csv(grid, in);
}

std::vector<double> PhaseLayout::indicator(int phase) const {
  std::vector<double> chi(grid_.points());
  for (std::size_t x = 0; x < chi.size(); ++x) chi[x] = (*ids_)[x] == phase ? 1.0 : 0.0;
  return chi;
}

std::vector<std::size_t> PhaseLayout::counts() const {
  std::vector<std::size_t> c(static_cast<std::size_t>(phases_), 0);
  for (int id : *ids_) ++c[static_cast<std::size_t>(id)];
  return c;
}

OperatorField assemble_multiphase_L(const TensorShape& shape, const PhaseLayout& layout,
                                    const std::vector<Matrix>& phase_mats) {
  if (phase_mats.size() != static_cast<std::size_t>(layout.phases()))
    layout_error("need one phase matrix per layout phase (" + std::to_string(layout.phases()) + "), got " +
                 std::to_string(phase_mats.size()));
  return OperatorField::multiphase(layout.grid(), shape, layout.shared_ids(), phase_mats);
}

OperatorField assemble_multiphase_L(const PhysicsPreset& preset, const PhaseLayout& layout,
                                    const std::vector<Moduli>& phase_moduli) {
  if (phase_moduli.size() != static_cast<std::size_t>(layout.phases()))
    layout_error("need one moduli set per layout phase (" + std::to_string(layout.phases()) + "), got " +
                 std::to_string(phase_moduli.size()));
  std::vector<Matrix> mats;
  for (const auto& m : phase_moduli) mats.push_back(preset.phase_matrix(m));
  return assemble_multiphase_L(preset.shape, layout, mats);
}

double check_key_identity(const PhysicsPreset& preset, const Grid& grid, int trials, std::uint64_t seed) {
  if (grid.d() != preset.d) throw Error(ErrorKind::Dimension, "physics-catalog", "grid dimension differs from preset");
  if (trials <= 0) return 0.0;
  const auto pi = build_projection(preset.symbol, grid);
  return verify_subspace_orthogonality(pi, trials, seed);
}

}  // namespace sgate
