#include "sgate/spectrum.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "sgate/errors.hpp"
#include "sgate/parallel.hpp"

namespace sgate {

namespace {

constexpr const char* kModule = "spectrum-mapper";

[[noreturn]] void fail(ErrorKind kind, const std::string& what) { throw Error(kind, kModule, what); }

double axis_value(double lo, double hi, int n, int i) {
  if (n <= 1) return lo;
  return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
}

bool is_scaled_identity(const Matrix& m, cplx s) {
  return (m - s * Matrix::Identity(m.rows(), m.cols())).norm() == 0.0;
}

struct AcousticModuli {
  cplx omega, rho, kappa;
};

AcousticModuli acoustic_moduli(const PhysicsPreset& acoustics, const Moduli& m) {
  if (acoustics.name != "acoustics") fail(ErrorKind::Preset, "Bloch assembly needs the acoustics preset");
  // phase_matrix validates keys and finiteness.
  (void)acoustics.phase_matrix(m);
  auto get = [&](const char* key) {
    const auto it = m.find(key);
    return it == m.end() ? acoustics.defaults.at(key) : it->second;
  };
  AcousticModuli a{get("omega"), get("rho"), get("kappa")};
  if (a.omega == 0.0) fail(ErrorKind::Preset, "Bloch assembly needs ω ≠ 0");
  if (a.rho == 0.0) fail(ErrorKind::Singular, "Bloch assembly needs an invertible density");
  return a;
}

// Coefficients of L̃ in (1, k₁..k_d, z) for one phase.
std::vector<Matrix> bloch_terms(int d, const AcousticModuli& m) {
  const cplx a = 1.0 / (m.omega * m.rho);
  std::vector<Matrix> out;
  Matrix l0 = Matrix::Zero(d + 1, d + 1);
  l0.topLeftCorner(d, d) = -a * Matrix::Identity(d, d);
  l0(d, d) = m.omega / m.kappa;
  out.push_back(l0);
  for (int j = 0; j < d; ++j) {
    Matrix lk = Matrix::Zero(d + 1, d + 1);
    lk(j, d) = -kI * a;
    lk(d, j) = kI * a;
    out.push_back(lk);
  }
  Matrix lz = Matrix::Zero(d + 1, d + 1);
  lz(d, d) = -a;
  out.push_back(lz);
  return out;
}

std::vector<AcousticModuli> all_moduli(const PhysicsPreset& acoustics, const PhaseLayout& layout,
                                       const std::vector<Moduli>& phase_moduli) {
  if (phase_moduli.size() != static_cast<std::size_t>(layout.phases()))
    fail(ErrorKind::Layout, "need one moduli set per phase");
  std::vector<AcousticModuli> out;
  for (const auto& m : phase_moduli) out.push_back(acoustic_moduli(acoustics, m));
  return out;
}

template <class F>
std::pair<double, double> golden_min(F&& f, double lo, double hi, int iters = 120) {
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = lo, b = hi;
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = f(c), fd = f(d);
  for (int i = 0; i < iters && b - a > 1e-15 * std::max(1.0, std::abs(a)); ++i) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = f(d);
    }
  }
  return fc < fd ? std::pair{c, fc} : std::pair{d, fd};
}

double smallest_singular_value(const Matrix& m) {
  if (m.rows() == 0) return 0.0;
  Eigen::BDCSVD<Matrix> svd(m);
  const auto& s = svd.singularValues();
  return s(s.size() - 1);
}

}  // namespace

const char* to_string(PointStatus s) {
  switch (s) {
    case PointStatus::Certified: return "certified";
    case PointStatus::Uncertified: return "uncertified";
    case PointStatus::Unscanned: return "unscanned";
    case PointStatus::OracleSpectrum: return "oracle-spectrum";
  }
  return "?";
}

cplx SpectrumMap::z_at(int i_re, int i_im) const {
  return {axis_value(scan.re_min, scan.re_max, scan.re_points, i_re),
          axis_value(scan.im_min, scan.im_max, scan.im_points, i_im)};
}

SpectrumMap map_spectrum_region(const OperatorPencil& pencil, const ScanConfig& scan,
                                const std::vector<Translation>& library, const std::string& symbol_name,
                                const CertifierConfig& certifier) {
  validate(pencil);
  if (scan.base_z.size() != pencil.size())
    fail(ErrorKind::Dimension, "base parameter vector does not match the pencil");
  if (scan.param >= pencil.size()) fail(ErrorKind::Dimension, "scan parameter index out of range");
  if (scan.re_points < 0 || scan.im_points < 0) fail(ErrorKind::Config, "negative scan resolution");
  for (const auto& t : library)
    if (!t.verified_for(symbol_name))
      fail(ErrorKind::Translation, "translation '" + t.id() + "' is not Q*-verified for symbol '" + symbol_name + "'");

  SpectrumMap map;
  map.scan = scan;
  const std::size_t total = static_cast<std::size_t>(scan.re_points) * static_cast<std::size_t>(scan.im_points);
  map.points.resize(total);
  for (int j = 0; j < scan.im_points; ++j)
    for (int i = 0; i < scan.re_points; ++i)
      map.points[static_cast<std::size_t>(j) * static_cast<std::size_t>(scan.re_points) + static_cast<std::size_t>(i)].z =
          map.z_at(i, j);

  const std::size_t scanned = std::min(total, scan.budget);
  parallel_for(scanned, scan.workers, [&](std::size_t idx) {
    auto& pt = map.points[idx];
    std::vector<cplx> z = scan.base_z;
    z[scan.param] = pt.z;
    auto cert = certify_matrices(evaluate_distinct(pencil, z), library, symbol_name, certifier);
    pt.status = cert ? PointStatus::Certified : PointStatus::Uncertified;
    pt.cert = std::move(cert);
  });

  map.metadata["theta_samples"] = std::to_string(certifier.theta_samples);
  map.metadata["scan_param"] = pencil.labels.empty() ? std::to_string(scan.param) : pencil.labels[scan.param];
  std::string ids = "none";
  for (std::size_t i = 0; i < library.size(); ++i) ids = (i ? ids + ";" : std::string()) + library[i].id();
  map.metadata["library"] = ids;
  map.metadata["scanned"] = std::to_string(scanned);
  return map;
}

OracleSpectrum eigen_oracle_spectrum(const OperatorPencil& pencil, const ProjectionOperator& pi, std::size_t cap) {
  validate(pencil);
  if (pencil.size() != 2) fail(ErrorKind::Config, "the eigen-oracle needs a two-phase pencil");
  const auto& c1 = pencil.coefficients[0];
  const auto& c2 = pencil.coefficients[1];
  bool ok = c1.has_phases() && c2.has_phases() && c1.phase_matrices().size() == 2 &&
            c2.phase_matrices().size() == 2 && *c1.phase_ids() == *c2.phase_ids();
  if (ok) {
    const auto& a = c1.phase_matrices();
    const auto& b = c2.phase_matrices();
    ok = is_scaled_identity(a[0], 1.0) && is_scaled_identity(a[1], 0.0) && is_scaled_identity(b[0], 0.0) &&
         is_scaled_identity(b[1], 1.0);
  }
  if (!ok) fail(ErrorKind::Config, "the eigen-oracle supports only pencils z₁χ₁I + z₂χ₂I");

  const Matrix m2 = dense_operator_matrix(c2, pi, cap);
  OracleSpectrum out;
  if (m2.rows() == 0) return out;
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(m2), Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  out.mu.assign(ev.data(), ev.data() + ev.size());
  for (double mu : out.mu)
    if (mu > 1e-12) out.points.push_back(1.0 - 1.0 / mu);
  std::sort(out.points.begin(), out.points.end());
  // M(1, z₂) = I + (z₂ − 1)Γ₁χ₂Γ₁ is normal, so its singular values are |1 + (z₂ − 1)μ|.
  for (double z : out.points) {
    double s = std::numeric_limits<double>::infinity();
    for (double mu : out.mu) s = std::min(s, std::abs(1.0 + (z - 1.0) * mu));
    out.sigma.push_back(s);
  }
  return out;
}

int attach_oracle(SpectrumMap& map, const OracleSpectrum& oracle, double tol) {
  int violations = 0;
  for (std::size_t i = 0; i < oracle.points.size(); ++i) {
    const cplx zo{oracle.points[i], 0.0};
    map.oracle_points.push_back(oracle.points[i]);
    map.oracle_sigma.push_back(oracle.sigma[i]);
    for (auto& pt : map.points) {
      if (std::abs(pt.z - zo) > tol) continue;
      if (pt.status == PointStatus::Certified) {
        ++violations;
      } else {
        pt.status = PointStatus::OracleSpectrum;
        pt.sigma_min = oracle.sigma[i];
      }
    }
  }
  map.soundness_violations += violations;
  return violations;
}

OperatorField bloch_assemble(const PhysicsPreset& acoustics, const PhaseLayout& layout,
                             const std::vector<Moduli>& phase_moduli, const Vec3& k) {
  const OperatorPencil p = bloch_pencil(acoustics, layout, phase_moduli);
  const int d = acoustics.d;
  std::vector<cplx> z{1.0};
  double kk = 0.0;
  for (int j = 0; j < d; ++j) {
    z.emplace_back(k[static_cast<std::size_t>(j)]);
    kk += k[static_cast<std::size_t>(j)] * k[static_cast<std::size_t>(j)];
  }
  z.emplace_back(kk);
  return evaluate_pencil(p, z);
}

OperatorPencil bloch_pencil(const PhysicsPreset& acoustics, const PhaseLayout& layout,
                            const std::vector<Moduli>& phase_moduli) {
  const auto mods = all_moduli(acoustics, layout, phase_moduli);
  const int d = acoustics.d;
  std::vector<std::vector<Matrix>> per_phase;
  for (const auto& m : mods) per_phase.push_back(bloch_terms(d, m));
  OperatorPencil p;
  for (std::size_t t = 0; t < per_phase.front().size(); ++t) {
    std::vector<Matrix> mats;
    for (const auto& ph : per_phase) mats.push_back(ph[t]);
    p.coefficients.push_back(
        OperatorField::multiphase(layout.grid(), acoustics.shape, layout.shared_ids(), std::move(mats)));
  }
  p.labels.push_back("1");
  for (int j = 0; j < d; ++j) p.labels.push_back("k" + std::to_string(j + 1));
  p.labels.push_back("z");
  return p;
}

std::vector<std::pair<double, Vec3>> sample_path(const std::vector<Vec3>& vertices, int points_per_segment) {
  std::vector<std::pair<double, Vec3>> out;
  if (vertices.empty()) return out;
  if (points_per_segment < 1) fail(ErrorKind::Config, "points_per_segment must be ≥ 1");
  double s = 0.0;
  for (std::size_t v = 0; v + 1 < vertices.size(); ++v) {
    const Vec3& a = vertices[v];
    const Vec3& b = vertices[v + 1];
    const double len = std::sqrt((b[0] - a[0]) * (b[0] - a[0]) + (b[1] - a[1]) * (b[1] - a[1]) +
                                 (b[2] - a[2]) * (b[2] - a[2]));
    for (int i = 0; i < points_per_segment; ++i) {
      const double f = static_cast<double>(i) / points_per_segment;
      out.push_back({s + f * len, {a[0] + f * (b[0] - a[0]), a[1] + f * (b[1] - a[1]), a[2] + f * (b[2] - a[2])}});
    }
    s += len;
  }
  out.push_back({s, vertices.back()});
  return out;
}

BandReport bloch_scan(const PhysicsPreset& acoustics, const PhaseLayout& layout,
                      const std::vector<Moduli>& phase_moduli, const BlochScanConfig& config,
                      const CertifierConfig& certifier) {
  BandReport report;
  if (config.omegas.empty() || config.k_path.empty()) return report;
  const auto mods = all_moduli(acoustics, layout, phase_moduli);
  const int d = acoustics.d;
  const ProjectionOperator pi = build_projection(acoustics.symbol, layout.grid());

  // L̃ = (1/ω)A(k) + ωB with A = [[−ρ⁻¹I, −iρ⁻¹k], [iρ⁻¹kᵀ, −ρ⁻¹|k|²]] and
  // B = diag(0, 1/κ), so M(ω) = (1/ω)M_A + ωM_B.
  std::vector<Matrix> b_mats;
  for (const auto& m : mods) {
    Matrix b = Matrix::Zero(d + 1, d + 1);
    b(d, d) = 1.0 / m.kappa;
    b_mats.push_back(b);
  }
  const Matrix mb = dense_operator_matrix(
      OperatorField::multiphase(layout.grid(), acoustics.shape, layout.shared_ids(), b_mats), pi, config.oracle_cap);

  for (const auto& [s, k] : sample_path(config.k_path, config.points_per_segment)) {
    std::vector<Matrix> a_mats;
    double kk = 0.0;
    for (int j = 0; j < d; ++j) kk += k[static_cast<std::size_t>(j)] * k[static_cast<std::size_t>(j)];
    for (const auto& m : mods) {
      const cplx r = 1.0 / m.rho;
      Matrix a = Matrix::Zero(d + 1, d + 1);
      a.topLeftCorner(d, d) = -r * Matrix::Identity(d, d);
      for (int j = 0; j < d; ++j) {
        a(j, d) = -kI * r * k[static_cast<std::size_t>(j)];
        a(d, j) = kI * r * k[static_cast<std::size_t>(j)];
      }
      a(d, d) = -r * kk;
      a_mats.push_back(a);
    }
    const Matrix ma = dense_operator_matrix(
        OperatorField::multiphase(layout.grid(), acoustics.shape, layout.shared_ids(), a_mats), pi, config.oracle_cap);
    auto sigma = [&](cplx w) { return smallest_singular_value((1.0 / w) * ma + w * mb); };

    const std::size_t first = report.entries.size();
    report.entries.resize(first + config.omegas.size());
    parallel_for(config.omegas.size(), config.workers, [&](std::size_t i) {
      const cplx w = config.omegas[i];
      BandEntry& e = report.entries[first + i];
      e.s = s;
      e.k = k;
      e.omega = w;
      if (w == 0.0) fail(ErrorKind::Config, "Bloch scan frequencies must be nonzero");
      std::vector<Matrix> l_mats;
      for (std::size_t ph = 0; ph < mods.size(); ++ph) l_mats.push_back((1.0 / w) * a_mats[ph] + w * b_mats[ph]);
      // Only phases present on the grid constrain the certificate.
      const auto counts = layout.counts();
      std::vector<Matrix> present;
      for (std::size_t ph = 0; ph < l_mats.size(); ++ph)
        if (counts[ph] > 0) present.push_back(l_mats[ph]);
      e.cert = certify_matrices(present, {}, acoustics.symbol.name, certifier);
      e.certified = e.cert.has_value();
      e.sigma_min = sigma(w);
      e.near_singular = e.sigma_min < config.singular_threshold;
    });

    if (!config.refine_modes) {
      for (std::size_t i = first; i < report.entries.size(); ++i)
        if (report.entries[i].near_singular)
          report.modes.push_back({s, k, report.entries[i].omega.real(), report.entries[i].sigma_min});
      continue;
    }
    // Local minima of σ_min along runs of real frequencies, refined by golden section.
    for (std::size_t i = first; i < report.entries.size(); ++i) {
      const auto& e = report.entries[i];
      if (e.omega.imag() != 0.0) continue;
      const bool has_prev = i > first && report.entries[i - 1].omega.imag() == 0.0;
      const bool has_next = i + 1 < report.entries.size() && report.entries[i + 1].omega.imag() == 0.0;
      const double lo = has_prev ? report.entries[i - 1].omega.real() : e.omega.real();
      const double hi = has_next ? report.entries[i + 1].omega.real() : e.omega.real();
      const bool is_min = (!has_prev || e.sigma_min < report.entries[i - 1].sigma_min) &&
                          (!has_next || e.sigma_min <= report.entries[i + 1].sigma_min);
      if (!is_min) continue;
      double w = e.omega.real(), sv = e.sigma_min;
      if (hi > lo && lo * hi > 0.0) {
        const auto [wr, sr] = golden_min([&](double x) { return sigma(x); }, std::min(lo, hi), std::max(lo, hi));
        if (sr < sv) {
          w = wr;
          sv = sr;
        }
      }
      if (sv < config.singular_threshold) report.modes.push_back({s, k, w, sv});
    }
  }
  return report;
}

}  // namespace sgate
