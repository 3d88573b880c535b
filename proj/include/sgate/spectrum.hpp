#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sgate/catalog.hpp"
#include "sgate/certify.hpp"
#include "sgate/greens.hpp"

namespace sgate {

/// 2D scan of one complex parameter z[param] with the others held at base_z.
struct ScanConfig {
  std::size_t param = 1;
  std::vector<cplx> base_z{1.0, 1.0};
  double re_min = -5.0, re_max = 5.0;
  double im_min = -5.0, im_max = 5.0;
  int re_points = 101, im_points = 101;
  /// Points beyond this count are left unscanned.
  std::size_t budget = 1000000;
  int workers = 0;
};

enum class PointStatus { Certified, Uncertified, Unscanned, OracleSpectrum };
const char* to_string(PointStatus s);

struct SpectrumPoint {
  cplx z;
  PointStatus status = PointStatus::Unscanned;
  std::optional<CoercivityCertificate> cert;
  /// Smallest singular value of M for oracle-spectrum points.
  double sigma_min = 0.0;
};

struct OracleSpectrum {
  /// Eigenvalues of Γ₁χ₂Γ₁ on the E-space, ascending.
  std::vector<double> mu;
  /// z₂/z₁ = 1 − 1/μ for μ > 1e-12, ascending.
  std::vector<double> points;
  /// σ_min of M at each point.
  std::vector<double> sigma;
};

struct SpectrumMap {
  ScanConfig scan;
  /// Row-major: index = i_im · re_points + i_re, im ascending.
  std::vector<SpectrumPoint> points;
  std::vector<double> oracle_points;
  std::vector<double> oracle_sigma;
  std::map<std::string, std::string> metadata;
  int soundness_violations = 0;

  cplx z_at(int i_re, int i_im) const;
};

SpectrumMap map_spectrum_region(const OperatorPencil& pencil, const ScanConfig& scan,
                                const std::vector<Translation>& library, const std::string& symbol_name,
                                const CertifierConfig& certifier = {});

/// Generalized spectrum of a two-phase pencil L(z) = z₁χ₁I + z₂χ₂I from the
/// Hermitian eigenvalues of Γ₁χ₂Γ₁.
OracleSpectrum eigen_oracle_spectrum(const OperatorPencil& pencil, const ProjectionOperator& pi,
                                     std::size_t cap = 4096);

/// Marks scan points within `tol` of an oracle point. Certified points that
/// coincide are counted as soundness violations and keep their status.
int attach_oracle(SpectrumMap& map, const OracleSpectrum& oracle, double tol = 1e-6);

// Floquet–Bloch acoustics. The shifted coefficient is
//   L̃ = [[−aI, −i a k], [i a kᵀ, ω/κ − a|k|²]],  a = 1/(ωρ).

/// L̃ for per-phase acoustic moduli (keys omega, rho, kappa).
OperatorField bloch_assemble(const PhysicsPreset& acoustics, const PhaseLayout& layout,
                             const std::vector<Moduli>& phase_moduli, const Vec3& k);

/// L̃ as a pencil in (1, k₁..k_d, z) with z = k·k.
OperatorPencil bloch_pencil(const PhysicsPreset& acoustics, const PhaseLayout& layout,
                            const std::vector<Moduli>& phase_moduli);

struct BlochScanConfig {
  /// Polyline vertices in k-space.
  std::vector<Vec3> k_path;
  int points_per_segment = 8;
  std::vector<cplx> omegas;
  double singular_threshold = 1e-8;
  /// Golden-section refinement of σ_min minima along real-ω lines.
  bool refine_modes = true;
  std::size_t oracle_cap = 4096;
  int workers = 0;
};

struct BandEntry {
  double s = 0.0;
  Vec3 k{};
  cplx omega;
  bool certified = false;
  std::optional<CoercivityCertificate> cert;
  double sigma_min = 0.0;
  bool near_singular = false;
};

struct DetectedMode {
  double s = 0.0;
  Vec3 k{};
  double omega = 0.0;
  double sigma_min = 0.0;
};

struct BandReport {
  std::vector<BandEntry> entries;
  std::vector<DetectedMode> modes;
};

/// Per (k, ω): a coercivity certificate on L̃ (ω outside the Bloch spectrum
/// at k) and σ_min of the dense Γ₁L̃Γ₁.
BandReport bloch_scan(const PhysicsPreset& acoustics, const PhaseLayout& layout,
                      const std::vector<Moduli>& phase_moduli, const BlochScanConfig& config,
                      const CertifierConfig& certifier = {});

/// Sample points of a polyline with path parameter s (cumulative length).
std::vector<std::pair<double, Vec3>> sample_path(const std::vector<Vec3>& vertices, int points_per_segment);

}  // namespace sgate
