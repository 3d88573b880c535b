#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sgate/certify.hpp"
#include "sgate/pencil.hpp"
#include "sgate/projection.hpp"

namespace sgate {

// Convention: the solvers return E ∈ E-space with Γ₁ L Γ₁ E = Γ₁ h.

struct SolveReport {
  Field solution;
  /// Number of series terms added after the first.
  int iterations = 0;
  /// Norm of every series term, in order.
  std::vector<double> increments;
  cplx shift{0.0, 0.0};
  double predicted_ratio = 0.0;
  bool converged = false;
  /// ‖Γ₁(L E) − Γ₁h‖ / ‖h‖ at exit.
  double residual = 0.0;
};

struct SolverConfig {
  double tol = 1e-12;
  int max_iter = 20000;
  std::size_t oracle_cap = 4096;
};

/// Shifted Neumann series with c = (β²/α)e^{−iθ} from the certificate.
/// Hitting max_iter is reported through `converged = false`.
SolveReport neumann_solve(const OperatorField& l, const ProjectionOperator& pi, const Field& h,
                          const CoercivityCertificate& cert, double tol = 1e-12, int max_iter = 20000);

/// Matrix of Γ₁LΓ₁ in the orthonormal basis formed by the per-k columns of
/// pi.basis(k), in Fourier-index order.
Matrix dense_operator_matrix(const OperatorField& l, const ProjectionOperator& pi,
                             std::size_t cap = 4096);

/// Dense reference solve. Throws SpectrumHitError when σ_min ≤ 1e-12·σ_max.
Field dense_oracle_solve(const OperatorField& l, const ProjectionOperator& pi, const Field& h,
                         std::size_t cap = 4096);

/// Solves the swapped problem with L⁻¹ on J-space, then E = L⁻¹(J + h).
/// The certificate for L⁻¹ is searched with plain coercivity unless given.
Field inverse_form_solve(const OperatorField& l, const ProjectionOperator& pi, const Field& h,
                         const SolverConfig& config = {}, const CertifierConfig& certifier = {},
                         const std::optional<CoercivityCertificate>& inverse_cert = std::nullopt);

struct SplittingFactors {
  cplx c_e{1.0, 0.0};
  cplx c_j{1.0, 0.0};
  cplx d_e{1.0, 0.0};
  cplx d_j{1.0, 0.0};
};

/// Doubled coefficient of the L = L_A + L_B splitting, acting on (J-type, E-type) pairs.
OperatorField splitting_coefficient(const OperatorField& l_a, const OperatorField& l_b, const SplittingFactors& f);

/// Splitting solve with h' = −h on the doubled space.
Field splitting_solve(const OperatorField& l_a, const OperatorField& l_b, const ProjectionOperator& pi,
                      const Field& h, const SplittingFactors& factors, const SolverConfig& config = {},
                      const CertifierConfig& certifier = {});

enum class AnalyticProperty { HerglotzIm, HerglotzRe, Homogeneity, Normalization };
const char* to_string(AnalyticProperty p);
AnalyticProperty parse_property(const std::string& name);

struct PropertyReport {
  AnalyticProperty property;
  int samples = 0;
  /// Per sample: Im q/‖h‖² (herglotz_im), Re q/‖h‖² (herglotz_re) with
  /// q = h†Gh, or the relative defect (homogeneity, normalization).
  std::vector<double> values;
  double worst = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

/// Samples parameters z (upper half-plane for herglotz_im, right half-plane
/// otherwise) and random sources, and checks the property on the pencil's
/// Green's operator. Herglotz hypotheses need Hermitian positive semidefinite
/// coefficients summing to a positive definite matrix at every point; this is
/// checked.
PropertyReport analytic_property_check(const OperatorPencil& pencil, const ProjectionOperator& pi,
                                       AnalyticProperty property, int samples, std::uint64_t seed);

}  // namespace sgate
