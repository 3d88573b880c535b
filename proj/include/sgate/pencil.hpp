#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sgate/operator_field.hpp"
#include "sgate/translation.hpp"

namespace sgate {

class PhaseLayout;

/// L(z) = Σ z_i L⁽ⁱ⁾(x).
struct OperatorPencil {
  std::vector<OperatorField> coefficients;
  std::vector<std::string> labels;

  std::size_t size() const noexcept { return coefficients.size(); }
  const Grid& grid() const { return coefficients.front().grid(); }
  const TensorShape& shape() const { return coefficients.front().shape(); }
};

/// Checks that all coefficients share grid and shape and n ≥ 1.
void validate(const OperatorPencil& pencil);

/// Multiphase pencil with L⁽ⁱ⁾ = χ_i A_i, one parameter per phase.
OperatorPencil multiphase_pencil(const PhaseLayout& layout, const TensorShape& shape,
                                 const std::vector<Matrix>& phase_mats);

OperatorField evaluate_pencil(const OperatorPencil& pencil, const std::vector<cplx>& z);
/// Matrices L(z) takes on the grid, each once (see OperatorField::distinct).
std::vector<Matrix> evaluate_distinct(const OperatorPencil& pencil, const std::vector<cplx>& z);

struct CoercivityCertificate {
  double theta = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  double t = 0.0;
  /// Empty for plain coercivity (t = 0, no translation).
  std::string translation_id;
  double residual = 0.0;

  bool valid() const noexcept { return alpha > 0.0 && residual >= 0.0; }
};

double bound_beta(const OperatorField& l);
double local_alpha(const OperatorField& l, double theta);
double translated_alpha(const OperatorField& l, double theta, double t, const Translation& tr);

// Same reductions on an explicit list of matrices.
double bound_beta(const std::vector<Matrix>& mats);
double local_alpha(const std::vector<Matrix>& mats, double theta);
double translated_alpha(const std::vector<Matrix>& mats, double theta, double t, const Translation& tr);

/// blockdiag of ℓ copies of m.
Matrix blockdiag_repeat(const Matrix& m, int ell);

}  // namespace sgate
