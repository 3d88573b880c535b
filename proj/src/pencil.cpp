#include "sgate/pencil.hpp"

#include <cmath>

#include "sgate/catalog.hpp"
#include "sgate/errors.hpp"

namespace sgate {

namespace {

[[noreturn]] void dim_error(const std::string& what) { throw Error(ErrorKind::Dimension, "operator-pencil", what); }

bool same_phases(const OperatorPencil& p) {
  const auto& first = p.coefficients.front().phase_ids();
  if (!first) return false;
  for (const auto& c : p.coefficients) {
    const auto& ids = c.phase_ids();
    if (!ids) return false;
    if (ids != first && *ids != *first) return false;
    if (c.phase_matrices().size() != p.coefficients.front().phase_matrices().size()) return false;
  }
  return true;
}

double spectral_norm(const Matrix& m) {
  if (m.rows() == 1) return std::abs(m(0, 0));
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

}  // namespace

void validate(const OperatorPencil& pencil) {
  if (pencil.coefficients.empty()) dim_error("pencil needs at least one coefficient");
  const auto& c0 = pencil.coefficients.front();
  for (const auto& c : pencil.coefficients)
    if (!(c.grid() == c0.grid()) || !(c.shape() == c0.shape())) dim_error("pencil coefficients differ in grid or shape");
  if (!pencil.labels.empty() && pencil.labels.size() != pencil.size()) dim_error("one label per coefficient required");
}

OperatorPencil multiphase_pencil(const PhaseLayout& layout, const TensorShape& shape,
                                 const std::vector<Matrix>& phase_mats) {
  if (phase_mats.size() != static_cast<std::size_t>(layout.phases()))
    throw Error(ErrorKind::Layout, "operator-pencil", "need one matrix per phase");
  OperatorPencil p;
  const auto d = static_cast<Eigen::Index>(shape.dim());
  for (std::size_t i = 0; i < phase_mats.size(); ++i) {
    std::vector<Matrix> mats(phase_mats.size(), Matrix::Zero(d, d));
    mats[i] = phase_mats[i];
    p.coefficients.push_back(OperatorField::multiphase(layout.grid(), shape, layout.shared_ids(), std::move(mats)));
    p.labels.push_back("z" + std::to_string(i + 1));
  }
  return p;
}

OperatorField evaluate_pencil(const OperatorPencil& pencil, const std::vector<cplx>& z) {
  validate(pencil);
  if (z.size() != pencil.size())
    dim_error("parameter vector has length " + std::to_string(z.size()) + ", pencil has " +
              std::to_string(pencil.size()) + " coefficients");
  const auto& c0 = pencil.coefficients.front();
  if (same_phases(pencil)) {
    std::vector<Matrix> mats(c0.phase_matrices().size(), Matrix::Zero(static_cast<Eigen::Index>(c0.dim()),
                                                                       static_cast<Eigen::Index>(c0.dim())));
    for (std::size_t i = 0; i < pencil.size(); ++i)
      for (std::size_t ph = 0; ph < mats.size(); ++ph) mats[ph] += z[i] * pencil.coefficients[i].phase_matrices()[ph];
    return OperatorField::multiphase(c0.grid(), c0.shape(), c0.phase_ids(), std::move(mats));
  }
  std::vector<cplx> out(c0.raw().size(), 0.0);
  for (std::size_t i = 0; i < pencil.size(); ++i) {
    const auto& r = pencil.coefficients[i].raw();
    for (std::size_t j = 0; j < out.size(); ++j) out[j] += z[i] * r[j];
  }
  return OperatorField(c0.grid(), c0.shape(), std::move(out));
}

std::vector<Matrix> evaluate_distinct(const OperatorPencil& pencil, const std::vector<cplx>& z) {
  return evaluate_pencil(pencil, z).distinct();
}

Matrix blockdiag_repeat(const Matrix& m, int ell) {
  const auto r = m.rows(), c = m.cols();
  Matrix out = Matrix::Zero(r * ell, c * ell);
  for (int i = 0; i < ell; ++i) out.block(i * r, i * c, r, c) = m;
  return out;
}

double bound_beta(const std::vector<Matrix>& mats) {
  double beta = 0.0;
  for (const auto& m : mats) beta = std::max(beta, spectral_norm(m));
  return beta;
}

double local_alpha(const std::vector<Matrix>& mats, double theta) {
  const cplx rot = std::polar(1.0, theta);
  double alpha = std::numeric_limits<double>::infinity();
  for (const auto& m : mats) alpha = std::min(alpha, min_eig_hermitian(hermitian_part(rot * m)));
  return alpha;
}

double translated_alpha(const std::vector<Matrix>& mats, double theta, double t, const Translation& tr) {
  const cplx rot = std::polar(1.0, theta);
  double alpha = std::numeric_limits<double>::infinity();
  for (const auto& m : mats) {
    if (static_cast<Eigen::Index>(m.rows()) * tr.ell() != tr.matrix().rows())
      dim_error("translation '" + tr.id() + "' does not match the ℓ-fold tensor space");
    const Matrix h = blockdiag_repeat(hermitian_part(rot * m), tr.ell()) - t * tr.matrix();
    alpha = std::min(alpha, min_eig_hermitian(h));
  }
  return alpha;
}

double bound_beta(const OperatorField& l) { return bound_beta(l.distinct()); }
double local_alpha(const OperatorField& l, double theta) { return local_alpha(l.distinct(), theta); }
double translated_alpha(const OperatorField& l, double theta, double t, const Translation& tr) {
  return translated_alpha(l.distinct(), theta, t, tr);
}

}  // namespace sgate
