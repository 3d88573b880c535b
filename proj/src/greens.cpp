#include "sgate/greens.hpp"

#include <cmath>
#include <random>

#include <Eigen/SVD>

#include "sgate/errors.hpp"
#include "sgate/parallel.hpp"

namespace sgate {

namespace {

constexpr const char* kModule = "greens-solver";

[[noreturn]] void fail(ErrorKind kind, const std::string& what) { throw Error(kind, kModule, what); }

// Applies f pointwise to a pair of operator fields, per phase when both share
// the same layout.
template <class F>
OperatorField combine(const OperatorField& a, const OperatorField& b, const TensorShape& shape, F&& f) {
  if (!(a.grid() == b.grid()) || a.dim() != b.dim()) fail(ErrorKind::Dimension, "operator fields differ in grid or dim");
  if (a.has_phases() && b.has_phases() &&
      (a.phase_ids() == b.phase_ids() || *a.phase_ids() == *b.phase_ids()) &&
      a.phase_matrices().size() == b.phase_matrices().size()) {
    std::vector<Matrix> mats;
    for (std::size_t i = 0; i < a.phase_matrices().size(); ++i)
      mats.push_back(f(a.phase_matrices()[i], b.phase_matrices()[i]));
    return OperatorField::multiphase(a.grid(), shape, a.phase_ids(), std::move(mats));
  }
  const auto nd = shape.dim();
  std::vector<cplx> out(a.points() * nd * nd);
  for (std::size_t x = 0; x < a.points(); ++x) {
    const Matrix m = f(a.at(x), b.at(x));
    for (std::size_t r = 0; r < nd; ++r)
      for (std::size_t c = 0; c < nd; ++c)
        out[x * nd * nd + r * nd + c] = m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
  }
  return OperatorField(a.grid(), shape, std::move(out));
}

Matrix checked_inverse(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(s.size() - 1) <= 1e-12 * s(0))
    fail(ErrorKind::Singular, "coefficient is singular at some point (smallest singular value " +
                                  std::to_string(s.size() ? s(s.size() - 1) : 0.0) + ")");
  return svd.matrixV() * s.cwiseInverse().asDiagonal() * svd.matrixU().adjoint();
}

OperatorField pointwise_inverse(const OperatorField& l) {
  return l.map([](const Matrix& m) { return checked_inverse(m); });
}

}  // namespace

SolveReport neumann_solve(const OperatorField& l, const ProjectionOperator& pi, const Field& h,
                          const CoercivityCertificate& cert, double tol, int max_iter) {
  if (!(cert.alpha > 0.0) || !(cert.beta >= cert.alpha))
    fail(ErrorKind::Certificate, "Neumann solve needs a certificate with 0 < α ≤ β");
  if (!(l.grid() == pi.grid()) || l.dim() != pi.dim() || !(h.grid() == pi.grid()) || h.dim() != pi.dim())
    fail(ErrorKind::Dimension, "operator, projection and source do not match");

  SolveReport rep;
  rep.shift = (cert.beta * cert.beta / cert.alpha) * std::polar(1.0, -cert.theta);
  const double ab = cert.alpha / cert.beta;
  rep.predicted_ratio = std::sqrt(std::max(0.0, 1.0 - ab * ab));
  const cplx inv_c = 1.0 / rep.shift;
  const double hn = norm(h);

  const Field g1h = pi.apply(h);
  Field term = inv_c * g1h;
  Field sol = term;
  double tn = norm(term);
  rep.increments.push_back(tn);
  rep.converged = tn <= tol * hn;
  while (!rep.converged && rep.iterations < max_iter) {
    Field next = term;
    axpy(-inv_c, pi.apply(l.apply(term)), next);
    tn = norm(next);
    axpy(1.0, next, sol);
    term = std::move(next);
    ++rep.iterations;
    rep.increments.push_back(tn);
    rep.converged = tn <= tol * hn;
  }
  rep.residual = hn > 0.0 ? norm(pi.apply(l.apply(sol)) - g1h) / hn : 0.0;
  rep.solution = std::move(sol);
  return rep;
}

Matrix dense_operator_matrix(const OperatorField& l, const ProjectionOperator& pi, std::size_t cap) {
  const Grid& grid = pi.grid();
  if (!(l.grid() == grid) || l.dim() != pi.dim()) fail(ErrorKind::Dimension, "operator and projection do not match");
  const std::size_t n = pi.subspace_dim();
  if (n > cap)
    fail(ErrorKind::CapExceeded, "E-space dimension " + std::to_string(n) + " exceeds the oracle cap " + std::to_string(cap));
  const std::size_t np = grid.points();
  const std::size_t d = pi.dim();

  // L̂(q) = (1/N) Σ_x L(x) e^{−iq·x}
  Field lf(grid, TensorShape::vector(static_cast<int>(d * d)), l.raw());
  transform_inplace(grid, d * d, lf.values(), Direction::Forward);
  const double s = 1.0 / std::sqrt(static_cast<double>(np));
  auto lhat = [&](std::size_t q) {
    Matrix m(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    const auto v = lf.at(q);
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c) m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = s * v[r * d + c];
    return m;
  };

  std::vector<std::size_t> offset(np + 1, 0);
  for (std::size_t k = 0; k < np; ++k) offset[k + 1] = offset[k] + static_cast<std::size_t>(pi.basis(k).cols());

  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  parallel_for(np, 0, [&](std::size_t k) {
    const Matrix& uk = pi.basis(k);
    if (uk.cols() == 0) return;
    const auto ik = grid.multi_index(k);
    const Matrix ukh = uk.adjoint();
    for (std::size_t kp = 0; kp < np; ++kp) {
      const Matrix& ukp = pi.basis(kp);
      if (ukp.cols() == 0) continue;
      const auto ikp = grid.multi_index(kp);
      const std::size_t q = grid.linear_index({ik[0] - ikp[0], ik[1] - ikp[1], ik[2] - ikp[2]});
      m.block(static_cast<Eigen::Index>(offset[k]), static_cast<Eigen::Index>(offset[kp]), uk.cols(), ukp.cols()) =
          ukh * lhat(q) * ukp;
    }
  });
  return m;
}

Field dense_oracle_solve(const OperatorField& l, const ProjectionOperator& pi, const Field& h, std::size_t cap) {
  if (!(h.grid() == pi.grid()) || h.dim() != pi.dim()) fail(ErrorKind::Dimension, "source does not match projection");
  const Matrix m = dense_operator_matrix(l, pi, cap);
  const Grid& grid = pi.grid();
  const std::size_t np = grid.points();
  const Field hf = transform(h, Direction::Forward);

  Vector b(m.rows());
  std::size_t off = 0;
  for (std::size_t k = 0; k < np; ++k) {
    const Matrix& uk = pi.basis(k);
    if (uk.cols() == 0) continue;
    const auto hk = hf.at(k);
    b.segment(static_cast<Eigen::Index>(off), uk.cols()) =
        uk.adjoint() * Eigen::Map<const Vector>(hk.data(), static_cast<Eigen::Index>(hk.size()));
    off += static_cast<std::size_t>(uk.cols());
  }

  Field e(grid, h.shape());
  if (m.rows() == 0) return e;
  Eigen::BDCSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const double smax = sv(0), smin = sv(sv.size() - 1);
  if (smin <= 1e-12 * smax) throw SpectrumHitError(smin, smax);
  const Vector x = svd.solve(b);

  off = 0;
  for (std::size_t k = 0; k < np; ++k) {
    const Matrix& uk = pi.basis(k);
    if (uk.cols() == 0) continue;
    const Vector ek = uk * x.segment(static_cast<Eigen::Index>(off), uk.cols());
    std::copy(ek.data(), ek.data() + ek.size(), e.at(k).begin());
    off += static_cast<std::size_t>(uk.cols());
  }
  transform_inplace(grid, e.dim(), e.values(), Direction::Inverse);
  return e;
}

Field inverse_form_solve(const OperatorField& l, const ProjectionOperator& pi, const Field& h,
                         const SolverConfig& config, const CertifierConfig& certifier,
                         const std::optional<CoercivityCertificate>& inverse_cert) {
  const OperatorField linv = pointwise_inverse(l);
  std::optional<CoercivityCertificate> cert = inverse_cert;
  if (!cert) cert = certify_coercivity(linv, {}, pi.symbol_name(), certifier);
  if (!cert) fail(ErrorKind::Certificate, "no coercivity certificate for L⁻¹ on the J-space");
  const ProjectionOperator co = pi.complement();
  const Field htilde = -1.0 * linv.apply(h);
  const SolveReport rep = neumann_solve(linv, co, htilde, *cert, config.tol, config.max_iter);
  if (!rep.converged) fail(ErrorKind::NonConvergence, "inverse-form series did not converge within max_iter");
  return linv.apply(rep.solution + h);
}

OperatorField splitting_coefficient(const OperatorField& l_a, const OperatorField& l_b, const SplittingFactors& f) {
  for (const cplx v : {f.c_e, f.c_j, f.d_e, f.d_j})
    if (v == 0.0) fail(ErrorKind::Config, "splitting factors must be nonzero");
  const TensorShape doubled = l_a.shape().repeated(2);
  return combine(l_a, l_b, doubled, [&](const Matrix& a, const Matrix& b) {
    const Matrix ai = checked_inverse(a);
    const auto n = a.rows();
    Matrix m(2 * n, 2 * n);
    m.topLeftCorner(n, n) = f.c_e * f.d_j * ai;
    m.topRightCorner(n, n) = -f.c_e * f.d_e * ai * b;
    m.bottomLeftCorner(n, n) = f.c_j * f.d_j * b * ai;
    m.bottomRightCorner(n, n) = f.c_j * f.d_e * (a - b * ai * b);
    return m;
  });
}

Field splitting_solve(const OperatorField& l_a, const OperatorField& l_b, const ProjectionOperator& pi,
                      const Field& h, const SplittingFactors& factors, const SolverConfig& config,
                      const CertifierConfig& certifier) {
  const OperatorField lbar = splitting_coefficient(l_a, l_b, factors);
  const auto cert = certify_coercivity(lbar, {}, pi.symbol_name(), certifier);
  if (!cert) fail(ErrorKind::Certificate, "no doubled-space certificate for this splitting");
  const ProjectionOperator dbl = pi.doubled();
  // h' = −h leaves h̄ = (0, 2 c_J h).
  const Field hbar = stack(Field(h.grid(), h.shape()), (2.0 * factors.c_j) * h);
  const SolveReport rep = neumann_solve(lbar, dbl, hbar, *cert, config.tol, config.max_iter);
  if (!rep.converged) fail(ErrorKind::NonConvergence, "splitting series did not converge within max_iter");
  const Field j_plus = factors.d_j * half(rep.solution, 0);
  const Field e_minus = factors.d_e * half(rep.solution, 1);
  const OperatorField a_inv = pointwise_inverse(l_a);
  const Field e_plus = a_inv.apply(j_plus - l_b.apply(e_minus));
  return 0.5 * (e_plus + e_minus);
}

const char* to_string(AnalyticProperty p) {
  switch (p) {
    case AnalyticProperty::HerglotzIm: return "herglotz_im";
    case AnalyticProperty::HerglotzRe: return "herglotz_re";
    case AnalyticProperty::Homogeneity: return "homogeneity";
    case AnalyticProperty::Normalization: return "normalization";
  }
  return "unknown";
}

AnalyticProperty parse_property(const std::string& name) {
  for (auto p : {AnalyticProperty::HerglotzIm, AnalyticProperty::HerglotzRe, AnalyticProperty::Homogeneity,
                 AnalyticProperty::Normalization})
    if (name == to_string(p)) return p;
  fail(ErrorKind::Config, "unknown property '" + name + "'");
}

PropertyReport analytic_property_check(const OperatorPencil& pencil, const ProjectionOperator& pi,
                                       AnalyticProperty property, int samples, std::uint64_t seed) {
  validate(pencil);
  PropertyReport rep;
  rep.property = property;
  rep.samples = samples;
  const bool herglotz = property == AnalyticProperty::HerglotzIm || property == AnalyticProperty::HerglotzRe;
  if (herglotz) {
    for (const auto& c : pencil.coefficients)
      for (const auto& m : c.distinct()) {
        const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
        if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale || min_eig_hermitian(m) < -1e-12 * scale)
          fail(ErrorKind::Config, "herglotz check needs Hermitian positive semidefinite pencil coefficients");
      }
    const std::vector<cplx> ones(pencil.size(), 1.0);
    for (const auto& m : evaluate_distinct(pencil, ones))
      if (!(min_eig_hermitian(hermitian_part(m)) > 0.0))
        fail(ErrorKind::Config, "herglotz check needs coefficients summing to a positive definite matrix");
  }
  rep.threshold = property == AnalyticProperty::Normalization ? 1e-12 : 1e-10;

  constexpr double kTol = 1e-15;
  constexpr int kMaxIter = 400000;
  auto solve = [&](const OperatorField& l, const Field& h) {
    const auto cert = certify_coercivity(l, {}, pi.symbol_name());
    if (!cert) fail(ErrorKind::Certificate, "sampled instance has no coercivity certificate");
    auto r = neumann_solve(l, pi, h, *cert, kTol, kMaxIter);
    if (!r.converged) fail(ErrorKind::NonConvergence, "series did not converge in property check");
    return r.solution;
  };

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> wide(-1.0, 1.0), pos(0.5, 2.0);
  for (int s = 0; s < samples; ++s) {
    std::vector<cplx> z(pencil.size());
    for (auto& v : z) {
      const double a = wide(rng), b = pos(rng);
      v = property == AnalyticProperty::HerglotzIm ? cplx(a, b) : cplx(b, a);
    }
    const Field h = random_field(pi.grid(), pi.shape(), seed * 7919 + static_cast<std::uint64_t>(s));
    const double h2 = norm(h) * norm(h);
    double value = 0.0;
    switch (property) {
      case AnalyticProperty::HerglotzIm:
      case AnalyticProperty::HerglotzRe: {
        const Field e = solve(evaluate_pencil(pencil, z), h);
        // h†Gh; linear in the first slot of the inner product.
        const cplx q = inner_product(e, h);
        value = (property == AnalyticProperty::HerglotzIm ? q.imag() : q.real()) / h2;
        break;
      }
      case AnalyticProperty::Homogeneity: {
        const Field e = solve(evaluate_pencil(pencil, z), h);
        for (const cplx lambda : {cplx(2.0, 0.0), cplx(0.0, 1.0), cplx(2.0, 1.0)}) {
          std::vector<cplx> zl(z);
          for (auto& v : zl) v *= lambda;
          const Field el = solve(evaluate_pencil(pencil, zl), h);
          value = std::max(value, norm(el - (1.0 / lambda) * e) / std::sqrt(h2));
        }
        break;
      }
      case AnalyticProperty::Normalization: {
        const auto d = static_cast<Eigen::Index>(pi.dim());
        const OperatorField id = OperatorField::constant(pi.grid(), pi.shape(), Matrix::Identity(d, d));
        CoercivityCertificate cert;
        cert.alpha = cert.beta = 1.0;
        const auto r = neumann_solve(id, pi, h, cert, kTol, kMaxIter);
        value = norm(r.solution - pi.apply(h)) / std::sqrt(h2);
        break;
      }
    }
    rep.values.push_back(value);
  }
  if (property == AnalyticProperty::HerglotzRe) {
    rep.worst = rep.values.empty() ? 0.0 : *std::min_element(rep.values.begin(), rep.values.end());
    rep.pass = rep.worst >= -rep.threshold;
  } else {
    rep.worst = rep.values.empty() ? 0.0 : *std::max_element(rep.values.begin(), rep.values.end());
    rep.pass = rep.worst <= rep.threshold;
  }
  return rep;
}

}  // namespace sgate
