#include "sgate/certify.hpp"

#include <cmath>

#include "sgate/errors.hpp"

namespace sgate {

namespace {

constexpr double kAlphaFloor = 1e-12;

constexpr double kGolden = 0.6180339887498949;

template <class F>
std::pair<double, double> golden_max(F&& f, double lo, double hi, int iters = 80) {
  double a = lo, b = hi;
  double x1 = b - kGolden * (b - a), x2 = a + kGolden * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int i = 0; i < iters && b - a > 1e-14 * (1.0 + std::abs(a) + std::abs(b)); ++i) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kGolden * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kGolden * (b - a);
      f1 = f(x1);
    }
  }
  return f1 >= f2 ? std::pair{x1, f1} : std::pair{x2, f2};
}

struct Candidate {
  double theta = 0.0;
  double alpha = -std::numeric_limits<double>::infinity();
  double t = 0.0;
  int translation = -1;  // -1: plain
};

}  // namespace

std::pair<double, double> optimize_t(const std::vector<Matrix>& mats, double theta, const Translation& tr,
                                     double t_max) {
  auto f = [&](double t) { return translated_alpha(mats, theta, t, tr); };
  const double f0 = f(0.0);
  if (tr.norm() == 0.0 || t_max <= 0.0) return {0.0, f0};
  // f is concave in t; if it does not rise over a small step, t = 0 is optimal
  // up to that step.
  const double probe = 1e-9 * t_max;
  if (f(probe) <= f0) return {0.0, f0};
  auto [t, ft] = golden_max(f, 0.0, t_max);
  if (ft <= f0) return {0.0, f0};
  return {t, ft};
}

std::optional<CoercivityCertificate> certify_matrices(const std::vector<Matrix>& mats,
                                                      const std::vector<Translation>& library,
                                                      const std::string& symbol_name,
                                                      const CertifierConfig& config) {
  for (const auto& tr : library) {
    if (!tr.verified_for(symbol_name)) {
      std::string why = !tr.status().checked ? "it has not been Q*-checked"
                        : !tr.status().pass  ? "its Q* check failed (worst " + std::to_string(tr.status().worst) + ")"
                                             : "it was checked against symbol '" + tr.status().symbol + "'";
      throw Error(ErrorKind::Translation, "translation-certifier",
                  "translation '" + tr.id() + "' rejected for symbol '" + symbol_name + "': " + why);
    }
  }
  if (mats.empty() || config.theta_samples < 1)
    throw Error(ErrorKind::Certificate, "translation-certifier", "nothing to certify");
  const double beta = bound_beta(mats);
  if (!(beta > 0.0)) return std::nullopt;

  auto t_max_for = [&](const Translation& tr) { return tr.norm() > 0.0 ? config.t_max_factor * beta / tr.norm() : 0.0; };
  // Each family (plain, then one translation at a time) gets its own θ grid
  // search and refinement, so adding library entries never lowers the result.
  auto family_at = [&](int family, double theta) {
    Candidate c;
    c.theta = theta;
    if (family < 0) {
      c.alpha = local_alpha(mats, theta);
      return c;
    }
    const auto& tr = library[static_cast<std::size_t>(family)];
    const auto [t, a] = optimize_t(mats, theta, tr, t_max_for(tr));
    c.alpha = a;
    if (t > 0.0) {
      c.t = t;
      c.translation = family;
    }
    return c;
  };

  const int n = config.theta_samples;
  const double step = 2.0 * kPi / n;
  Candidate best;
  for (int family = -1; family < static_cast<int>(library.size()); ++family) {
    if (family >= 0 && library[static_cast<std::size_t>(family)].norm() == 0.0) continue;
    Candidate fb;
    for (int j = 0; j < n; ++j) {
      const Candidate c = family_at(family, step * j);
      if (c.alpha > fb.alpha) fb = c;
    }
    if (config.refine_theta) {
      auto f = [&](double th) { return family_at(family, th).alpha; };
      const auto [th, a] = golden_max(f, fb.theta - step, fb.theta + step, 60);
      if (a > fb.alpha) {
        double t0 = std::remainder(th, 2.0 * kPi);
        if (t0 < 0.0) t0 += 2.0 * kPi;
        const Candidate c = family_at(family, t0);
        if (c.alpha > fb.alpha) fb = c;
      }
    }
    // Plain wins ties.
    if (fb.alpha > best.alpha) best = fb;
  }

  // α at roundoff level relative to β is not a certificate.
  const double floor = kAlphaFloor * beta;
  if (!(best.alpha > floor)) return std::nullopt;

  CoercivityCertificate cert;
  cert.theta = best.theta;
  cert.beta = beta;
  cert.t = best.t;
  if (best.translation >= 0) {
    const auto& tr = library[static_cast<std::size_t>(best.translation)];
    cert.translation_id = tr.id();
    cert.alpha = translated_alpha(mats, cert.theta, cert.t, tr);
  } else {
    cert.alpha = local_alpha(mats, cert.theta);
  }
  // Re-evaluation through the same reduction reproduces α exactly.
  const double again = best.translation >= 0
                           ? translated_alpha(mats, cert.theta, cert.t, library[static_cast<std::size_t>(best.translation)])
                           : local_alpha(mats, cert.theta);
  cert.residual = again - cert.alpha;
  if (!(cert.alpha > floor)) return std::nullopt;
  return cert;
}

std::optional<CoercivityCertificate> certify_coercivity(const OperatorField& l,
                                                        const std::vector<Translation>& library,
                                                        const std::string& symbol_name,
                                                        const CertifierConfig& config) {
  return certify_matrices(l.distinct(), library, symbol_name, config);
}

}  // namespace sgate
