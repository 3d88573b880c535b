#include <doctest.h>

#include <random>
#include <sstream>

#include "sgate/catalog.hpp"
#include "sgate/certify.hpp"
#include "sgate/errors.hpp"

using namespace sgate;

namespace {

Matrix eye(int n) { return Matrix::Identity(n, n); }

std::vector<Matrix> scalar_pair(cplx a, cplx b) { return {a * eye(2), b * eye(2)}; }

// Nonzero a, b lie strictly inside a common open half-plane through 0 iff the
// angle between them is below π.
bool common_half_plane(cplx a, cplx b) {
  if (a == 0.0 || b == 0.0) return false;
  return std::abs(std::arg(b / a)) < kPi;
}

const SymbolMap& conductivity_symbol() {
  static const auto p = build_preset("conductivity", 2);
  return p.symbol;
}

Translation verified(Translation t, const SymbolMap& s) {
  qstar_min_eig(t, s);
  return t;
}

}  // namespace

TEST_CASE("zero translation passes with worst exactly 0") {
  Translation t = zero_translation(2);
  CHECK(qstar_min_eig(t, conductivity_symbol()) == 0.0);
  CHECK(t.status().pass);
  CHECK(t.verified_for("conductivity"));
}

TEST_CASE("negative identity fails with worst -1") {
  Translation t("neg", 1, -eye(2));
  CHECK(qstar_min_eig(t, conductivity_symbol()) == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK_FALSE(t.status().pass);
  CHECK_FALSE(t.verified_for("conductivity"));
}

TEST_CASE("rotation translation vanishes on span{k} pairs") {
  Translation t = rotation2d_translation();
  const double worst = qstar_min_eig(t, conductivity_symbol());
  CHECK(t.status().samples == 10000);
  CHECK(worst >= -1e-10);
  CHECK(t.status().pass);
  // Symbolic oracle: 2 Re(a₁ conj(a₂) k·R⊥k) = 0 since k·R⊥k = 0.
  std::mt19937_64 rng(1);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const double kx = n(rng), ky = n(rng);
    Vector e(4);
    const cplx a1(n(rng), n(rng)), a2(n(rng), n(rng));
    e << a1 * kx, a1 * ky, a2 * kx, a2 * ky;
    CHECK(std::abs((e.adjoint() * t.matrix() * e)(0, 0)) <= 1e-12 * e.squaredNorm());
  }
}

TEST_CASE("Hall translations are Q*-null on gradients") {
  for (int s : {1, -1}) {
    Translation t = hall2d_translation(s);
    CHECK(std::abs(qstar_min_eig(t, conductivity_symbol())) <= 1e-12);
    CHECK(t.status().pass);
  }
}

TEST_CASE("non-scale-invariant sampling includes k = 0 and the asymptotic limit") {
  const auto p = build_preset("acoustics", 2);
  // On E_k = span(ik, 1): value-only form gives 1/(1+|k|²) → 0 as |k| → ∞.
  Matrix v = Matrix::Zero(3, 3);
  v(2, 2) = 1.0;
  Translation value("value", 1, v);
  const double w = qstar_min_eig(value, p.symbol);
  CHECK(w >= -1e-12);
  CHECK(w <= 1e-12);
  CHECK(value.status().samples == 1 + 400 * 26);
  // diag(1, 1, −1) gives (|k|² − 1)/(|k|² + 1), worst −1 at k = 0.
  Matrix m = Matrix::Identity(3, 3);
  m(2, 2) = -1.0;
  Translation mixed("mixed", 1, m);
  CHECK(qstar_min_eig(mixed, p.symbol) == doctest::Approx(-1.0));
  CHECK_FALSE(mixed.status().pass);
}

TEST_CASE("translation construction and CSV loading") {
  Matrix nh = eye(2);
  nh(0, 1) = 1.0;
  CHECK_THROWS_AS(Translation("bad", 1, nh), Error);
  CHECK_THROWS_AS(Translation("bad", 3, eye(4)), Error);
  std::istringstream csv("row,col,re,im\n0,2,0,0\n0,3,-1,0\n1,2,1,0\n2,1,1,0\n3,0,-1,0\n2,0,0,0\n");
  const Translation t = load_translation_csv(csv, "file", 2);
  CHECK(t.ell() == 2);
  CHECK(t.matrix().rows() == 4);
  CHECK((t.matrix() - rotation2d_translation().matrix()).norm() == 0.0);
  CHECK_FALSE(t.status().checked);
  std::istringstream bad("0,1,1,0\n");
  CHECK_THROWS_AS(load_translation_csv(bad, "bad", 2), Error);
  CHECK_THROWS_AS(builtin_translation("rotation2d", 3), Error);
  CHECK_THROWS_AS(builtin_translation("nope", 2), Error);
}

TEST_CASE("wrong-size translation is a dimension error in the Q* check") {
  Translation t = rotation2d_translation();
  const auto p = build_preset("acoustics", 2);
  CHECK_THROWS_AS(qstar_min_eig(t, p.symbol), Error);
}

TEST_CASE("identity certificate") {
  const auto c = certify_matrices({eye(2)}, {}, "conductivity");
  REQUIRE(c.has_value());
  CHECK(c->theta == 0.0);
  CHECK(c->alpha == doctest::Approx(1.0));
  CHECK(c->beta == doctest::Approx(1.0));
  CHECK(c->t == 0.0);
  CHECK(c->translation_id.empty());
  CHECK(c->valid());
}

TEST_CASE("two-phase conductivity (1, 4) certificate") {
  const auto c = certify_matrices(scalar_pair(1.0, 4.0), {}, "conductivity");
  REQUIRE(c.has_value());
  CHECK(std::abs(c->theta) < 1e-6);
  CHECK(c->alpha == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(c->beta == doctest::Approx(4.0));
}

TEST_CASE("two-phase conductivity (1, -1+0.4i) certificate rotates both moduli into Re > 0") {
  const cplx z2(-1.0, 0.4);
  REQUIRE(common_half_plane(1.0, z2));
  const auto c = certify_matrices(scalar_pair(1.0, z2), {}, "conductivity");
  REQUIRE(c.has_value());
  const cplx r = std::polar(1.0, c->theta);
  CHECK((r * 1.0).real() > 0.0);
  CHECK((r * z2).real() > 0.0);
  CHECK(c->alpha == doctest::Approx(std::min((r * 1.0).real(), (r * z2).real())).epsilon(1e-12));
}

TEST_CASE("plain certification agrees with the half-plane test on 1000 random pairs") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  int agree = 0, checked = 0;
  for (int i = 0; i < 1000; ++i) {
    const cplx a(u(rng), u(rng)), b(u(rng), u(rng));
    const bool expect = common_half_plane(a, b);
    const auto c = certify_matrices(scalar_pair(a, b), {}, "conductivity");
    ++checked;
    if (c.has_value() == expect) ++agree;
    else
      INFO("a = " << a << ", b = " << b);
    CHECK(c.has_value() == expect);
  }
  CHECK(agree == checked);
}

TEST_CASE("antipodal moduli are never certified") {
  CHECK_FALSE(certify_matrices(scalar_pair(1.0, -1.0), {}, "conductivity").has_value());
  CHECK_FALSE(certify_matrices(scalar_pair(cplx(0.3, 0.4), cplx(-0.6, -0.8)), {}, "conductivity").has_value());
}

TEST_CASE("certificates re-evaluate exactly") {
  const auto lib = std::vector<Translation>{verified(hall2d_translation(1), conductivity_symbol()),
                                            verified(hall2d_translation(-1), conductivity_symbol()),
                                            verified(rotation2d_translation(), conductivity_symbol())};
  const auto cond = build_preset("conductivity", 2);
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  int found = 0;
  for (int i = 0; i < 40; ++i) {
    const std::vector<Matrix> mats{cond.phase_matrix({{"sigma", cplx(u(rng), u(rng))}, {"hall", u(rng)}}),
                                   cond.phase_matrix({{"sigma", cplx(u(rng), u(rng))}, {"hall", u(rng)}})};
    const auto c = certify_matrices(mats, lib, "conductivity");
    if (!c) continue;
    ++found;
    CHECK(c->alpha > 0.0);
    CHECK(c->alpha <= c->beta);
    CHECK(c->residual >= 0.0);
    if (c->translation_id.empty()) {
      CHECK(local_alpha(mats, c->theta) == c->alpha);
    } else {
      const auto& tr = *std::find_if(lib.begin(), lib.end(), [&](const auto& t) { return t.id() == c->translation_id; });
      CHECK(translated_alpha(mats, c->theta, c->t, tr) == c->alpha);
    }
  }
  CHECK(found > 0);
}

TEST_CASE("enlarging the library never lowers alpha/beta") {
  const auto& sym = conductivity_symbol();
  const std::vector<Translation> all{verified(zero_translation(2), sym), verified(rotation2d_translation(), sym),
                                     verified(hall2d_translation(1), sym), verified(hall2d_translation(-1), sym)};
  const auto cond = build_preset("conductivity", 2);
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int i = 0; i < 25; ++i) {
    const std::vector<Matrix> mats{cond.phase_matrix({{"sigma", cplx(u(rng), u(rng))}, {"hall", u(rng)}}),
                                   cond.phase_matrix({{"sigma", cplx(u(rng), u(rng))}, {"hall", u(rng)}})};
    double prev = 0.0;
    for (std::size_t n = 0; n <= all.size(); ++n) {
      const std::vector<Translation> lib(all.begin(), all.begin() + static_cast<long>(n));
      const auto c = certify_matrices(mats, lib, "conductivity");
      const double r = c ? c->alpha / c->beta : 0.0;
      CHECK(r >= prev);
      prev = r;
    }
  }
}

TEST_CASE("Hall translation strictly improves a Hall conductor that plain coercivity misses") {
  // σ = i, hall = 1: Herm(e^{iθ}L) has eigenvalues −sin θ ± sin θ, so the
  // best plain α is 0, while −iR⊥ at t = 1 cancels the Hall part.
  const auto cond = build_preset("conductivity", 2);
  const std::vector<Matrix> mats{cond.phase_matrix({{"sigma", kI}, {"hall", 1.0}})};
  CHECK_FALSE(certify_matrices(mats, {}, "conductivity").has_value());
  const auto& sym = conductivity_symbol();
  const auto c = certify_matrices(mats, {verified(hall2d_translation(1), sym), verified(hall2d_translation(-1), sym)},
                                  "conductivity");
  REQUIRE(c.has_value());
  CHECK(c->translation_id == "hall2d-");
  CHECK(c->alpha == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(c->t == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(c->alpha > local_alpha(mats, c->theta) + 0.5);
}

TEST_CASE("isotropic two-phase conductivity gains nothing from the rotation translation") {
  const auto& sym = conductivity_symbol();
  const auto mats = scalar_pair(1.0, cplx(-0.2, 0.5));
  const auto plain = certify_matrices(mats, {}, "conductivity");
  const auto rot = certify_matrices(mats, {verified(rotation2d_translation(), sym)}, "conductivity");
  REQUIRE(plain.has_value());
  REQUIRE(rot.has_value());
  CHECK(rot->translation_id.empty());
  CHECK(rot->alpha == plain->alpha);
  // T has eigenvalues ±1, so the translated bound is local α − t.
  const auto [t, a] = optimize_t(mats, plain->theta, rotation2d_translation(), 10.0);
  CHECK(t == 0.0);
  CHECK(a == doctest::Approx(plain->alpha));
}

TEST_CASE("unverified translations are rejected") {
  const auto mats = scalar_pair(1.0, 2.0);
  CHECK_THROWS_AS(certify_matrices(mats, {rotation2d_translation()}, "conductivity"), Error);
  const auto other = build_preset("acoustics", 2);
  Translation t("value", 1, Matrix::Identity(3, 3));
  qstar_min_eig(t, other.symbol);
  REQUIRE(t.status().pass);
  try {
    certify_matrices({eye(3)}, {t}, "conductivity");
    FAIL("expected rejection");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Translation);
  }
}
