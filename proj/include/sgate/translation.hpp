#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "sgate/common.hpp"

namespace sgate {

struct SymbolMap;

/// Outcome of the Q* check; only qstar_min_eig writes it.
struct QstarStatus {
  bool checked = false;
  bool pass = false;
  double worst = 0.0;
  std::size_t samples = 0;
  std::string symbol;
};

struct QstarSampling {
  int directions_scale_invariant = 10000;
  int directions = 400;
  int radii = 25;
  double r_min = 1e-3;
  double r_max = 1e3;
  double tolerance = -1e-10;
};

/// Constant Hermitian operator on the ℓ-fold tensor space.
class Translation {
 public:
  Translation(std::string id, int ell, Matrix t);

  const std::string& id() const noexcept { return id_; }
  int ell() const noexcept { return ell_; }
  const Matrix& matrix() const noexcept { return t_; }
  /// Spectral norm of T.
  double norm() const noexcept { return norm_; }
  const QstarStatus& status() const noexcept { return status_; }
  bool verified_for(const std::string& symbol) const {
    return status_.checked && status_.pass && status_.symbol == symbol;
  }

 private:
  friend double qstar_min_eig(Translation& t, const SymbolMap& symbol, const QstarSampling& sampling);

  std::string id_;
  int ell_;
  Matrix t_;
  double norm_ = 0.0;
  QstarStatus status_;
};

/// Worst λ_min(B(k)† T B(k)) over sampled k, with B(k) an orthonormal basis of
/// (E_k)^ℓ. Records the result in t.status(). Sampling can only falsify
/// Q*-convexity, never prove it.
double qstar_min_eig(Translation& t, const SymbolMap& symbol, const QstarSampling& sampling = {});

Translation zero_translation(std::size_t dim);
/// ℓ = 2 on a 2-component space: Q(E₁, E₂) = 2 Re(E₁ · R⊥ E₂), R⊥ the 90° rotation.
Translation rotation2d_translation();
/// ℓ = 1 on a 2-component space: T = ±iR⊥.
Translation hall2d_translation(int sign);
/// Built-in by name: "zero", "rotation2d", "hall2d+", "hall2d-".
Translation builtin_translation(const std::string& id, std::size_t dim);

/// CSV rows "row,col,re,im" (0-based, optional header). Missing entries are 0;
/// size is the largest index + 1 and must be a multiple of `dim`.
Translation load_translation_csv(std::istream& in, const std::string& id, std::size_t dim);
Translation load_translation_csv(const std::filesystem::path& path, std::size_t dim);

}  // namespace sgate
