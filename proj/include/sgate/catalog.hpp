#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "sgate/operator_field.hpp"
#include "sgate/projection.hpp"

namespace sgate {

/// Named physical moduli of one phase. All values are dimensionless and may be
/// complex (e.g. a complex frequency).
using Moduli = std::map<std::string, cplx>;

struct PhysicsPreset {
  std::string name;
  int d = 0;
  TensorShape shape;
  SymbolMap symbol;
  /// Every accepted key with its default value.
  Moduli defaults;
  /// Receives a complete moduli set.
  std::function<Matrix(const Moduli&)> builder;

  /// L_i for the given moduli; keys not listed override defaults, unknown
  /// keys are rejected.
  Matrix phase_matrix(const Moduli& moduli = {}) const;
};

const std::vector<std::string>& preset_names();
/// The dimension used when a caller does not pick one (2 except maxwell).
int default_dimension(const std::string& name);
/// `parameters` replace the preset's default moduli (same key rules).
PhysicsPreset build_preset(const std::string& name, int d, const Moduli& parameters = {});

/// Partition of the grid into phases; phase ids are 0-based.
class PhaseLayout {
 public:
  PhaseLayout(Grid grid, int phases, std::vector<int> ids);

  /// Validates that the 0/1 indicators sum to one at every point.
  static PhaseLayout from_indicators(const Grid& grid, const std::vector<std::vector<double>>& chi);
  static PhaseLayout uniform(const Grid& grid, int phases = 1, int phase = 0);
  /// Phase 1 fills the first round(fraction·N) slabs along `axis`, phase 0 the rest.
  static PhaseLayout laminate(const Grid& grid, int axis, double fraction);
  /// Alternating phases on a `cells`^d board.
  static PhaseLayout checkerboard(const Grid& grid, int cells = 2);
  /// Phase 1 inside a centred ball of the given radius (in cell-length units).
  static PhaseLayout disk(const Grid& grid, double radius);
  /// Lines "i,j[,k],phase"; every grid point exactly once. A non-numeric first
  /// line is treated as a header.
  static PhaseLayout voxel_csv(const Grid& grid, std::istream& in);
  static PhaseLayout voxel_csv(const Grid& grid, const std::filesystem::path& path);

  const Grid& grid() const noexcept { return grid_; }
  int phases() const noexcept { return phases_; }
  const std::vector<int>& ids() const noexcept { return *ids_; }
  const std::shared_ptr<const std::vector<int>>& shared_ids() const noexcept { return ids_; }
  std::vector<double> indicator(int phase) const;
  std::vector<std::size_t> counts() const;

 private:
  Grid grid_;
  int phases_;
  std::shared_ptr<const std::vector<int>> ids_;
};

/// L(x) = Σ χ_i(x) L_i from one moduli set per phase.
OperatorField assemble_multiphase_L(const PhysicsPreset& preset, const PhaseLayout& layout,
                                    const std::vector<Moduli>& phase_moduli);
/// Same from explicit phase matrices.
OperatorField assemble_multiphase_L(const TensorShape& shape, const PhaseLayout& layout,
                                    const std::vector<Matrix>& phase_mats);

/// max |(J, E)| / (‖J‖‖E‖) over random E = Γ₁P, J = Γ₂Q.
double check_key_identity(const PhysicsPreset& preset, const Grid& grid, int trials, std::uint64_t seed);

}  // namespace sgate
