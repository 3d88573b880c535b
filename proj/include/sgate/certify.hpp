#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sgate/pencil.hpp"
#include "sgate/translation.hpp"

namespace sgate {

struct CertifierConfig {
  int theta_samples = 720;
  /// Golden-section refinement of θ around the best grid value.
  bool refine_theta = true;
  /// t is searched on [0, t_max_factor·β/‖T‖].
  double t_max_factor = 10.0;
};

/// Best certificate over θ, plain coercivity and the library's translations,
/// maximizing α/β. nullopt means no certificate was found, which is not a
/// spectrum claim. Every translation must be Q*-verified for `symbol_name`.
std::optional<CoercivityCertificate> certify_coercivity(const OperatorField& l,
                                                        const std::vector<Translation>& library,
                                                        const std::string& symbol_name,
                                                        const CertifierConfig& config = {});

/// Same search on the distinct matrices of L.
std::optional<CoercivityCertificate> certify_matrices(const std::vector<Matrix>& mats,
                                                      const std::vector<Translation>& library,
                                                      const std::string& symbol_name,
                                                      const CertifierConfig& config = {});

/// Maximizes t ↦ translated_alpha over [0, t_max]; returns (t, α).
std::pair<double, double> optimize_t(const std::vector<Matrix>& mats, double theta, const Translation& tr,
                                     double t_max);

}  // namespace sgate
