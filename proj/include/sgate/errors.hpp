#pragma once

#include <stdexcept>
#include <string>

namespace sgate {

enum class ErrorKind {
  Dimension,
  Symbol,
  Preset,
  Layout,
  Certificate,
  SpectrumHit,
  CapExceeded,
  Singular,
  Translation,
  Config,
  Io,
  NonConvergence,
};

const char* to_string(ErrorKind kind);

/// Base of every error thrown by the library. `module()` names the component
/// that raised it so the CLI can surface provenance.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string module, const std::string& message)
      : std::runtime_error(message), kind_(kind), module_(std::move(module)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& module() const noexcept { return module_; }

 private:
  ErrorKind kind_;
  std::string module_;
};

/// Raised when Γ₁LΓ₁ is singular on the E-space; the parameter point lies in
/// the generalized spectrum of the discrete model.
class SpectrumHitError : public Error {
 public:
  SpectrumHitError(double sigma_min, double sigma_max)
      : Error(ErrorKind::SpectrumHit, "greens-solver",
              "generalized spectrum hit: smallest singular value " + std::to_string(sigma_min)),
        sigma_min_(sigma_min),
        sigma_max_(sigma_max) {}

  double sigma_min() const noexcept { return sigma_min_; }
  double sigma_max() const noexcept { return sigma_max_; }

 private:
  double sigma_min_;
  double sigma_max_;
};

}  // namespace sgate
