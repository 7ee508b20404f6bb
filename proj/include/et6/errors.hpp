#pragma once

#include <stdexcept>
#include <string>

namespace et6 {

/// Which edge of the dynamic-pressure window a state fell outside of.
enum class WindowBound { kLower, kUpper };

inline const char* to_string(WindowBound b) {
  return b == WindowBound::kLower ? "lower" : "upper";
}

/// A non-positive density, temperature, or internal energy.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Conserved variables that cannot be turned back into a physical state.
class ReconstructionError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Pi/p outside (-1, (D-3)/3). Carries the violated bound and the signed
/// margin to it (negative means outside).
class InadmissibleState : public DomainError {
 public:
  InadmissibleState(WindowBound bound, double margin, const std::string& what)
      : DomainError(what), bound_(bound), margin_(margin) {}

  WindowBound bound() const noexcept { return bound_; }
  double margin() const noexcept { return margin_; }

  /// The MEP multiplier that loses positivity at this bound.
  const char* multiplier() const noexcept {
    return bound_ == WindowBound::kLower ? "xi" : "zeta";
  }

 private:
  WindowBound bound_;
  double margin_;
};

/// Overflow guard tripped while evaluating multipliers close to the window
/// boundary.
class RangeError : public std::range_error {
 public:
  using std::range_error::range_error;
};

/// Quadrature disagreement or non-convergence inside the kinetic oracle.
class OracleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace et6
