#pragma once

#include <stdexcept>
#include <string>

namespace kzldt {

/// Parameter lies outside the regime the library supports
/// (e.g. long-range exponent alpha < 2, polylog argument x > 1).
class unsupported_regime_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A gapless point was hit exactly: the Bogoliubov rotation and the
/// mode eigenbasis are ill-defined there.
class degenerate_point_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Adaptive ODE integration failed; carries the mode and time at failure.
class integration_error : public std::runtime_error {
 public:
  integration_error(const std::string& what, double k, double t)
      : std::runtime_error(what + " (k=" + std::to_string(k) +
                           ", t=" + std::to_string(t) + ")"),
        k_(k),
        t_(t) {}

  double mode() const noexcept { return k_; }
  double time() const noexcept { return t_; }

 private:
  double k_;
  double t_;
};

/// Adaptive quadrature did not reach the requested tolerance.
class quadrature_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Request exceeds a hard resource cap (e.g. exact diagonalization N > 12).
class resource_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace kzldt
