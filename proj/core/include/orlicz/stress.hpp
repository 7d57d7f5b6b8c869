#pragma once

#include <optional>
#include <string>

#include "orlicz/young.hpp"

namespace orlicz {

enum class StressKind { power, eyring, potential };

// Constitutive laws S(xi) = sigma(|xi|) xi / |xi| for symmetric 2 x 2 tensors.
class StressLaw {
 public:
  // nu0 (kappa0 + |xi|)^(p-2) xi
  static StressLaw power(double nu0, double kappa0, double p);
  // nu0 arsinh(lambda0 |xi|) / (lambda0 |xi|) xi
  static StressLaw eyring(double nu0, double lambda0);
  // Phi'(|xi|) / |xi| xi
  static StressLaw potential(YoungFunction phi);

  StressKind kind() const { return kind_; }
  double density() const { return rho_; }
  void set_density(double rho);
  std::string name() const;

  // |S| at |xi| = t
  double modulus(double t) const;
  // xi, S row-major; xi must be symmetric
  void eval(const double xi[4], double S[4]) const;

 private:
  StressKind kind_ = StressKind::power;
  double nu0_ = 1.0, kappa0_ = 0.0, p_ = 2.0, lambda0_ = 1.0, rho_ = 1.0;
  std::optional<YoungFunction> phi_;
};

// "power:nu:kappa:p" or "eyring:nu:lambda"
StressLaw parse_stress_law(const std::string& s);

}  // namespace orlicz
