#include "orlicz/stress.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace orlicz {

StressLaw StressLaw::power(double nu0, double kappa0, double p) {
  if (!(nu0 > 0.0) || !(kappa0 >= 0.0) || !(p > 1.0) || !std::isfinite(p))
    throw std::invalid_argument("StressLaw::power: need nu0 > 0, kappa0 >= 0, 1 < p < inf");
  StressLaw s;
  s.kind_ = StressKind::power;
  s.nu0_ = nu0;
  s.kappa0_ = kappa0;
  s.p_ = p;
  return s;
}

StressLaw StressLaw::eyring(double nu0, double lambda0) {
  if (!(nu0 > 0.0) || !(lambda0 > 0.0)) throw std::invalid_argument("StressLaw::eyring: need nu0, lambda0 > 0");
  StressLaw s;
  s.kind_ = StressKind::eyring;
  s.nu0_ = nu0;
  s.lambda0_ = lambda0;
  return s;
}

StressLaw StressLaw::potential(YoungFunction phi) {
  StressLaw s;
  s.kind_ = StressKind::potential;
  s.phi_ = std::move(phi);
  return s;
}

void StressLaw::set_density(double rho) {
  if (!(rho > 0.0)) throw std::invalid_argument("StressLaw: density must be positive");
  rho_ = rho;
}

std::string StressLaw::name() const {
  std::ostringstream o;
  o.precision(17);
  switch (kind_) {
    case StressKind::power: o << "power:" << nu0_ << ":" << kappa0_ << ":" << p_; break;
    case StressKind::eyring: o << "eyring:" << nu0_ << ":" << lambda0_; break;
    case StressKind::potential: o << "potential:" << phi_->name(); break;
  }
  return o.str();
}

double StressLaw::modulus(double t) const {
  if (!(t >= 0.0)) throw std::domain_error("StressLaw::modulus: negative argument");
  if (t == 0.0) return 0.0;
  switch (kind_) {
    case StressKind::power: return nu0_ * std::pow(kappa0_ + t, p_ - 2.0) * t;
    case StressKind::eyring: return nu0_ * std::asinh(lambda0_ * t) / lambda0_;
    case StressKind::potential: return phi_->density(t);
  }
  return 0.0;
}

void StressLaw::eval(const double xi[4], double S[4]) const {
  const double n = std::sqrt(xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2] + xi[3] * xi[3]);
  if (std::abs(xi[1] - xi[2]) > 1e-12 * (1.0 + n)) throw std::invalid_argument("StressLaw::eval: xi is not symmetric");
  if (n == 0.0) {
    S[0] = S[1] = S[2] = S[3] = 0.0;
    return;
  }
  double f = 0.0;
  if (kind_ == StressKind::eyring) {
    const double x = lambda0_ * n;
    f = nu0_ * (x < 1e-4 ? 1.0 - x * x / 6.0 : std::asinh(x) / x);
  } else {
    f = modulus(n) / n;
  }
  for (int i = 0; i < 4; ++i) S[i] = f * xi[i];
}

StressLaw parse_stress_law(const std::string& s) {
  std::vector<std::string> tok;
  std::stringstream ss(s);
  for (std::string t; std::getline(ss, t, ':');) tok.push_back(t);
  auto num = [&](std::size_t i) {
    std::size_t used = 0;
    const double v = std::stod(tok.at(i), &used);
    if (used != tok[i].size()) throw std::invalid_argument("bad number '" + tok[i] + "'");
    return v;
  };
  try {
    if (!tok.empty() && tok[0] == "power" && tok.size() == 4) return StressLaw::power(num(1), num(2), num(3));
    if (!tok.empty() && tok[0] == "eyring" && tok.size() == 3) return StressLaw::eyring(num(1), num(2));
  } catch (const std::logic_error& e) {
    throw std::invalid_argument("stress law '" + s + "': " + e.what());
  }
  throw std::invalid_argument("stress law '" + s + "': expected power:nu:kappa:p or eyring:nu:lambda");
}

}  // namespace orlicz
