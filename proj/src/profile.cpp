#include "crib/profile.hpp"

#include <cmath>

#include "crib/errors.hpp"

namespace crib {

std::string to_string(ProfileKind kind) {
  switch (kind) {
    case ProfileKind::Gaussian: return "gaussian";
    case ProfileKind::Lorentzian: return "lorentzian";
    case ProfileKind::Uniform: return "uniform";
    case ProfileKind::LinearGradient: return "linearGradient";
  }
  return "gaussian";
}

ProfileKind profileKindFromString(const std::string& name) {
  if (name == "gaussian") return ProfileKind::Gaussian;
  if (name == "lorentzian") return ProfileKind::Lorentzian;
  if (name == "uniform") return ProfileKind::Uniform;
  if (name == "linearGradient") return ProfileKind::LinearGradient;
  throw ConfigError("unknown profile kind '" + name + "'");
}

namespace {

Real componentDensity(const ProfileComponent& comp, Real delta) {
  Real u = delta - comp.center;
  switch (comp.kind) {
    case ProfileKind::Gaussian:
      return std::exp(-u * u / (2.0 * comp.width * comp.width)) /
             (comp.width * std::sqrt(2.0 * kPi));
    case ProfileKind::Lorentzian:
      return comp.width / (kPi * (u * u + comp.width * comp.width));
    case ProfileKind::Uniform:
      return std::abs(u) <= comp.width ? 0.5 / comp.width : 0.0;
    case ProfileKind::LinearGradient:
      return 0.0;
  }
  return 0.0;
}

void checkComponents(const std::vector<ProfileComponent>& components) {
  if (components.empty()) throw ConfigError("profile needs at least one component");
  for (const auto& comp : components) {
    if (comp.kind == ProfileKind::LinearGradient)
      throw ConfigError("linearGradient cannot be a spectral component");
    if (!(comp.width > 0.0)) throw ConfigError("profile width must be > 0");
    if (!(comp.weight > 0.0)) throw ConfigError("component weight must be > 0");
  }
}

}  // namespace

Real DetuningProfile::baseDensity(Real delta) const {
  Real g = 0.0;
  for (const auto& comp : components) g += comp.weight * componentDensity(comp, delta);
  return g;
}

Real DetuningProfile::density(Real delta) const {
  if (sign == 0) return baseDensity(delta);  // removed: all atoms at line center
  return baseDensity(sign * delta);
}

Real DetuningProfile::gradientDetuning(Real z, Real mediumLength) const {
  return sign * slope * (z - 0.5 * mediumLength);
}

DetuningProfile makeProfile(ProfileKind kind, Real widthOrSlope, int sign) {
  if (sign != +1 && sign != -1)
    throw ConfigError("profile sign must be +1 or -1");
  DetuningProfile profile;
  profile.kind = kind;
  profile.sign = sign;
  if (kind == ProfileKind::LinearGradient) {
    if (!(widthOrSlope > 0.0)) throw ConfigError("gradient slope must be > 0");
    profile.slope = widthOrSlope;
    return profile;
  }
  if (!(widthOrSlope > 0.0)) throw ConfigError("profile width must be > 0");
  profile.components = {ProfileComponent{kind, widthOrSlope, 0.0, 1.0}};
  return profile;
}

DetuningProfile makeProfile(std::vector<ProfileComponent> components, int sign) {
  if (sign != +1 && sign != -1)
    throw ConfigError("profile sign must be +1 or -1");
  checkComponents(components);
  Real total = 0.0;
  for (const auto& comp : components) total += comp.weight;
  for (auto& comp : components) comp.weight /= total;
  DetuningProfile profile;
  profile.kind = components.front().kind;
  profile.components = std::move(components);
  profile.sign = sign;
  return profile;
}

DetuningProfile flip(const DetuningProfile& profile) {
  if (profile.sign == 0)
    throw ConfigError("cannot flip a removed (sign = 0) profile");
  DetuningProfile flipped = profile;
  flipped.sign = -profile.sign;
  return flipped;
}

RemoveReestablishResult removeThenReestablish(const DetuningProfile& profile,
                                              int newSign) {
  if (newSign != +1 && newSign != -1)
    throw ConfigError("reestablish sign must be +1 or -1");
  RemoveReestablishResult result;
  result.removed = profile;
  result.removed.sign = 0;
  result.reestablished = profile;
  result.reestablished.sign = newSign;
  return result;
}

}  // namespace crib
