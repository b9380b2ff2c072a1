#pragma once

#include <optional>
#include <string>
#include <vector>

#include "crib/types.hpp"

namespace crib {

enum class ProfileKind { Gaussian, Lorentzian, Uniform, LinearGradient };

std::string to_string(ProfileKind kind);
ProfileKind profileKindFromString(const std::string& name);

/// One spectral line. `width` is the standard deviation for Gaussian,
/// HWHM for Lorentzian, and the half-width for Uniform. `weight` is the
/// relative integrated weight of the line within a multi-line profile.
struct ProfileComponent {
  ProfileKind kind = ProfileKind::Gaussian;
  Real width = 1.0;
  Real center = 0.0;
  Real weight = 1.0;

  bool operator==(const ProfileComponent&) const = default;
};

/// Inhomogeneous detuning distribution under CRIB control. Spectral kinds
/// carry one or more line components; LinearGradient assigns one detuning
/// per position, delta(z) = sign * slope * (z - L/2).
struct DetuningProfile {
  ProfileKind kind = ProfileKind::Gaussian;
  std::vector<ProfileComponent> components;  // spectral kinds only
  Real slope = 0.0;                          // LinearGradient only
  int sign = +1;                             // +1, -1, or 0 = removed
  Real maxBroadeningBound = 0.0;             // 0 = no hyperfine bound configured

  bool isGradient() const { return kind == ProfileKind::LinearGradient; }

  /// Normalized spectral density of the as-built (sign = +1) profile.
  Real baseDensity(Real delta) const;

  /// Density of the profile in its current sign state (sign * delta mirror).
  Real density(Real delta) const;

  /// Gradient detuning at position z for medium length L (current sign).
  Real gradientDetuning(Real z, Real mediumLength) const;

  bool operator==(const DetuningProfile&) const = default;
};

DetuningProfile makeProfile(ProfileKind kind, Real widthOrSlope, int sign);
DetuningProfile makeProfile(std::vector<ProfileComponent> components, int sign);

/// Sign inversion of every detuning; exact involution. Throws on sign == 0.
DetuningProfile flip(const DetuningProfile& profile);

struct RemoveReestablishResult {
  DetuningProfile removed;        // intermediate sign = 0 state
  DetuningProfile reestablished;  // same shape, requested sign
};

/// Two-step transition: broadening switched off (frozen dephasing), then
/// restored with `newSign`. Throws unless newSign is +1 or -1.
RemoveReestablishResult removeThenReestablish(const DetuningProfile& profile,
                                              int newSign);

struct BandMask {
  Eigen::Array<bool, Eigen::Dynamic, 1> selected;
  bool empty = false;  // no node fell in the band; explicit warning, not an error

  bool allSelected() const { return selected.all(); }
  Eigen::Index count() const { return selected.count(); }
};

}  // namespace crib
