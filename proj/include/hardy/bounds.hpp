#pragma once

// Closed-form Hardy constants and the log-derivative to Koebe-radius engine.

#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "hardy/conditions.hpp"

namespace hardy::bounds {

/// Sharp value for the plane minus a half-line (regression target only).
inline constexpr double kCutPlaneSharpRSquared = 0.20538;
/// Sectors K_theta keep the sharp r = 1/2 up to this opening (reference only).
inline constexpr double kSectorSharpHalfUpTo = 2.428;

enum class Method { cone, cutdisk, ancona, convex };

std::string_view to_string(Method m);
std::optional<Method> method_from_string(std::string_view s);

struct BoundInputs {
  std::optional<double> theta;
  std::optional<double> a;
  std::optional<double> theta0;
  std::optional<double> delta_in;
};

struct BoundCertificate {
  Method method = Method::ancona;
  double r = 0.0;
  double r_squared = 0.0;
  BoundInputs inputs;
  bool preconditions_ok = false;
  std::string notes;
};

/// pi/(4 theta) for theta in [pi/2, pi]; OutOfRange otherwise.
double r_cone(double theta);

/// R0(a) = a / (2(sqrt2 |tan(theta/2)| + 1)).
double cutdisk_R0(double a, double theta);

/// 1/2 [1 - 4(sqrt2 |tan(theta0/2)| + 1) delta_in / a], requires 2 delta_in <= R0(a);
/// throws PreconditionError carrying (2 delta_in, R0) otherwise.
double r_cutdisk(double a, double theta0, double delta_in);

/// 2[1 - 2(sqrt2 |tan(theta/2)| + 1) R / a] for 0 < R < R0.
double beta_cutdisk(double theta, double R, double a);

struct BetaProfile {
  double M = 0.0;
  double R0 = std::numeric_limits<double>::infinity();
  std::function<double(double)> beta;
};

BetaProfile sector_profile(double theta);
BetaProfile cutdisk_profile(double a, double theta);

/// Finite R0: beta(M delta_in)/4 under M delta_in < R0. Infinite R0: inf of
/// beta/4 on a geometric grid (64 points per decade, 6 decades).
double koebe_radius_from_beta(const BetaProfile& profile, std::optional<double> delta_in);

/// Infimum over boundary points, one profile per point.
double koebe_radius_from_beta(std::span<const BetaProfile> per_point, std::optional<double> delta_in);

struct CutDiskInput {
  conditions::CutDiskReport report;
  double delta_in = 0.0;
};

/// Largest applicable constant. The 1/4 floor applies whenever the cone
/// condition holds with some theta <= pi; convex short-circuits to 1/2.
BoundCertificate best_bound(const std::optional<conditions::ConeReport>& cone, const std::optional<CutDiskInput>& cutdisk,
                            bool convex);

}  // namespace hardy::bounds
