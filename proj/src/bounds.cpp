#include "hardy/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "hardy/error.hpp"

namespace hardy::bounds {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrt2 = std::numbers::sqrt2;

void check_theta(double theta) {
  if (!(theta >= 0.0 && theta < kPi)) fail(ErrorCode::InvalidParameters, "theta must lie in [0, pi)");
}

void check_a(double a) {
  if (!(a > 0.0 && std::isfinite(a))) fail(ErrorCode::InvalidParameters, "a must be > 0");
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

std::string_view to_string(Method m) {
  switch (m) {
    case Method::cone: return "cone";
    case Method::cutdisk: return "cutdisk";
    case Method::ancona: return "ancona";
    case Method::convex: return "convex";
  }
  return "unknown";
}

std::optional<Method> method_from_string(std::string_view s) {
  for (Method m : {Method::cone, Method::cutdisk, Method::ancona, Method::convex}) {
    if (to_string(m) == s) return m;
  }
  return std::nullopt;
}

double r_cone(double theta) {
  if (!(theta >= kPi / 2 && theta <= kPi)) fail(ErrorCode::OutOfRange, "cone constant needs theta in [pi/2, pi], got " + fmt(theta));
  return kPi / (4 * theta);
}

double cutdisk_R0(double a, double theta) {
  check_a(a);
  check_theta(theta);
  return a / (2 * (kSqrt2 * std::abs(std::tan(theta / 2)) + 1));
}

double r_cutdisk(double a, double theta0, double delta_in) {
  const double R0 = cutdisk_R0(a, theta0);
  if (!(delta_in > 0.0 && std::isfinite(delta_in))) fail(ErrorCode::InvalidParameters, "delta_in must be > 0");
  if (!(2 * delta_in <= R0)) {
    throw PreconditionError("2 delta_in = " + fmt(2 * delta_in) + " exceeds R0(a) = " + fmt(R0), 2 * delta_in, R0);
  }
  return 0.5 * (1 - 4 * (kSqrt2 * std::abs(std::tan(theta0 / 2)) + 1) * delta_in / a);
}

double beta_cutdisk(double theta, double R, double a) {
  const double R0 = cutdisk_R0(a, theta);
  if (!(R > 0.0 && R < R0)) fail(ErrorCode::OutOfRange, "R = " + fmt(R) + " outside (0, R0 = " + fmt(R0) + ")");
  return 2 * (1 - 2 * (kSqrt2 * std::abs(std::tan(theta / 2)) + 1) * R / a);
}

BetaProfile sector_profile(double theta) {
  if (!(theta > 0.0 && theta <= kPi)) fail(ErrorCode::InvalidParameters, "sector theta must lie in (0, pi]");
  const double alpha = kPi / theta;
  return {alpha, std::numeric_limits<double>::infinity(), [alpha](double) { return alpha; }};
}

BetaProfile cutdisk_profile(double a, double theta) {
  const double R0 = cutdisk_R0(a, theta);
  return {2.0, R0, [a, theta](double R) { return beta_cutdisk(theta, R, a); }};
}

double koebe_radius_from_beta(const BetaProfile& profile, std::optional<double> delta_in) {
  if (!profile.beta) fail(ErrorCode::InvalidParameters, "profile has no beta function");
  if (std::isfinite(profile.R0)) {
    if (!delta_in || !(*delta_in > 0.0)) fail(ErrorCode::InvalidParameters, "finite R0 needs delta_in > 0");
    const double R = profile.M * *delta_in;
    if (!(R < profile.R0)) throw PreconditionError("M delta_in = " + fmt(R) + " is not below R0 = " + fmt(profile.R0), R, profile.R0);
    return profile.beta(R) / 4;
  }
  // Grid centred on delta_in when given (beta is scale-free for the shipped profiles).
  const double centre = delta_in.value_or(1.0);
  double best = std::numeric_limits<double>::infinity();
  constexpr int kPerDecade = 64;
  for (int k = -3 * kPerDecade; k <= 3 * kPerDecade; ++k) {
    const double R = centre * std::pow(10.0, static_cast<double>(k) / kPerDecade);
    best = std::min(best, profile.beta(R) / 4);
  }
  return best;
}

double koebe_radius_from_beta(std::span<const BetaProfile> per_point, std::optional<double> delta_in) {
  if (per_point.empty()) fail(ErrorCode::InvalidParameters, "no profiles");
  double best = std::numeric_limits<double>::infinity();
  for (const auto& p : per_point) best = std::min(best, koebe_radius_from_beta(p, delta_in));
  return best;
}

BoundCertificate best_bound(const std::optional<conditions::ConeReport>& cone, const std::optional<CutDiskInput>& cutdisk,
                            bool convex) {
  auto make = [](Method m, double r, BoundInputs in, std::string notes) {
    return BoundCertificate{m, r, r * r, in, true, std::move(notes)};
  };
  if (convex) return make(Method::convex, 0.5, {}, "convex domain");

  std::vector<BoundCertificate> candidates;
  std::vector<std::string> notes;
  if (cone) {
    if (cone->full_circle) {
      notes.push_back("cone condition fails: some boundary point sees the full circle");
    } else {
      const double theta = std::clamp(cone->theta_sup, kPi / 2, kPi);
      candidates.push_back(make(Method::cone, r_cone(theta), {theta, {}, {}, {}}, "cone theta_sup = " + fmt(cone->theta_sup)));
      candidates.push_back(make(Method::ancona, 0.25, {}, "floor for domains with an exterior cone of opening <= pi"));
    }
  }
  std::optional<PreconditionError> precondition;
  if (cutdisk) {
    const auto& rep = cutdisk->report;
    if (!rep.feasible) {
      notes.push_back("cut-disk placement not found at this resolution");
    } else {
      try {
        const double r = r_cutdisk(rep.a, rep.theta0, cutdisk->delta_in);
        candidates.push_back(make(Method::cutdisk, r, {{}, rep.a, rep.theta0, cutdisk->delta_in}, "cut-disk condition holds"));
      } catch (const PreconditionError& e) {
        precondition = e;
        notes.push_back(e.what());
      }
    }
  }
  if (candidates.empty()) {
    if (precondition) throw *precondition;
    fail(ErrorCode::NoApplicableBound, "no bound applies");
  }
  // Ties keep the first candidate, so cone wins over the floor it matches.
  auto best = candidates.front();
  for (const auto& c : candidates) {
    if (c.r > best.r) best = c;
  }
  for (const auto& n : notes) best.notes += "; " + n;
  return best;
}

}  // namespace hardy::bounds
