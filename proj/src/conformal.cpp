#include "hardy/conformal.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "hardy/bounds.hpp"
#include "hardy/error.hpp"

namespace hardy::conformal {

using namespace geometry;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr CPoint kI{0.0, 1.0};

std::string fmt(CPoint z) {
  std::ostringstream os;
  os.precision(17);
  os << "(" << z.real() << ", " << z.imag() << ")";
  return os.str();
}

void check_cutdisk_theta(double theta) {
  if (!(theta >= 0.0 && theta < kPi)) fail(ErrorCode::InvalidParameters, "theta must lie in [0, pi)");
}

bool on_negative_axis(CPoint w) { return w.imag() == 0.0 && w.real() <= 0.0; }

CPoint root_argument(CPoint zeta, double theta) {
  const CPoint w = zeta + std::polar(1.0, theta);
  if (on_negative_axis(w)) fail(ErrorCode::BranchCutHit, "zeta + e^{i theta} = " + fmt(w) + " lies on the branch cut");
  return w;
}

bool in_cutdisk_exterior(CPoint z, double a, double theta) {
  const CPoint q = z + std::polar(a, theta);
  return std::abs(q) > a && !(q.imag() == 0.0 && q.real() < 0.0);
}

PlacedDomain placed(DomainSpec d) { return d; }

CPoint mobius(CPoint z) { return (1.0 + z) / (1.0 - z); }
CPoint mobius_deriv(CPoint z) { return 2.0 / ((1.0 - z) * (1.0 - z)); }

double bump_grad_sq(CPoint w, const Bump& u) {
  const double r = std::abs(w - u.center);
  const double rho2 = u.radius * u.radius;
  if (r >= u.radius) return 0.0;
  const double q = 1 - r * r / rho2;
  const double du = -8 * r / rho2 * q * q * q;
  return du * du;
}

CPoint source_anchor(const DomainSpec& source) {
  if (const auto* d = std::get_if<Disk>(&source)) return d->center;
  return {1.0, 0.0};
}

CPoint solve_preimage(const TestMap& f, CPoint c) {
  CPoint z = source_anchor(f.source);
  for (int it = 0; it < 200; ++it) {
    const CPoint F = f.eval(z) - c;
    if (std::abs(F) <= 1e-15 * std::max(1.0, std::abs(c))) return z;
    const CPoint dz = F / f.deriv(z);
    double step = 1.0;
    for (int k = 0; k < 60; ++k, step *= 0.5) {
      const CPoint trial = z - step * dz;
      if (contains(f.source, trial) && std::abs(f.eval(trial) - c) < std::abs(F)) break;
    }
    const CPoint next = z - step * dz;
    if (next == z) return z;
    z = next;
  }
  const CPoint F = f.eval(z) - c;
  if (std::abs(F) > 1e-10 * std::max(1.0, std::abs(c))) fail(ErrorCode::NoConvergence, "preimage of the bump centre not found");
  return z;
}

// Radius along direction u from z0 where |f - c| reaches rho.
double exit_radius(const TestMap& f, CPoint z0, CPoint u, const Bump& bump, double t_guess) {
  auto phi = [&](double t) { return std::abs(f.eval(z0 + t * u) - bump.center) - bump.radius; };
  double lo = 0.0;
  double hi = t_guess;
  for (int k = 0; phi(hi) <= 0.0; ++k) {
    if (!contains(f.source, z0 + hi * u)) fail(ErrorCode::SupportNotContained, "bump support leaves the map's image");
    if (k > 200) fail(ErrorCode::NoConvergence, "bump preimage is unbounded along a ray");
    lo = hi;
    hi *= 1.5;
  }
  if (!contains(f.source, z0 + hi * u)) {
    // Pull back inside the source while keeping the sign change.
    while (!contains(f.source, z0 + hi * u)) hi = 0.5 * (lo + hi);
    if (phi(hi) <= 0.0) fail(ErrorCode::SupportNotContained, "bump support leaves the map's image");
  }
  for (int it = 0; it < 200 && hi - lo > 1e-16 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (phi(mid) > 0.0 ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

double polar_energy(const TestMap& f, CPoint z0, const Bump& bump, const QuadratureGrid& grid) {
  using GL = boost::math::quadrature::gauss<double, 30>;
  const auto& x = GL::abscissa();
  const auto& w = GL::weights();
  const double t_guess = 0.5 * bump.radius / std::abs(f.deriv(z0));
  double total = 0.0;
  for (std::size_t j = 0; j < grid.n_angle; ++j) {
    const CPoint u = std::polar(1.0, 2 * kPi * static_cast<double>(j) / static_cast<double>(grid.n_angle));
    const double tmax = exit_radius(f, z0, u, bump, t_guess);
    double ray = 0.0;
    for (std::size_t p = 0; p < grid.n_radial_panels; ++p) {
      const double a = tmax * static_cast<double>(p) / static_cast<double>(grid.n_radial_panels);
      const double b = tmax * static_cast<double>(p + 1) / static_cast<double>(grid.n_radial_panels);
      const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
      auto integrand = [&](double t) {
        const CPoint z = z0 + t * u;
        return bump_grad_sq(f.eval(z), bump) * std::norm(f.deriv(z)) * t;
      };
      for (std::size_t k = 0; k < x.size(); ++k) {
        const double wk = (k == 0 && x[0] == 0.0) ? w[0] : w[k];
        if (k == 0 && x[0] == 0.0) {
          ray += half * wk * integrand(mid);
        } else {
          ray += half * wk * (integrand(mid + half * x[k]) + integrand(mid - half * x[k]));
        }
      }
    }
    total += ray;
  }
  return total * 2 * kPi / static_cast<double>(grid.n_angle);
}

}  // namespace

// ---------------------------------------------------------------------------

CPoint sector_map(CPoint z, double theta) {
  if (!(theta > 0.0 && theta <= kPi)) fail(ErrorCode::InvalidParameters, "sector theta must lie in (0, pi]");
  if (z == CPoint{} || !(std::abs(std::arg(z)) < theta)) fail(ErrorCode::DomainViolation, fmt(z) + " is not in the sector");
  if (theta == kPi) return z;
  return std::pow(z, kPi / theta);
}

CPoint sector_log_deriv(CPoint z, double theta) {
  if (!(theta > 0.0 && theta <= kPi)) fail(ErrorCode::InvalidParameters, "sector theta must lie in (0, pi]");
  if (z == CPoint{}) fail(ErrorCode::ZeroArgument, "log-derivative at 0");
  return (kPi / theta) / z;
}

CPoint cutdisk_h(CPoint zeta, double theta) {
  check_cutdisk_theta(theta);
  if (zeta == CPoint{}) return {};
  const CPoint s = std::sqrt(root_argument(zeta, theta));
  const double b = std::sin(theta / 2);
  return s - 1.0 / s - 2.0 * kI * b;
}

CPoint cutdisk_psi(CPoint zeta, double theta) {
  check_cutdisk_theta(theta);
  const CPoint s = std::sqrt(root_argument(zeta, theta));
  const double b = std::sin(theta / 2);
  // e^{i theta} - 1 = 2ib e^{i theta/2} removes the cancellation near zeta = 0.
  return zeta * (1.0 - 2.0 * kI * b / (s + std::polar(1.0, theta / 2)));
}

CPoint cutdisk_psi_deriv(CPoint zeta, double theta) {
  check_cutdisk_theta(theta);
  const CPoint s = std::sqrt(root_argument(zeta, theta));
  return 1.0 - kI * std::sin(theta / 2) / s;
}

CPoint cutdisk_map(CPoint z, double a, double theta) {
  check_cutdisk_theta(theta);
  if (!(a > 0.0)) fail(ErrorCode::InvalidParameters, "a must be > 0");
  if (z == CPoint{}) return {};
  if (!in_cutdisk_exterior(z, a, theta)) fail(ErrorCode::DomainViolation, fmt(z) + " is not in D_{a,theta}");
  const CPoint zeta = z / a;
  const CPoint psi = cutdisk_psi(zeta, theta);
  return psi * psi / root_argument(zeta, theta);
}

CPoint cutdisk_log_deriv(CPoint z, double a, double theta) {
  check_cutdisk_theta(theta);
  if (!(a > 0.0)) fail(ErrorCode::InvalidParameters, "a must be > 0");
  if (z == CPoint{}) fail(ErrorCode::ZeroArgument, "log-derivative at 0");
  if (!in_cutdisk_exterior(z, a, theta)) fail(ErrorCode::DomainViolation, fmt(z) + " is not in D_{a,theta}");
  const CPoint zeta = z / a;
  return 2.0 * cutdisk_psi_deriv(zeta, theta) / (a * cutdisk_psi(zeta, theta)) - 1.0 / (z + std::polar(a, theta));
}

CPoint cutdisk_map_inverse_sqrt(CPoint H, double a, double theta) {
  check_cutdisk_theta(theta);
  const CPoint K = H + 2.0 * kI * std::sin(theta / 2);
  const CPoint disc = std::sqrt(K * K + 4.0);
  CPoint s = 0.5 * (K + disc);
  const CPoint other = 0.5 * (K - disc);  // s * other = -1
  if (other.real() > s.real()) s = other;
  return a * (s * s - std::polar(1.0, theta));
}

Remainders gamma_remainders(CPoint zeta, double theta) {
  if (!(std::abs(zeta) <= 0.5)) fail(ErrorCode::OutOfRange, "remainders need |zeta| <= 1/2");
  Remainders r;
  if (zeta == CPoint{}) {
    r.gamma1_ok = r.gamma2_ok = true;
    return r;
  }
  const CPoint rot = std::polar(1.0, -theta);
  const CPoint u = zeta * rot;
  const CPoint s = std::sqrt(1.0 + u);
  // sqrt(1+u) - 1 - u/2 = -u^2 / (2 (s+1)^2) and 1/s - 1 = -u / (s (s+1)).
  r.gamma1 = -u * rot / (2.0 * (s + 1.0) * (s + 1.0));
  r.gamma2 = -u / (s * (s + 1.0));
  const double m = std::abs(zeta);
  r.gamma1_ok = std::abs(r.gamma1) <= std::pow(2.0, -1.5) * m + 1e-12;
  r.gamma2_ok = std::abs(r.gamma2) <= std::numbers::sqrt2 * m + 1e-12;
  return r;
}

LogDerivReport verify_log_derivative_bound(double a, double theta, double R, std::size_t n) {
  if (n < 1) fail(ErrorCode::InvalidParameters, "need at least one sample");
  const double beta = bounds::beta_cutdisk(theta, R, a);  // throws OutOfRange on R
  LogDerivReport rep;
  rep.theta = theta;
  rep.a = a;
  rep.R = R;
  rep.beta = beta;
  rep.min_margin = std::numeric_limits<double>::infinity();
  const auto n_r = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n))));
  const auto n_ang = (n + n_r - 1) / n_r;
  for (std::size_t i = 0; i < n_r; ++i) {
    const double rho = R * static_cast<double>(i + 1) / static_cast<double>(n_r);
    // z = rho e^{i alpha} lies outside the removed disk iff cos(alpha - theta) > -rho/(2a).
    const double half = std::acos(-rho / (2 * a));
    for (std::size_t j = 0; j < n_ang; ++j) {
      const double alpha = theta - half + 2 * half * (static_cast<double>(j) + 0.5) / static_cast<double>(n_ang);
      const CPoint z = std::polar(rho, alpha);
      if (!in_cutdisk_exterior(z, a, theta)) continue;
      const double margin = std::abs(cutdisk_log_deriv(z, a, theta)) * rho - beta;
      ++rep.n_samples;
      if (margin < rep.min_margin) {
        rep.min_margin = margin;
        rep.worst_z = z;
      }
    }
  }
  rep.passed = rep.n_samples > 0 && rep.min_margin >= -1e-10;
  return rep;
}

// ---------------------------------------------------------------------------

TestMap identity_map() {
  return {"identity", Disk{{0, 0}, 1}, [](CPoint z) { return z; }, [](CPoint) { return CPoint{1, 0}; }, placed(Disk{{0, 0}, 1})};
}

TestMap koebe_map() {
  return {"koebe", Disk{{0, 0}, 1}, [](CPoint z) { return z / ((1.0 - z) * (1.0 - z)); },
          [](CPoint z) { return (1.0 + z) / ((1.0 - z) * (1.0 - z) * (1.0 - z)); },
          PlacedDomain{CutPlane{}, Placement{{-0.25, 0}, 0.0}}};
}

TestMap mobius_halfplane_map() { return {"mobius", Disk{{0, 0}, 1}, mobius, mobius_deriv, placed(HalfPlane{})}; }

TestMap disk_to_sector_map(double theta) {
  if (!(theta > 0.0 && theta <= kPi)) fail(ErrorCode::InvalidParameters, "sector theta must lie in (0, pi]");
  const double p = 2 * theta / kPi;
  return {"sector", Disk{{0, 0}, 1}, [p](CPoint z) { return std::pow(mobius(z), p); },
          [p](CPoint z) { return p * std::pow(mobius(z), p - 1) * mobius_deriv(z); }, placed(Sector{theta})};
}

TestMap disk_to_cutdisk_map(double a, double theta) {
  check_cutdisk_theta(theta);
  if (!(a > 0.0)) fail(ErrorCode::InvalidParameters, "a must be > 0");
  // g maps D_{a,theta} onto the slit plane and sqrt(g) onto the half-plane, so
  // f = g^{-1}(mobius^2) covers D_{a,theta}.
  auto s_of = [a, theta](CPoint z) { return std::sqrt(cutdisk_map_inverse_sqrt(mobius(z), a, theta) / a + std::polar(1.0, theta)); };
  return {"cutdisk", Disk{{0, 0}, 1}, [a, theta](CPoint z) { return cutdisk_map_inverse_sqrt(mobius(z), a, theta); },
          [a, s_of](CPoint z) {
            const CPoint s = s_of(z);
            return 2.0 * a * mobius_deriv(z) * s * s * s / (s * s + 1.0);
          },
          placed(CutDiskExterior{a, theta})};
}

TestMap halfplane_identity_map() {
  return {"halfplane-identity", HalfPlane{}, [](CPoint z) { return z; }, [](CPoint) { return CPoint{1, 0}; }, placed(HalfPlane{})};
}

TestMap halfplane_power_map(double alpha) {
  if (!(alpha > 0.0 && alpha <= 2.0)) fail(ErrorCode::InvalidParameters, "power must lie in (0, 2]");
  return {"halfplane-power", HalfPlane{}, [alpha](CPoint z) { return std::pow(z, alpha); },
          [alpha](CPoint z) { return alpha * std::pow(z, alpha - 1); }, placed(Sector{alpha * kPi / 2})};
}

TestMap quarter_square_map() {
  return {"quarter-square", Sector{kPi / 4}, [](CPoint z) { return z * z; }, [](CPoint z) { return 2.0 * z; }, placed(HalfPlane{})};
}

std::vector<TestMap> disk_map_library() {
  return {identity_map(), koebe_map(), mobius_halfplane_map(), disk_to_sector_map(3 * kPi / 4), disk_to_cutdisk_map(1.0, kPi / 4)};
}

std::optional<TestMap> find_map(const std::string& name, double a, std::optional<double> theta) {
  if (name == "identity") return identity_map();
  if (name == "koebe") return koebe_map();
  if (name == "mobius") return mobius_halfplane_map();
  if (name == "sector") return disk_to_sector_map(theta.value_or(3 * kPi / 4));
  if (name == "cutdisk") return disk_to_cutdisk_map(a, theta.value_or(kPi / 4));
  if (name == "halfplane-identity") return halfplane_identity_map();
  if (name == "halfplane-power") return halfplane_power_map(2 * theta.value_or(3 * kPi / 4) / kPi);
  if (name == "quarter-square") return quarter_square_map();
  return std::nullopt;
}

TestMap post_compose(const TestMap& f, const Placement& pl) {
  TestMap g = f;
  g.eval = [inner = f.eval, pl](CPoint z) { return pl.apply(inner(z)); };
  g.deriv = [inner = f.deriv, rot = std::polar(1.0, pl.phi)](CPoint z) { return rot * inner(z); };
  g.image.placement = Placement{pl.apply(f.image.placement.w), normalize_angle(pl.phi + f.image.placement.phi)};
  return g;
}

KoebeResult koebe_check(const TestMap& f, double r) {
  const auto* disk = std::get_if<Disk>(&f.source);
  if (!disk || disk->center != CPoint{} || disk->radius != 1.0) fail(ErrorCode::InvalidParameters, "koebe_check needs a map on the unit disk");
  const double d = std::abs(f.deriv({0, 0}));
  if (d < 1e-300) fail(ErrorCode::DegenerateDerivative, "|f'(0)| vanishes");
  KoebeResult res;
  res.ratio = boundary_distance(f.image, f.eval({0, 0})) / d;
  res.passed = res.ratio >= r - 1e-10;
  return res;
}

TransportResult halfplane_transport_check(const TestMap& f, CPoint z, double r) {
  if (!std::holds_alternative<HalfPlane>(f.source)) fail(ErrorCode::InvalidParameters, "transport check needs a map on the half-plane");
  if (!(z.real() > 0.0)) fail(ErrorCode::DomainViolation, "Re z must be > 0");
  const double x = z.real();
  TransportResult res;
  const CPoint fz = f.eval(z);
  const CPoint dfz = f.deriv(z);
  res.lhs = boundary_distance(f.image, fz);
  res.rhs = 2 * r * x * std::abs(dfz);

  // h(w) = (conj(z) w + z)/(1 - w) maps the disk onto the half-plane with h(0) = z.
  auto h = [z](CPoint w) { return (std::conj(z) * w + z) / (1.0 - w); };
  res.moebius_centre_error = std::abs(h({0, 0}) - z);
  const double eps = 1e-4 * std::min(1.0, x);
  const CPoint fd = (f.eval(h({eps, 0})) - f.eval(h({-eps, 0}))) / (2 * eps);
  const CPoint exact = 2.0 * x * dfz;
  res.chain_rel_error = std::abs(fd - exact) / std::abs(exact);
  res.passed = res.lhs >= res.rhs - 1e-10 && res.moebius_centre_error <= 1e-12 * std::abs(z) && res.chain_rel_error <= 1e-6;
  return res;
}

double bump_dirichlet_energy() { return 8 * kPi / 7; }

DirichletResult dirichlet_invariance_check(const TestMap& f, const Bump& u, const QuadratureGrid& grid) {
  if (!(u.radius > 0.0)) fail(ErrorCode::InvalidParameters, "bump radius must be > 0");
  if (grid.n_angle < 4 || grid.n_radial_panels < 1) fail(ErrorCode::InvalidParameters, "quadrature grid too coarse");
  if (!contains(f.image, u.center) || boundary_distance(f.image, u.center) <= u.radius) {
    fail(ErrorCode::SupportNotContained, "bump support is not inside the image");
  }
  const TestMap image_identity{"identity", f.image.shape, [](CPoint w) { return w; }, [](CPoint) { return CPoint{1, 0}; }, f.image};
  DirichletResult res;
  res.rhs = polar_energy(image_identity, u.center, u, grid);
  res.lhs = polar_energy(f, solve_preimage(f, u.center), u, grid);
  res.rel_err = std::abs(res.lhs - res.rhs) / std::abs(res.rhs);
  return res;
}

}  // namespace hardy::conformal
