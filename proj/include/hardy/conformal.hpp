#pragma once

// Explicit conformal maps onto the slit plane and the numerical checks of the
// Koebe-type estimates built on them.

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hardy/geometry.hpp"

namespace hardy::conformal {

using geometry::CPoint;
using geometry::DomainSpec;
using geometry::PlacedDomain;

// ---------------------------------------------------------------------------
// Sector family: g(z) = z^alpha, alpha = pi/theta.

CPoint sector_map(CPoint z, double theta);
CPoint sector_log_deriv(CPoint z, double theta);

// ---------------------------------------------------------------------------
// Cut-disk family. zeta = z/a, s = sqrt(zeta + e^{i theta}), b = sin(theta/2),
// h = s - 1/s - 2ib = psi/s, g(z) = h(z/a)^2.

CPoint cutdisk_h(CPoint zeta, double theta);
CPoint cutdisk_psi(CPoint zeta, double theta);
CPoint cutdisk_psi_deriv(CPoint zeta, double theta);
CPoint cutdisk_map(CPoint z, double a, double theta);
CPoint cutdisk_log_deriv(CPoint z, double a, double theta);

/// Inverse of the cut-disk map restricted to the right half-plane branch:
/// returns z with sqrt(g(z)) = H, Re H > 0.
CPoint cutdisk_map_inverse_sqrt(CPoint H, double a, double theta);

/// sqrt(1 + zeta e^{-i theta}) = 1 + zeta e^{-i theta}/2 + zeta gamma1,
/// 1/sqrt(1 + zeta e^{-i theta}) = 1 + gamma2.
struct Remainders {
  CPoint gamma1;
  CPoint gamma2;
  bool gamma1_ok = false;  // |gamma1| <= 2^{-3/2}|zeta| + 1e-12
  bool gamma2_ok = false;  // |gamma2| <= sqrt2 |zeta| + 1e-12
};

Remainders gamma_remainders(CPoint zeta, double theta);

struct LogDerivReport {
  double theta = 0.0;
  double a = 0.0;
  double R = 0.0;
  double beta = 0.0;
  std::size_t n_samples = 0;
  double min_margin = 0.0;
  CPoint worst_z;
  bool passed = false;
};

/// Checks |g'/g| |z| >= beta_theta(R) on a stratified sample of
/// D_{a,theta} intersected with {0 < |z| <= R}.
LogDerivReport verify_log_derivative_bound(double a, double theta, double R, std::size_t n);

// ---------------------------------------------------------------------------
// Test maps.

struct TestMap {
  std::string name;
  DomainSpec source;  // Disk(0,1), HalfPlane, or a sector
  std::function<CPoint(CPoint)> eval;
  std::function<CPoint(CPoint)> deriv;
  PlacedDomain image;
};

TestMap identity_map();
TestMap koebe_map();
TestMap mobius_halfplane_map();
TestMap disk_to_sector_map(double theta);
TestMap disk_to_cutdisk_map(double a, double theta);

TestMap halfplane_identity_map();
/// z^alpha on the right half-plane, onto K_{alpha pi/2}; alpha in (0, 2].
TestMap halfplane_power_map(double alpha);
/// z^2 from K_{pi/4} onto the right half-plane.
TestMap quarter_square_map();

/// Shipped maps with the unit disk as source.
std::vector<TestMap> disk_map_library();

/// Looks up a shipped map by name ("identity", "koebe", "mobius", "sector",
/// "cutdisk", "halfplane-identity", "halfplane-power", "quarter-square").
/// `a` and `theta` parametrise the sector and cut-disk maps.
std::optional<TestMap> find_map(const std::string& name, double a = 1.0, std::optional<double> theta = std::nullopt);

/// e^{i phi} f + w, with the image moved accordingly.
TestMap post_compose(const TestMap& f, const geometry::Placement& pl);

struct KoebeResult {
  double ratio = 0.0;
  bool passed = false;
};

/// ratio = delta(f(0)) / |f'(0)| against r.
KoebeResult koebe_check(const TestMap& f, double r);

struct TransportResult {
  double lhs = 0.0;
  double rhs = 0.0;
  double moebius_centre_error = 0.0;  // |h(0) - z|
  double chain_rel_error = 0.0;       // (f o h)'(0) vs 2 Re(z) f'(z), finite differences
  bool passed = false;
};

/// delta(f(z)) >= 2 r Re(z) |f'(z)| for f on the right half-plane.
TransportResult halfplane_transport_check(const TestMap& f, CPoint z, double r);

/// u = (1 - |w - c|^2/rho^2)^4 on the disk |w - c| < rho.
struct Bump {
  CPoint center;
  double radius = 0.5;
};

/// Polar quadrature around the bump centre (or its preimage): trapezoid in
/// angle, 30-point Gauss-Legendre panels in radius.
struct QuadratureGrid {
  std::size_t n_angle = 256;
  std::size_t n_radial_panels = 2;
};

struct DirichletResult {
  double lhs = 0.0;  // over the source, integrand |grad(u o f)|^2
  double rhs = 0.0;  // over the image
  double rel_err = 0.0;
};

DirichletResult dirichlet_invariance_check(const TestMap& f, const Bump& u, const QuadratureGrid& grid = {});

/// Exact Dirichlet energy of the bump (independent of centre and radius): 8 pi / 7.
double bump_dirichlet_energy();

}  // namespace hardy::conformal
