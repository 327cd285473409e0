#pragma once

// Planar domains described analytically: membership, distance to the
// boundary, in-radius enclosures and boundary sampling.

#include <complex>
#include <cstddef>
#include <optional>
#include <variant>
#include <vector>

namespace hardy::geometry {

using CPoint = std::complex<double>;

/// Points within this distance of the boundary are classified as outside.
inline constexpr double kBoundaryEps = 1e-12;

/// Simple polygon, stored counter-clockwise. Build through make_polygon().
struct Polygon {
  std::vector<CPoint> vertices;
};

/// K_theta = {z : |arg z| < theta}, theta in [0, pi].
struct Sector {
  double theta = 0.0;
};

/// The slit plane C \ (-inf, 0]. Same set as Sector{pi}.
struct CutPlane {};

/// Exterior of the disk of radius a centred at -a e^{i theta}, with the
/// horizontal cut running left from its leftmost point. Origin is a
/// boundary point. theta in [0, pi).
struct CutDiskExterior {
  double a = 1.0;
  double theta = 0.0;
};

/// {rho < |z| < rho + delta, |arg z| < psi, Re z > rho cos psi}, psi in (0, pi).
struct Horseshoe {
  double rho = 1.0;
  double delta = 0.1;
  double psi = 1.0;
};

struct Disk {
  CPoint center{0.0, 0.0};
  double radius = 1.0;
};

/// {Re z > 0}.
struct HalfPlane {};

using DomainSpec = std::variant<Polygon, Sector, CutPlane, CutDiskExterior, Horseshoe, Disk, HalfPlane>;

/// Rigid motion z -> e^{i phi} z + w; phi kept in (-pi, pi].
struct Placement {
  CPoint w{0.0, 0.0};
  double phi = 0.0;

  CPoint apply(CPoint z) const;
  CPoint inverse(CPoint z) const;
};

/// A domain moved by a placement and a dilation: {w + e^{i phi} s z : z in shape}.
struct PlacedDomain {
  DomainSpec shape;
  Placement placement{};
  double scale = 1.0;

  PlacedDomain() = default;
  PlacedDomain(DomainSpec d) : shape(std::move(d)) {}  // NOLINT(google-explicit-constructor)
  PlacedDomain(DomainSpec d, Placement p, double s = 1.0) : shape(std::move(d)), placement(p), scale(s) {}

  CPoint to_local(CPoint z) const;
  CPoint to_world(CPoint z) const;
};

struct IntervalEstimate {
  double lower = 0.0;
  double upper = 0.0;

  bool contains(double v) const { return lower <= v && v <= upper; }
};

struct BoundingBox {
  CPoint lo;
  CPoint hi;

  double width() const { return hi.real() - lo.real(); }
  double height() const { return hi.imag() - lo.imag(); }
};

// ---------------------------------------------------------------------------
// Boundary pieces. Every piece is oriented with the domain on its left, so the
// inward normal at a point is i times the direction of travel.

struct Segment {
  CPoint a;
  CPoint b;
};

/// Half-line origin + t dir, t >= 0. `incoming` means the boundary is
/// traversed from infinity towards the origin.
struct Ray {
  CPoint origin;
  CPoint dir;  // unit
  bool incoming = false;
};

/// Circular arc c + r e^{it}, t from `start` to `start + sweep`; negative sweep is clockwise.
struct Arc {
  CPoint center;
  double radius;
  double start;
  double sweep;

  CPoint at(double t) const { return center + std::polar(radius, t); }
};

using BoundaryPiece = std::variant<Segment, Ray, Arc>;

std::vector<BoundaryPiece> boundary_pieces(const DomainSpec& d);

double distance_to_piece(const BoundaryPiece& piece, CPoint p);

/// Inward normal angle of `piece` at a point known to lie on it.
double inward_normal_angle(const BoundaryPiece& piece, CPoint on_piece);

// ---------------------------------------------------------------------------

/// Validates a vertex list and returns it counter-clockwise.
Polygon make_polygon(std::vector<CPoint> vertices);

/// Throws Error(InvalidParameters) when d breaks its invariants.
void validate(const DomainSpec& d);

double normalize_angle(double phi);

bool is_bounded(const DomainSpec& d);

/// Convex by construction (disk, half-plane, sector with theta <= pi/2, convex polygon).
bool is_convex(const DomainSpec& d);

/// Tight box for bounded domains; nullopt when unbounded.
std::optional<BoundingBox> bounding_box(const DomainSpec& d);

double polygon_signed_area(const std::vector<CPoint>& vertices);

bool contains(const DomainSpec& d, CPoint p);
bool contains(const PlacedDomain& d, CPoint p);

bool transform_contains(const DomainSpec& d, const Placement& pl, CPoint p);

/// Distance from p to the boundary of d, without membership checks.
double distance_to_boundary(const DomainSpec& d, CPoint p);

/// delta(p) = inf over the complement; throws PointOutsideDomain unless contains(d, p).
double boundary_distance(const DomainSpec& d, CPoint p);
double boundary_distance(const PlacedDomain& d, CPoint p);

/// Certified enclosure of sup delta from a grid of spacing s over region
/// (defaults to the bounding box). Any point of the region is within
/// s*sqrt(2)/2 of a node and delta is 1-Lipschitz.
IntervalEstimate in_radius(const DomainSpec& d, std::optional<BoundingBox> region, double s);

/// n points on the boundary, spaced by arc length. Polygons always contribute
/// every vertex. Rays of unbounded domains are truncated at `extent`.
std::vector<CPoint> sample_boundary(const DomainSpec& d, std::size_t n, double extent = 4.0);

/// A boundary point together with the inward normals of the pieces through it
/// (two at corners, one on smooth parts).
struct BoundarySample {
  CPoint point;
  std::vector<double> normal_angles;
};

/// Nested boundary sample: corner and symmetry features first, then
/// van der Corput positions along the (truncated) boundary. The first n
/// entries of a larger request coincide with a smaller request.
std::vector<BoundarySample> nested_boundary_samples(const DomainSpec& d, std::size_t n, double extent = 4.0);

/// Deterministic cell-centred grid of roughly n interior points (truncated to
/// radius `extent` around the origin for unbounded domains).
std::vector<CPoint> interior_samples(const DomainSpec& d, std::size_t n, double extent = 4.0);

DomainSpec scaled(const DomainSpec& d, double c);

/// Rigid motion of representable variants (Polygon, Disk); throws otherwise.
DomainSpec moved(const DomainSpec& d, const Placement& pl);

}  // namespace hardy::geometry
