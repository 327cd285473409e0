#include "hardy/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "hardy/error.hpp"
#include "hardy/parallel.hpp"

namespace hardy::geometry {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double cross(CPoint a, CPoint b) { return a.real() * b.imag() - a.imag() * b.real(); }
double dot(CPoint a, CPoint b) { return a.real() * b.real() + a.imag() * b.imag(); }
bool finite(CPoint p) { return std::isfinite(p.real()) && std::isfinite(p.imag()); }

double point_segment_distance(CPoint p, CPoint a, CPoint b) {
  const CPoint ab = b - a;
  const double len2 = std::norm(ab);
  if (len2 == 0.0) return std::abs(p - a);
  const double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
  return std::abs(p - (a + t * ab));
}

// Orientation sign of (a, b, c) with a relative tolerance.
int orient(CPoint a, CPoint b, CPoint c) {
  const double v = cross(b - a, c - a);
  const double scale = std::abs(b - a) * std::abs(c - a);
  if (std::abs(v) <= 1e-14 * scale) return 0;
  return v > 0 ? 1 : -1;
}

bool on_segment(CPoint p, CPoint a, CPoint b) {
  return std::min(a.real(), b.real()) <= p.real() && p.real() <= std::max(a.real(), b.real()) &&
         std::min(a.imag(), b.imag()) <= p.imag() && p.imag() <= std::max(a.imag(), b.imag());
}

bool segments_intersect(CPoint p1, CPoint p2, CPoint q1, CPoint q2) {
  const int o1 = orient(p1, p2, q1);
  const int o2 = orient(p1, p2, q2);
  const int o3 = orient(q1, q2, p1);
  const int o4 = orient(q1, q2, p2);
  if (o1 != o2 && o3 != o4 && o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0) return true;
  if (o1 == 0 && on_segment(q1, p1, p2)) return true;
  if (o2 == 0 && on_segment(q2, p1, p2)) return true;
  if (o3 == 0 && on_segment(p1, q1, q2)) return true;
  if (o4 == 0 && on_segment(p2, q1, q2)) return true;
  return (o1 != o2) && (o3 != o4) && o1 * o2 < 0 && o3 * o4 < 0;
}

// Angular span [lo, lo + len] of an arc, len >= 0.
void arc_span(const Arc& arc, double& lo, double& len) {
  len = std::abs(arc.sweep);
  lo = arc.sweep >= 0 ? arc.start : arc.start + arc.sweep;
}

bool angle_in_span(double angle, double lo, double len) {
  if (len >= kTwoPi) return true;
  double d = std::fmod(angle - lo, kTwoPi);
  if (d < 0) d += kTwoPi;
  return d <= len;
}

double horseshoe_end_angle(const Horseshoe& h) {
  if (h.psi <= kPi / 2) return h.psi;
  return std::acos(h.rho * std::cos(h.psi) / (h.rho + h.delta));
}

bool polygon_raw_contains(const Polygon& poly, CPoint p) {
  const auto& v = poly.vertices;
  bool inside = false;
  for (std::size_t i = 0, j = v.size() - 1; i < v.size(); j = i++) {
    const CPoint a = v[i];
    const CPoint b = v[j];
    if ((a.imag() > p.imag()) != (b.imag() > p.imag())) {
      const double x = a.real() + (p.imag() - a.imag()) * (b.real() - a.real()) / (b.imag() - a.imag());
      if (p.real() < x) inside = !inside;
    }
  }
  return inside;
}

bool raw_contains(const DomainSpec& d, CPoint p) {
  return std::visit(
      overloaded{
          [&](const Polygon& poly) { return polygon_raw_contains(poly, p); },
          [&](const Sector& s) { return p != CPoint{} && std::abs(std::arg(p)) < s.theta; },
          [&](const CutPlane&) { return !(p.imag() == 0.0 && p.real() <= 0.0); },
          [&](const CutDiskExterior& c) {
            const CPoint q = p + std::polar(c.a, c.theta);
            return std::abs(q) > c.a && !(q.imag() == 0.0 && q.real() < 0.0);
          },
          [&](const Horseshoe& h) {
            const double r = std::abs(p);
            return r > h.rho && r < h.rho + h.delta && std::abs(std::arg(p)) < h.psi &&
                   p.real() > h.rho * std::cos(h.psi);
          },
          [&](const Disk& disk) { return std::abs(p - disk.center) < disk.radius; },
          [&](const HalfPlane&) { return p.real() > 0.0; },
      },
      d);
}

void extend(BoundingBox& box, CPoint p) {
  box.lo = {std::min(box.lo.real(), p.real()), std::min(box.lo.imag(), p.imag())};
  box.hi = {std::max(box.hi.real(), p.real()), std::max(box.hi.imag(), p.imag())};
}

// Finite version of the boundary: rays cut at `extent`.
std::vector<BoundaryPiece> finite_pieces(const DomainSpec& d, double extent) {
  std::vector<BoundaryPiece> out;
  for (const auto& piece : boundary_pieces(d)) {
    if (const auto* ray = std::get_if<Ray>(&piece)) {
      const CPoint far = ray->origin + extent * ray->dir;
      if (ray->incoming) {
        out.emplace_back(Segment{far, ray->origin});
      } else {
        out.emplace_back(Segment{ray->origin, far});
      }
    } else {
      out.push_back(piece);
    }
  }
  return out;
}

double piece_length(const BoundaryPiece& piece) {
  if (const auto* s = std::get_if<Segment>(&piece)) return std::abs(s->b - s->a);
  const auto& arc = std::get<Arc>(piece);
  return arc.radius * std::abs(arc.sweep);
}

CPoint piece_point(const BoundaryPiece& piece, double u) {  // u in [0, 1]
  if (const auto* s = std::get_if<Segment>(&piece)) return s->a + u * (s->b - s->a);
  const auto& arc = std::get<Arc>(piece);
  return arc.at(arc.start + u * arc.sweep);
}

CPoint point_at_arclength(const std::vector<BoundaryPiece>& pieces, const std::vector<double>& lengths,
                          double t) {
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    if (t <= lengths[i] || i + 1 == pieces.size()) {
      const double u = lengths[i] > 0 ? std::clamp(t / lengths[i], 0.0, 1.0) : 0.0;
      return piece_point(pieces[i], u);
    }
    t -= lengths[i];
  }
  return {};
}

double radical_inverse_base2(std::size_t k) {
  double result = 0.0;
  double f = 0.5;
  while (k > 0) {
    if (k & 1u) result += f;
    k >>= 1u;
    f *= 0.5;
  }
  return result;
}

double domain_scale(const DomainSpec& d) {
  if (auto box = bounding_box(d)) return std::max({1.0, std::abs(box->lo), std::abs(box->hi)});
  return 1.0;
}

}  // namespace

// ---------------------------------------------------------------------------

double normalize_angle(double phi) {
  double r = std::remainder(phi, kTwoPi);  // [-pi, pi]
  if (r <= -kPi) r += kTwoPi;
  return r;
}

CPoint Placement::apply(CPoint z) const { return std::polar(1.0, phi) * z + w; }
CPoint Placement::inverse(CPoint z) const { return std::polar(1.0, -phi) * (z - w); }

CPoint PlacedDomain::to_local(CPoint z) const { return placement.inverse(z) / scale; }
CPoint PlacedDomain::to_world(CPoint z) const { return placement.apply(scale * z); }

double polygon_signed_area(const std::vector<CPoint>& v) {
  double a = 0.0;
  for (std::size_t i = 0, j = v.size() - 1; i < v.size(); j = i++) a += cross(v[j], v[i]);
  return 0.5 * a;
}

Polygon make_polygon(std::vector<CPoint> vertices) {
  if (vertices.size() < 3) fail(ErrorCode::InvalidParameters, "polygon needs at least 3 vertices");
  for (const auto& p : vertices) {
    if (!finite(p)) fail(ErrorCode::InvalidParameters, "polygon vertex is not finite");
  }
  const std::size_t n = vertices.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (vertices[i] == vertices[(i + 1) % n]) fail(ErrorCode::InvalidParameters, "repeated polygon vertex");
  }
  const double area = polygon_signed_area(vertices);
  if (!(std::abs(area) > 0.0)) fail(ErrorCode::InvalidParameters, "polygon has zero area");
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
      const CPoint a1 = vertices[i], a2 = vertices[(i + 1) % n];
      const CPoint b1 = vertices[j], b2 = vertices[(j + 1) % n];
      if (adjacent) {
        // Adjacent edges share one vertex; they must not fold back onto each other.
        const CPoint shared = (j == i + 1) ? a2 : a1;
        const CPoint u = (j == i + 1) ? a1 : a2;
        const CPoint v = (j == i + 1) ? b2 : b1;
        if (orient(shared, u, v) == 0 && dot(u - shared, v - shared) > 0) {
          fail(ErrorCode::InvalidParameters, "polygon edges overlap at vertex " + std::to_string(j));
        }
        continue;
      }
      if (segments_intersect(a1, a2, b1, b2)) {
        fail(ErrorCode::InvalidParameters,
             "polygon is not simple: edges " + std::to_string(i) + " and " + std::to_string(j) + " intersect");
      }
    }
  }
  if (area < 0) std::reverse(vertices.begin(), vertices.end());
  return Polygon{std::move(vertices)};
}

void validate(const DomainSpec& d) {
  std::visit(overloaded{
                 [](const Polygon& p) {
                   Polygon copy = make_polygon(p.vertices);
                   if (copy.vertices != p.vertices) {
                     fail(ErrorCode::InvalidParameters, "polygon must be counter-clockwise");
                   }
                 },
                 [](const Sector& s) {
                   if (!(s.theta >= 0.0 && s.theta <= kPi)) fail(ErrorCode::InvalidParameters, "sector theta not in [0, pi]");
                 },
                 [](const CutPlane&) {},
                 [](const CutDiskExterior& c) {
                   if (!(c.a > 0.0 && std::isfinite(c.a))) fail(ErrorCode::InvalidParameters, "cut disk radius must be > 0");
                   if (!(c.theta >= 0.0 && c.theta < kPi)) fail(ErrorCode::InvalidParameters, "cut disk theta not in [0, pi)");
                 },
                 [](const Horseshoe& h) {
                   if (!(h.rho > 0.0 && std::isfinite(h.rho))) fail(ErrorCode::InvalidParameters, "horseshoe rho must be > 0");
                   if (!(h.delta > 0.0 && std::isfinite(h.delta))) fail(ErrorCode::InvalidParameters, "horseshoe delta must be > 0");
                   if (!(h.psi > 0.0 && h.psi < kPi)) fail(ErrorCode::InvalidParameters, "horseshoe psi not in (0, pi)");
                 },
                 [](const Disk& disk) {
                   if (!finite(disk.center)) fail(ErrorCode::InvalidParameters, "disk center not finite");
                   if (!(disk.radius > 0.0 && std::isfinite(disk.radius))) fail(ErrorCode::InvalidParameters, "disk radius must be > 0");
                 },
                 [](const HalfPlane&) {},
             },
             d);
}

bool is_bounded(const DomainSpec& d) {
  return std::holds_alternative<Polygon>(d) || std::holds_alternative<Horseshoe>(d) ||
         std::holds_alternative<Disk>(d);
}

bool is_convex(const DomainSpec& d) {
  return std::visit(overloaded{
                        [](const Polygon& p) {
                          const auto& v = p.vertices;
                          const std::size_t n = v.size();
                          for (std::size_t i = 0; i < n; ++i) {
                            if (orient(v[i], v[(i + 1) % n], v[(i + 2) % n]) < 0) return false;
                          }
                          return true;
                        },
                        [](const Sector& s) { return s.theta <= kPi / 2; },
                        [](const Disk&) { return true; },
                        [](const HalfPlane&) { return true; },
                        [](const auto&) { return false; },
                    },
                    d);
}

std::vector<BoundaryPiece> boundary_pieces(const DomainSpec& d) {
  std::vector<BoundaryPiece> out;
  std::visit(overloaded{
                 [&](const Polygon& p) {
                   const auto& v = p.vertices;
                   for (std::size_t i = 0; i < v.size(); ++i) out.emplace_back(Segment{v[i], v[(i + 1) % v.size()]});
                 },
                 [&](const Sector& s) {
                   out.emplace_back(Ray{{}, std::polar(1.0, s.theta), true});
                   out.emplace_back(Ray{{}, std::polar(1.0, -s.theta), false});
                 },
                 [&](const CutPlane&) {
                   out.emplace_back(Ray{{}, {-1.0, 0.0}, true});
                   out.emplace_back(Ray{{}, {-1.0, 0.0}, false});
                 },
                 [&](const CutDiskExterior& c) {
                   const CPoint center = -std::polar(c.a, c.theta);
                   const CPoint tip = center - c.a;
                   out.emplace_back(Ray{tip, {-1.0, 0.0}, true});
                   out.emplace_back(Arc{center, c.a, kPi, -kTwoPi});
                   out.emplace_back(Ray{tip, {-1.0, 0.0}, false});
                 },
                 [&](const Horseshoe& h) {
                   const double end = horseshoe_end_angle(h);
                   const double outer = h.rho + h.delta;
                   out.emplace_back(Arc{{}, outer, -end, 2 * end});
                   out.emplace_back(Segment{std::polar(outer, end), std::polar(h.rho, h.psi)});
                   out.emplace_back(Arc{{}, h.rho, h.psi, -2 * h.psi});
                   out.emplace_back(Segment{std::polar(h.rho, -h.psi), std::polar(outer, -end)});
                 },
                 [&](const Disk& disk) { out.emplace_back(Arc{disk.center, disk.radius, 0.0, kTwoPi}); },
                 [&](const HalfPlane&) {
                   out.emplace_back(Ray{{}, {0.0, 1.0}, true});
                   out.emplace_back(Ray{{}, {0.0, -1.0}, false});
                 },
             },
             d);
  return out;
}

double distance_to_piece(const BoundaryPiece& piece, CPoint p) {
  return std::visit(overloaded{
                        [&](const Segment& s) { return point_segment_distance(p, s.a, s.b); },
                        [&](const Ray& r) {
                          const double t = std::max(0.0, dot(p - r.origin, r.dir));
                          return std::abs(p - (r.origin + t * r.dir));
                        },
                        [&](const Arc& arc) {
                          const CPoint rel = p - arc.center;
                          const double rho = std::abs(rel);
                          double lo = 0, len = 0;
                          arc_span(arc, lo, len);
                          if (rho == 0.0) return arc.radius;
                          if (angle_in_span(std::arg(rel), lo, len)) return std::abs(rho - arc.radius);
                          return std::min(std::abs(p - arc.at(lo)), std::abs(p - arc.at(lo + len)));
                        },
                    },
                    piece);
}

double inward_normal_angle(const BoundaryPiece& piece, CPoint on_piece) {
  const CPoint i{0.0, 1.0};
  return std::visit(overloaded{
                        [&](const Segment& s) { return std::arg(i * (s.b - s.a)); },
                        [&](const Ray& r) { return std::arg(i * (r.incoming ? -r.dir : r.dir)); },
                        [&](const Arc& arc) {
                          const double t = std::arg(on_piece - arc.center);
                          const double sign = arc.sweep >= 0 ? 1.0 : -1.0;
                          return std::arg(-sign * std::polar(1.0, t));
                        },
                    },
                    piece);
}

std::optional<BoundingBox> bounding_box(const DomainSpec& d) {
  if (!is_bounded(d)) return std::nullopt;
  const double inf = std::numeric_limits<double>::infinity();
  BoundingBox box{{inf, inf}, {-inf, -inf}};
  for (const auto& piece : boundary_pieces(d)) {
    if (const auto* s = std::get_if<Segment>(&piece)) {
      extend(box, s->a);
      extend(box, s->b);
    } else if (const auto* arc = std::get_if<Arc>(&piece)) {
      double lo = 0, len = 0;
      arc_span(*arc, lo, len);
      extend(box, arc->at(lo));
      extend(box, arc->at(lo + len));
      for (int k = -4; k <= 4; ++k) {
        const double t = k * kPi / 2;
        if (angle_in_span(t, lo, len)) extend(box, arc->at(t));
      }
    }
  }
  return box;
}

bool contains(const DomainSpec& d, CPoint p) {
  if (!finite(p) || !raw_contains(d, p)) return false;
  return distance_to_boundary(d, p) > kBoundaryEps;
}

bool contains(const PlacedDomain& d, CPoint p) { return contains(d.shape, d.to_local(p)); }

bool transform_contains(const DomainSpec& d, const Placement& pl, CPoint p) { return contains(d, pl.inverse(p)); }

double distance_to_boundary(const DomainSpec& d, CPoint p) {
  if (const auto* hp = std::get_if<HalfPlane>(&d)) {
    (void)hp;
    return std::abs(p.real());
  }
  if (const auto* disk = std::get_if<Disk>(&d)) return std::abs(std::abs(p - disk->center) - disk->radius);
  double best = std::numeric_limits<double>::infinity();
  for (const auto& piece : boundary_pieces(d)) best = std::min(best, distance_to_piece(piece, p));
  return best;
}

double boundary_distance(const DomainSpec& d, CPoint p) {
  if (!contains(d, p)) {
    fail(ErrorCode::PointOutsideDomain,
         "point (" + std::to_string(p.real()) + ", " + std::to_string(p.imag()) + ") is not inside the domain");
  }
  return distance_to_boundary(d, p);
}

double boundary_distance(const PlacedDomain& d, CPoint p) { return d.scale * boundary_distance(d.shape, d.to_local(p)); }

IntervalEstimate in_radius(const DomainSpec& d, std::optional<BoundingBox> region, double s) {
  if (!(s > 0.0 && std::isfinite(s))) fail(ErrorCode::InvalidParameters, "grid spacing must be > 0");
  if (!region) {
    region = bounding_box(d);
    if (!region) fail(ErrorCode::UnboundedDomainNoRegion, "unbounded domain needs an explicit region");
  }
  const auto nx = static_cast<std::size_t>(std::ceil(region->width() / s));
  const auto ny = static_cast<std::size_t>(std::ceil(region->height() / s));
  std::vector<double> row_max(ny + 1, 0.0);
  parallel_for(ny + 1, [&](std::size_t j) {
    double m = 0.0;
    const double y = region->lo.imag() + static_cast<double>(j) * s;
    for (std::size_t i = 0; i <= nx; ++i) {
      const CPoint p{region->lo.real() + static_cast<double>(i) * s, y};
      if (contains(d, p)) m = std::max(m, distance_to_boundary(d, p));
    }
    row_max[j] = m;
  });
  const double m = *std::max_element(row_max.begin(), row_max.end());
  // Nodes can sit exactly on the maximiser; a relative 1e-14 absorbs the
  // rounding of the distance evaluation there.
  return {m * (1 - 1e-14), m * (1 + 1e-14) + s * std::numbers::sqrt2 / 2};
}

std::vector<CPoint> sample_boundary(const DomainSpec& d, std::size_t n, double extent) {
  if (n < 1) fail(ErrorCode::InvalidParameters, "sample count must be >= 1");
  std::vector<CPoint> out;
  if (const auto* poly = std::get_if<Polygon>(&d)) {
    const auto& v = poly->vertices;
    const std::size_t nv = v.size();
    std::vector<std::size_t> extra(nv, 0);
    if (n > nv) {
      const std::size_t budget = n - nv;
      std::vector<double> len(nv);
      double perimeter = 0;
      for (std::size_t i = 0; i < nv; ++i) perimeter += (len[i] = std::abs(v[(i + 1) % nv] - v[i]));
      std::vector<std::pair<double, std::size_t>> remainders;
      std::size_t used = 0;
      for (std::size_t i = 0; i < nv; ++i) {
        const double share = static_cast<double>(budget) * len[i] / perimeter;
        extra[i] = static_cast<std::size_t>(std::floor(share));
        used += extra[i];
        remainders.emplace_back(share - std::floor(share), i);
      }
      std::stable_sort(remainders.begin(), remainders.end(),
                       [](const auto& a, const auto& b) { return a.first > b.first; });
      for (std::size_t k = 0; used < budget; ++k, ++used) ++extra[remainders[k].second];
    }
    for (std::size_t i = 0; i < nv; ++i) {
      out.push_back(v[i]);
      const CPoint a = v[i], b = v[(i + 1) % nv];
      for (std::size_t j = 1; j <= extra[i]; ++j) {
        out.push_back(a + (b - a) * (static_cast<double>(j) / static_cast<double>(extra[i] + 1)));
      }
    }
    return out;
  }
  const auto pieces = finite_pieces(d, extent);
  std::vector<double> lengths;
  double total = 0;
  for (const auto& p : pieces) total += lengths.emplace_back(piece_length(p));
  for (std::size_t k = 0; k < n; ++k) {
    out.push_back(point_at_arclength(pieces, lengths, total * static_cast<double>(k) / static_cast<double>(n)));
  }
  return out;
}

std::vector<BoundarySample> nested_boundary_samples(const DomainSpec& d, std::size_t n, double extent) {
  const auto all_pieces = boundary_pieces(d);
  const auto pieces = finite_pieces(d, extent);
  const double tol = 1e-9 * domain_scale(d);

  std::vector<CPoint> points;
  auto push_unique = [&](CPoint p) {
    for (const auto& q : points) {
      if (std::abs(p - q) <= tol) return;
    }
    points.push_back(p);
  };
  for (const auto& piece : all_pieces) {
    if (const auto* s = std::get_if<Segment>(&piece)) {
      push_unique(s->a);
      push_unique(s->b);
    } else if (const auto* r = std::get_if<Ray>(&piece)) {
      push_unique(r->origin);
    } else {
      const auto& arc = std::get<Arc>(piece);
      push_unique(arc.at(arc.start));
      if (std::abs(arc.sweep) < 2 * kPi) {
        push_unique(arc.at(arc.start + arc.sweep));
        push_unique(arc.at(arc.start + 0.5 * arc.sweep));
      }
    }
  }
  std::vector<double> lengths;
  double total = 0;
  for (const auto& p : pieces) total += lengths.emplace_back(piece_length(p));
  for (std::size_t k = 0; k < n; ++k) push_unique(point_at_arclength(pieces, lengths, total * radical_inverse_base2(k)));

  std::vector<BoundarySample> out;
  out.reserve(points.size());
  for (const auto& p : points) {
    BoundarySample s{p, {}};
    for (const auto& piece : all_pieces) {
      if (distance_to_piece(piece, p) > tol) continue;
      const double ang = inward_normal_angle(piece, p);
      const bool seen = std::any_of(s.normal_angles.begin(), s.normal_angles.end(),
                                    [&](double a) { return std::abs(normalize_angle(a - ang)) < 1e-9; });
      if (!seen) s.normal_angles.push_back(ang);
    }
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<CPoint> interior_samples(const DomainSpec& d, std::size_t n, double extent) {
  BoundingBox box{{-extent, -extent}, {extent, extent}};
  if (auto b = bounding_box(d)) box = *b;
  auto grid = [&](std::size_t m) {
    std::vector<CPoint> pts;
    const double dx = box.width() / static_cast<double>(m);
    const double dy = box.height() / static_cast<double>(m);
    for (std::size_t j = 0; j < m; ++j) {
      for (std::size_t i = 0; i < m; ++i) {
        const CPoint p{box.lo.real() + (static_cast<double>(i) + 0.5) * dx,
                       box.lo.imag() + (static_cast<double>(j) + 0.5) * dy};
        if (contains(d, p)) pts.push_back(p);
      }
    }
    return pts;
  };
  const std::size_t coarse = 64;
  const double frac = static_cast<double>(grid(coarse).size()) / static_cast<double>(coarse * coarse);
  if (frac == 0.0 || n == 0) return {};
  const auto m = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n) / frac)));
  return grid(m);
}

DomainSpec scaled(const DomainSpec& d, double c) {
  if (!(c > 0.0)) fail(ErrorCode::InvalidParameters, "scale factor must be > 0");
  return std::visit(overloaded{
                        [&](const Polygon& p) -> DomainSpec {
                          Polygon q = p;
                          for (auto& v : q.vertices) v *= c;
                          return q;
                        },
                        [&](const CutDiskExterior& cd) -> DomainSpec { return CutDiskExterior{cd.a * c, cd.theta}; },
                        [&](const Horseshoe& h) -> DomainSpec { return Horseshoe{h.rho * c, h.delta * c, h.psi}; },
                        [&](const Disk& disk) -> DomainSpec { return Disk{disk.center * c, disk.radius * c}; },
                        [&](const auto& other) -> DomainSpec { return other; },
                    },
                    d);
}

DomainSpec moved(const DomainSpec& d, const Placement& pl) {
  if (const auto* p = std::get_if<Polygon>(&d)) {
    Polygon q = *p;
    for (auto& v : q.vertices) v = pl.apply(v);
    return q;
  }
  if (const auto* disk = std::get_if<Disk>(&d)) return Disk{pl.apply(disk->center), disk->radius};
  fail(ErrorCode::InvalidParameters, "rigid motion only representable for polygons and disks; use PlacedDomain");
}

}  // namespace hardy::geometry
