#include "hardy/conditions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "hardy/error.hpp"
#include "hardy/parallel.hpp"

namespace hardy::conditions {

using namespace geometry;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kGapTol = 1e-10;

double cross(CPoint a, CPoint b) { return a.real() * b.imag() - a.imag() * b.real(); }
double dot(CPoint a, CPoint b) { return a.real() * b.real() + a.imag() * b.imag(); }

double wrap_2pi(double t) {
  double r = std::fmod(t, kTwoPi);
  if (r < 0) r += kTwoPi;
  return r;
}

// Closed arc of directions [start, start + len] on the circle.
struct Interval {
  double start;
  double len;
};

class DirectionSet {
 public:
  void add(double start, double signed_sweep) {
    if (signed_sweep < 0) {
      start += signed_sweep;
      signed_sweep = -signed_sweep;
    }
    items_.push_back({wrap_2pi(start), std::min(signed_sweep, kTwoPi)});
  }
  void add_point(double angle) { add(angle, 0.0); }

  const std::vector<Interval>& items() const { return items_; }

 private:
  std::vector<Interval> items_;
};

double feature_scale(const DomainSpec& d, CPoint w) {
  double s = std::max(1.0, std::abs(w));
  if (auto box = bounding_box(d)) s = std::max({s, std::abs(box->lo), std::abs(box->hi)});
  if (const auto* c = std::get_if<CutDiskExterior>(&d)) s = std::max(s, 2 * c->a);
  return s;
}

void add_arc_directions(const Arc& arc, CPoint w, double tol, DirectionSet& out) {
  double lo = arc.sweep >= 0 ? arc.start : arc.start + arc.sweep;
  const double len = std::abs(arc.sweep);
  const CPoint rel = w - arc.center;
  const double dist = std::abs(rel);
  const bool on_circle = std::abs(dist - arc.radius) <= tol;
  const bool outside = !on_circle && dist > arc.radius;
  const double tw = std::arg(rel);

  std::vector<double> cuts{0.0, len};
  auto add_cut = [&](double t) {
    const double u = wrap_2pi(t - lo);
    if (u > 0 && u < len) cuts.push_back(u);
  };
  if (on_circle) add_cut(tw);
  if (outside) {
    const double alpha = std::acos(std::clamp(arc.radius / dist, -1.0, 1.0));
    add_cut(tw + alpha);
    add_cut(tw - alpha);
  }
  std::sort(cuts.begin(), cuts.end());

  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double span = cuts[i + 1] - cuts[i];
    if (span <= 0) continue;
    const auto pieces = static_cast<std::size_t>(std::ceil(span / (kPi / 8)));
    for (std::size_t j = 0; j < pieces; ++j) {
      const double t1 = lo + cuts[i] + span * static_cast<double>(j) / static_cast<double>(pieces);
      const double t2 = lo + cuts[i] + span * static_cast<double>(j + 1) / static_cast<double>(pieces);
      if (on_circle) {
        // Inscribed angle: the direction to c + r e^{it} is (t + tw)/2 + pi/2.
        double u1 = wrap_2pi(t1 - tw);
        if (u1 > kTwoPi - 1e-12) u1 -= kTwoPi;
        out.add(tw + 0.5 * u1 + kPi / 2, 0.5 * (t2 - t1));
        continue;
      }
      const CPoint p = arc.at(t1) - w;
      const CPoint q = arc.at(t2) - w;
      if (outside) {
        out.add(std::arg(p), std::atan2(cross(p, q), dot(p, q)));
      } else {
        double sweep = wrap_2pi(std::arg(q) - std::arg(p));
        if (sweep > kTwoPi - 1e-12) sweep = 0.0;
        out.add(std::arg(p), sweep);
      }
    }
  }
}

void add_recession(const DomainSpec& d, DirectionSet& out) {
  auto halves = [&](double theta) {
    out.add(-theta, theta);
    out.add(0.0, theta);
  };
  if (const auto* s = std::get_if<Sector>(&d)) halves(s->theta);
  if (std::holds_alternative<CutPlane>(d) || std::holds_alternative<CutDiskExterior>(d)) halves(kPi);
  if (std::holds_alternative<HalfPlane>(d)) halves(kPi / 2);
}

struct Gap {
  double at;  // start of the gap
  double len;
};

std::vector<Gap> circular_gaps(std::vector<Interval> items) {
  std::vector<Gap> gaps;
  if (items.empty()) return gaps;
  std::sort(items.begin(), items.end(), [](const Interval& a, const Interval& b) {
    return a.start < b.start || (a.start == b.start && a.len > b.len);
  });
  double cur_end = items.front().start + items.front().len;
  for (int lap = 0; lap < 2; ++lap) {
    for (std::size_t i = (lap == 0 ? 1 : 0); i < items.size(); ++i) {
      const double s = items[i].start + kTwoPi * lap;
      const double gap = s - cur_end;
      if (lap == 1 && gap > kGapTol) gaps.push_back({cur_end, gap});
      cur_end = std::max(cur_end, s + items[i].len);
    }
  }
  return gaps;
}

bool ray_is_free(const DomainSpec& d, CPoint w, double angle, double scale) {
  const CPoint u = std::polar(1.0, angle);
  constexpr int kPerDecade = 16;
  for (int k = 0; k <= 11 * kPerDecade; ++k) {
    const double t = scale * 1e-7 * std::pow(10.0, static_cast<double>(k) / kPerDecade);
    // Angular tolerance 1e-9: the candidate direction itself carries rounding.
    const CPoint p = w + t * u;
    if (contains(d, p) && distance_to_boundary(d, p) > 1e-9 * t) return false;
  }
  return true;
}

}  // namespace

HullResult angular_hull(const DomainSpec& d, CPoint w) {
  if (contains(d, w)) fail(ErrorCode::PointInsideDomain, "angular hull needs a point outside the domain");
  const double scale = feature_scale(d, w);
  const double tol = 1e-9 * scale;

  DirectionSet dirs;
  for (const auto& piece : boundary_pieces(d)) {
    const bool through_w = distance_to_piece(piece, w) <= tol;
    if (const auto* s = std::get_if<Segment>(&piece)) {
      if (through_w) {
        if (std::abs(s->a - w) > tol) dirs.add_point(std::arg(s->a - w));
        if (std::abs(s->b - w) > tol) dirs.add_point(std::arg(s->b - w));
      } else {
        const CPoint p = s->a - w, q = s->b - w;
        dirs.add(std::arg(p), std::atan2(cross(p, q), dot(p, q)));
      }
    } else if (const auto* r = std::get_if<Ray>(&piece)) {
      const CPoint p = r->origin - w;
      if (through_w) {
        if (std::abs(p) > tol) dirs.add_point(std::arg(p));
        dirs.add_point(std::arg(r->dir));
      } else {
        dirs.add(std::arg(p), std::atan2(cross(p, r->dir), dot(p, r->dir)));
      }
    } else {
      add_arc_directions(std::get<Arc>(piece), w, tol, dirs);
    }
  }
  add_recession(d, dirs);

  const auto gaps = circular_gaps(dirs.items());
  if (!gaps.empty()) {
    const auto best = *std::max_element(gaps.begin(), gaps.end(), [](const Gap& a, const Gap& b) { return a.len < b.len; });
    return {kPi - 0.5 * best.len, normalize_angle(best.at + 0.5 * best.len + kPi), false};
  }

  // No open gap: a single excluded direction still gives theta = pi if the
  // whole ray from w misses the domain.
  std::vector<double> candidates;
  for (const auto& it : dirs.items()) {
    candidates.push_back(normalize_angle(it.start));
    candidates.push_back(normalize_angle(it.start + it.len));
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end(),
                               [](double a, double b) { return std::abs(a - b) < 1e-12; }),
                   candidates.end());
  for (double c : candidates) {
    if (ray_is_free(d, w, c, scale)) return {kPi, normalize_angle(c + kPi), false};
  }
  return {kPi, 0.0, true};
}

const ConeWitness& ConeReport::worst() const {
  if (witnesses.empty()) fail(ErrorCode::InvalidParameters, "empty cone report");
  return *std::max_element(witnesses.begin(), witnesses.end(), [](const ConeWitness& a, const ConeWitness& b) {
    if (a.full_circle != b.full_circle) return b.full_circle;
    return a.theta < b.theta;
  });
}

ConeReport check_cone_condition(const DomainSpec& d, std::size_t n) {
  validate(d);
  const auto samples = nested_boundary_samples(d, n);
  ConeReport report;
  report.n_boundary_samples = samples.size();
  report.witnesses.resize(samples.size());
  parallel_for(samples.size(), [&](std::size_t i) {
    const auto h = angular_hull(d, samples[i].point);
    report.witnesses[i] = {samples[i].point, h.theta, h.phi, h.full_circle};
  });
  for (const auto& w : report.witnesses) {
    report.theta_sup = std::max(report.theta_sup, w.theta);
    report.full_circle = report.full_circle || w.full_circle;
  }
  return report;
}

double cutdisk_margin(CPoint z, double a, double theta, CPoint w, double phi) {
  const CPoint q = std::polar(1.0, -phi) * (z - w) + std::polar(a, theta);
  const double r = std::abs(q);
  if (r <= a) return r - a;
  const double to_cut = q.real() <= -a ? std::abs(q.imag()) : std::abs(q - CPoint{-a, 0.0});
  return std::min(r - a, to_cut);
}

CutDiskReport check_cutdisk_condition(const DomainSpec& d, double a, double theta0, const CutDiskOptions& opt) {
  if (!(a > 0.0 && std::isfinite(a))) fail(ErrorCode::InvalidParameters, "cut disk radius a must be > 0");
  if (!(theta0 >= 0.0 && theta0 < kPi)) fail(ErrorCode::InvalidParameters, "theta0 must lie in [0, pi)");
  if (opt.n_phi == 0 || opt.n_theta == 0 || opt.n_domain == 0) fail(ErrorCode::InvalidParameters, "empty search grid");
  validate(d);

  const auto samples = nested_boundary_samples(d, opt.n_boundary, opt.extent);
  const auto domain = interior_samples(d, opt.n_domain, opt.extent);

  // The mirror image -theta is admitted as well: D_{a,-theta} is the
  // reflection of D_{a,theta} and the constant depends on |tan(theta/2)| only.
  std::vector<double> thetas{0.0};
  if (theta0 > 0.0 && opt.n_theta > 1) {
    for (std::size_t j = 1; j < opt.n_theta; ++j) {
      const double t = theta0 * static_cast<double>(j) / static_cast<double>(opt.n_theta - 1);
      thetas.push_back(t);
      thetas.push_back(-t);
    }
  }
  std::vector<long> phi_steps{0};
  for (long k = 1; 2 * static_cast<std::size_t>(k) <= opt.n_phi; ++k) {
    phi_steps.push_back(k);
    if (2 * static_cast<std::size_t>(k) < opt.n_phi) phi_steps.push_back(-k);
  }

  CutDiskReport report;
  report.a = a;
  report.theta0 = theta0;
  report.n_boundary_samples = samples.size();
  report.n_domain_samples = domain.size();
  report.witnesses.resize(samples.size());

  parallel_for(samples.size(), [&](std::size_t i) {
    const CPoint w = samples[i].point;
    std::vector<CPoint> near = domain;
    std::sort(near.begin(), near.end(), [&](CPoint p, CPoint q) { return std::abs(p - w) < std::abs(q - w); });

    std::vector<double> anchors;
    const auto& normals = samples[i].normal_angles;
    if (normals.size() == 2) anchors.push_back(normals[0] + 0.5 * normalize_angle(normals[1] - normals[0]));
    anchors.insert(anchors.end(), normals.begin(), normals.end());
    if (anchors.empty()) anchors.push_back(0.0);

    CutDiskWitness best{w, 0.0, 0.0, -std::numeric_limits<double>::infinity(), false};
    for (double th : thetas) {
      for (double anchor : anchors) {
        for (long k : phi_steps) {
          const double phi = normalize_angle(anchor - th + kTwoPi * static_cast<double>(k) / static_cast<double>(opt.n_phi));
          double m = std::numeric_limits<double>::infinity();
          for (const auto& z : near) {
            m = std::min(m, cutdisk_margin(z, a, th, w, phi));
            if (m <= best.margin) break;
          }
          if (m > best.margin) {
            best.margin = m;
            best.phi = phi;
            best.theta_used = th;
          }
          if (best.margin > 0) {
            best.found = true;
            report.witnesses[i] = best;
            return;
          }
        }
      }
    }
    report.witnesses[i] = best;
  });

  report.feasible = !domain.empty() && std::all_of(report.witnesses.begin(), report.witnesses.end(),
                                                    [](const CutDiskWitness& w) { return w.found; });
  return report;
}

double horseshoe_theta0(double psi) {
  if (!(psi > 0.0 && psi < kPi)) fail(ErrorCode::InvalidParameters, "psi must lie in (0, pi)");
  return psi <= kPi / 2 ? 0.0 : 2 * psi - kPi;
}

}  // namespace hardy::conditions
