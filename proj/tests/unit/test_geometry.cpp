#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "hardy/error.hpp"
#include "hardy/geometry.hpp"

using namespace hardy;
using namespace hardy::geometry;

namespace {

constexpr double kPi = std::numbers::pi;

Polygon unit_square() { return make_polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}}); }

Polygon l_shape() { return make_polygon({{0, 0}, {1, 0}, {1, 0.5}, {0.5, 0.5}, {0.5, 1}, {0, 1}}); }

std::vector<CPoint> random_points_in(const DomainSpec& d, CPoint lo, CPoint hi, std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux(lo.real(), hi.real()), uy(lo.imag(), hi.imag());
  std::vector<CPoint> out;
  while (out.size() < n) {
    CPoint p{ux(rng), uy(rng)};
    if (contains(d, p)) out.push_back(p);
  }
  return out;
}

}  // namespace

TEST_CASE("contains examples") {
  CHECK(contains(Sector{kPi / 2}, {1, 0.5}));
  CHECK_FALSE(contains(Disk{{0, 0}, 1}, {1, 0}));
  CHECK(contains(CutDiskExterior{1, 0}, {3, 0}));
  CHECK_FALSE(contains(CutDiskExterior{1, 0}, {-2.5, 0}));   // on the cut
  CHECK_FALSE(contains(CutDiskExterior{1, 0}, {-1, 0.5}));   // inside the removed disk
  CHECK(contains(CutDiskExterior{1, 0}, {-2.5, 0.01}));
  CHECK_FALSE(contains(CutPlane{}, {-1, 0}));
  CHECK(contains(CutPlane{}, {-1, 1e-6}));
  CHECK_FALSE(contains(unit_square(), {0.5, 1e-13}));  // within the boundary band
}

TEST_CASE("transform_contains examples") {
  CHECK(transform_contains(Sector{kPi / 2}, {{0, 0}, 0}, {1, 0}));
  CHECK_FALSE(transform_contains(Sector{kPi / 2}, {{0, 0}, kPi}, {1, 0}));
  CHECK_FALSE(transform_contains(CutDiskExterior{1, kPi / 4}, {{2, 0}, 0}, {2, 0}));
}

TEST_CASE("boundary_distance examples") {
  CHECK(boundary_distance(Disk{{0, 0}, 1}, {0, 0}) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(boundary_distance(unit_square(), {0.5, 0.5}) == doctest::Approx(0.5).epsilon(1e-15));

  // Oracle: dense sampling of the slit {-t : t >= 0}.
  double oracle = 1e300;
  for (int k = 0; k <= 400000; ++k) oracle = std::min(oracle, std::abs(CPoint{-1, 0.1} - CPoint{-k * 1e-5, 0}));
  CHECK(oracle == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(boundary_distance(CutPlane{}, {-1, 0.1}) == doctest::Approx(oracle).epsilon(1e-12));

  CHECK_THROWS_AS(boundary_distance(Disk{{0, 0}, 1}, {2, 0}), Error);
  try {
    (void)boundary_distance(Disk{{0, 0}, 1}, {2, 0});
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::PointOutsideDomain);
  }
}

TEST_CASE("boundary_distance on the remaining variants") {
  // Cut-disk exterior: nearest point is either the circle or the cut.
  CHECK(boundary_distance(CutDiskExterior{1, 0}, {3, 0}) == doctest::Approx(3.0));
  CHECK(boundary_distance(CutDiskExterior{1, 0}, {-3, 0.2}) == doctest::Approx(0.2));
  CHECK(boundary_distance(HalfPlane{}, {2, 3}) == doctest::Approx(2.0));
  CHECK(boundary_distance(Sector{kPi / 4}, {1, 0}) == doctest::Approx(std::sin(kPi / 4)));
  // Horseshoe band: midway between the arcs.
  CHECK(boundary_distance(Horseshoe{1, 0.1, kPi / 2}, {1.05, 0}) == doctest::Approx(0.05));
  // Vertical ends for psi > pi/2.
  const Horseshoe wide{1, 0.1, 3 * kPi / 4};
  const double xe = std::cos(3 * kPi / 4);
  CHECK(boundary_distance(wide, {xe + 0.01, 0.78}) == doctest::Approx(0.01));
}

TEST_CASE("in_radius examples") {
  const auto disk = in_radius(Disk{{0, 0}, 1}, std::nullopt, 0.01);
  CHECK(disk.lower >= 0.99);
  CHECK(disk.upper - disk.lower <= 0.00708);
  CHECK(disk.contains(1.0));

  CHECK(in_radius(unit_square(), std::nullopt, 0.01).contains(0.5));

  // Oracle: the band of width delta has sup-distance delta/2 on its midline.
  const double band_oracle = 0.1 / 2;
  CHECK(in_radius(Horseshoe{1, 0.1, kPi / 2}, std::nullopt, 0.002).contains(band_oracle));

  CHECK_THROWS_AS(in_radius(CutPlane{}, std::nullopt, 0.1), Error);
  const auto cut = in_radius(CutPlane{}, BoundingBox{{-2, -2}, {2, 2}}, 0.05);
  CHECK(cut.lower > 0.0);
  CHECK_THROWS_AS(in_radius(unit_square(), std::nullopt, 0.0), Error);
}

TEST_CASE("sample_boundary examples") {
  const auto sq = sample_boundary(unit_square(), 4);
  REQUIRE(sq.size() == 4);
  for (const auto& v : unit_square().vertices) {
    CHECK(std::any_of(sq.begin(), sq.end(), [&](CPoint p) { return std::abs(p - v) < 1e-15; }));
  }

  const auto circle = sample_boundary(Disk{{0, 0}, 1}, 4);
  REQUIRE(circle.size() == 4);
  for (std::size_t k = 0; k < 4; ++k) {
    CHECK(std::abs(circle[k] - std::polar(1.0, kPi / 2 * static_cast<double>(k))) < 1e-15);
  }

  const Horseshoe hs{1, 0.1, kPi / 2};
  const auto pts = sample_boundary(hs, 64);
  REQUIRE(pts.size() == 64);
  const double perimeter = 2 * (kPi / 2) * 1.0 + 2 * (kPi / 2) * 1.1 + 2 * 0.1;
  double max_gap = 0;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    max_gap = std::max(max_gap, std::abs(pts[(k + 1) % pts.size()] - pts[k]));
    CHECK(distance_to_boundary(hs, pts[k]) < 1e-12);
  }
  CHECK(max_gap <= perimeter / 64 * (1 + 1e-9));

  const auto many = sample_boundary(l_shape(), 50);
  CHECK(many.size() == 50);
  for (const auto& v : l_shape().vertices) {
    CHECK(std::any_of(many.begin(), many.end(), [&](CPoint p) { return std::abs(p - v) < 1e-15; }));
  }
}

TEST_CASE("nested boundary samples are prefixes and carry normals") {
  const auto small = nested_boundary_samples(l_shape(), 32);
  const auto large = nested_boundary_samples(l_shape(), 128);
  REQUIRE(small.size() <= large.size());
  for (std::size_t i = 0; i < small.size(); ++i) CHECK(small[i].point == large[i].point);
  // Reentrant corner carries the two inward normals of its edges.
  const auto corner = std::find_if(large.begin(), large.end(), [](const BoundarySample& s) {
    return std::abs(s.point - CPoint{0.5, 0.5}) < 1e-15;
  });
  REQUIRE(corner != large.end());
  CHECK(corner->normal_angles.size() == 2);
}

TEST_CASE("polygon construction") {
  const auto cw = make_polygon({{0, 0}, {0, 1}, {1, 1}, {1, 0}});
  CHECK(polygon_signed_area(cw.vertices) == doctest::Approx(1.0));
  CHECK_THROWS_AS(make_polygon({{0, 0}, {1, 1}, {1, 0}, {0, 1}}), Error);  // bow tie
  CHECK_THROWS_AS(make_polygon({{0, 0}, {1, 0}}), Error);
  CHECK_THROWS_AS(make_polygon({{0, 0}, {1, 0}, {2, 0}}), Error);
  CHECK_THROWS_AS(validate(Polygon{{{0, 0}, {0, 1}, {1, 1}, {1, 0}}}), Error);
  CHECK_THROWS_AS(validate(Horseshoe{1, 0.1, kPi}), Error);
  CHECK_THROWS_AS(validate(CutDiskExterior{0, 0}), Error);
  CHECK(is_convex(unit_square()));
  CHECK_FALSE(is_convex(l_shape()));
}

TEST_CASE("distance is 1-Lipschitz") {
  const std::vector<std::pair<DomainSpec, BoundingBox>> cases{
      {l_shape(), {{0, 0}, {1, 1}}},
      {Horseshoe{1, 0.3, 2.5}, {{-1.3, -1.3}, {1.3, 1.3}}},
      {CutDiskExterior{1, 0.7}, {{-3, -3}, {3, 3}}},
      {CutPlane{}, {{-2, -2}, {2, 2}}},
  };
  unsigned seed = 7;
  for (const auto& [d, box] : cases) {
    const auto p = random_points_in(d, box.lo, box.hi, 2000, seed++);
    const auto q = random_points_in(d, box.lo, box.hi, 2000, seed++);
    for (std::size_t i = 0; i < p.size(); ++i) {
      CHECK(std::abs(boundary_distance(d, p[i]) - boundary_distance(d, q[i])) <= std::abs(p[i] - q[i]) + 1e-12);
      CHECK(boundary_distance(d, p[i]) > 0.0);
    }
  }
}

TEST_CASE("rigid motion and scale covariance") {
  const Placement pl{{0.3, -1.7}, 0.9};
  const auto moved_l = moved(l_shape(), pl);
  const auto pts = random_points_in(l_shape(), {0, 0}, {1, 1}, 1000, 11);
  for (const auto& p : pts) {
    CHECK(boundary_distance(moved_l, pl.apply(p)) == doctest::Approx(boundary_distance(l_shape(), p)).epsilon(1e-12));
  }
  for (double c : {0.01, 3.0, 1e4}) {
    for (const DomainSpec& d : std::vector<DomainSpec>{l_shape(), Horseshoe{1, 0.2, 2.0}, CutDiskExterior{1, 0.5}}) {
      for (const auto& p : random_points_in(d, {-2, -2}, {2, 2}, 200, 13)) {
        const double base = boundary_distance(d, p);
        CHECK(boundary_distance(scaled(d, c), c * p) == doctest::Approx(c * base).epsilon(1e-12));
      }
    }
  }
  // Placed domains agree with explicitly moved ones.
  const PlacedDomain placed{l_shape(), pl, 2.0};
  for (const auto& p : pts) {
    const CPoint world = placed.to_world(p);
    CHECK(boundary_distance(placed, world) == doctest::Approx(2.0 * boundary_distance(l_shape(), p)).epsilon(1e-12));
  }
}

TEST_CASE("in_radius contains the refined-grid value") {
  const std::vector<DomainSpec> cases{unit_square(), l_shape(), Horseshoe{1, 0.2, 2.2}, Disk{{0.3, 0.1}, 0.7}};
  for (const auto& d : cases) {
    const double s = 0.02;
    const auto est = in_radius(d, std::nullopt, s);
    const auto box = *bounding_box(d);
    double refined = 0.0;
    const double sf = s / 4;
    for (double y = box.lo.imag(); y <= box.hi.imag(); y += sf) {
      for (double x = box.lo.real(); x <= box.hi.real(); x += sf) {
        if (contains(d, {x, y})) refined = std::max(refined, distance_to_boundary(d, {x, y}));
      }
    }
    CHECK(est.lower <= refined + 1e-15);
    CHECK(refined <= est.upper);
  }
}

TEST_CASE("bounding boxes") {
  const auto box = *bounding_box(Horseshoe{1, 0.1, kPi / 2});
  CHECK(box.lo.real() == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(box.hi.real() == doctest::Approx(1.1));
  CHECK(box.hi.imag() == doctest::Approx(1.1));
  CHECK_FALSE(bounding_box(CutPlane{}).has_value());
  CHECK(normalize_angle(-kPi) == doctest::Approx(kPi));
  CHECK(normalize_angle(3 * kPi / 2) == doctest::Approx(-kPi / 2));
}
