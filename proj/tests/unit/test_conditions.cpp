#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "hardy/conditions.hpp"
#include "hardy/error.hpp"

using namespace hardy;
using namespace hardy::geometry;
using namespace hardy::conditions;

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

// Brute force: half-width of the smallest arc holding the directions of a
// large point sample, via sorted angles and the largest gap.
double sampled_half_width(const std::vector<CPoint>& pts, CPoint w) {
  std::vector<double> ang;
  for (const auto& p : pts) ang.push_back(std::arg(p - w));
  std::sort(ang.begin(), ang.end());
  double gap = ang.front() + 2 * kPi - ang.back();
  for (std::size_t i = 1; i < ang.size(); ++i) gap = std::max(gap, ang[i] - ang[i - 1]);
  return kPi - gap / 2;
}

}  // namespace

TEST_CASE("angular_hull examples") {
  auto h = angular_hull(unit_square(), {0, 0});
  CHECK(h.theta == doctest::Approx(kPi / 4).epsilon(1e-12));
  CHECK(h.phi == doctest::Approx(kPi / 4).epsilon(1e-12));

  h = angular_hull(unit_square(), {0.5, 0});
  CHECK(h.theta == doctest::Approx(kPi / 2).epsilon(1e-12));
  CHECK(h.phi == doctest::Approx(kPi / 2).epsilon(1e-12));

  const auto pts = random_points_in(l_shape(), {0, 0}, {1, 1}, 1000000, 3);
  const double oracle = sampled_half_width(pts, {0.5, 0.5});
  CHECK(oracle == doctest::Approx(3 * kPi / 4).epsilon(1e-3));
  h = angular_hull(l_shape(), {0.5, 0.5});
  CHECK(h.theta == doctest::Approx(3 * kPi / 4).epsilon(1e-12));
  CHECK(std::abs(h.theta - oracle) < 1e-3);

  CHECK_THROWS_AS(angular_hull(unit_square(), {0.5, 0.5}), Error);
}

TEST_CASE("angular_hull on unbounded and curved domains") {
  auto h = angular_hull(CutPlane{}, {0, 0});
  CHECK(h.theta == doctest::Approx(kPi));
  CHECK_FALSE(h.full_circle);
  CHECK(h.phi == doctest::Approx(0.0).epsilon(1e-12));

  h = angular_hull(CutPlane{}, {-2, 0});
  CHECK(h.theta == doctest::Approx(kPi));
  CHECK_FALSE(h.full_circle);

  h = angular_hull(HalfPlane{}, {0, 3});
  CHECK(h.theta == doctest::Approx(kPi / 2));
  CHECK(h.phi == doctest::Approx(0.0).epsilon(1e-12));

  h = angular_hull(Sector{3 * kPi / 4}, {0, 0});
  CHECK(h.theta == doctest::Approx(3 * kPi / 4));

  h = angular_hull(CutDiskExterior{1, 0}, {0, 0});
  CHECK(h.theta == doctest::Approx(kPi));
  CHECK_FALSE(h.full_circle);

  h = angular_hull(Disk{{0, 0}, 1}, {1, 0});
  CHECK(h.theta == doctest::Approx(kPi / 2).epsilon(1e-12));
  CHECK(h.phi == doctest::Approx(kPi).epsilon(1e-12));

  // Exterior point of the disk: half-angle of the tangent cone.
  h = angular_hull(Disk{{0, 0}, 1}, {2, 0});
  CHECK(h.theta == doctest::Approx(std::asin(0.5)).epsilon(1e-12));

  // Horseshoe inner midpoint: the domain wraps around w.
  const double psi = kPi / 3;
  h = angular_hull(Horseshoe{1, 0.05, psi}, {1, 0});
  CHECK(h.theta > kPi / 2);
  CHECK(h.theta <= (kPi + psi) / 2 + 1e-12);
  const auto pts = random_points_in(Horseshoe{1, 0.05, psi}, {0.4, -1.1}, {1.1, 1.1}, 200000, 5);
  CHECK(std::abs(h.theta - sampled_half_width(pts, {1, 0})) < 1e-3);
}

TEST_CASE("full circle is flagged") {
  // Inside the removed disk, off the line through the cut: every ray from w
  // reaches the domain.
  const auto h = angular_hull(CutDiskExterior{1, 0}, {-1, 0.5});
  CHECK(h.full_circle);
  // On that line the ray along the cut stays outside.
  CHECK_FALSE(angular_hull(CutDiskExterior{1, 0}, {-1, 0}).full_circle);
}

TEST_CASE("check_cone_condition examples") {
  auto r = check_cone_condition(unit_square());
  CHECK(std::abs(r.theta_sup - kPi / 2) <= 1e-6);
  CHECK(r.n_boundary_samples >= 256);
  r = check_cone_condition(Sector{3 * kPi / 4});
  CHECK(std::abs(r.theta_sup - 3 * kPi / 4) <= 1e-6);
  r = check_cone_condition(CutPlane{});
  CHECK(r.theta_sup == doctest::Approx(kPi));
  CHECK(r.holds());
  r = check_cone_condition(l_shape());
  CHECK(std::abs(r.theta_sup - 3 * kPi / 4) <= 1e-9);
  CHECK(std::abs(r.worst().w - CPoint{0.5, 0.5}) < 1e-15);
}

TEST_CASE("cone report invariants") {
  // Convex corners see less than a half-plane; the supremum cannot.
  const auto hs = check_cone_condition(Horseshoe{1, 0.05, 2.0}, 128);
  CHECK(hs.theta_sup >= kPi / 2);
  CHECK(hs.theta_sup <= kPi);
  for (const auto& w : hs.witnesses) CHECK(w.theta <= kPi);
  const auto corner = angular_hull(Horseshoe{1, 0.05, 2.0}, hs.witnesses.front().w);
  CHECK(corner.theta <= kPi);
  const auto hexagon = make_polygon({{2, 0}, {1, 1.7}, {-1, 1.7}, {-2, 0}, {-1, -1.7}, {1, -1.7}});
  const auto r = check_cone_condition(hexagon);
  CHECK(r.theta_sup >= kPi / 2);
  CHECK(r.theta_sup <= kPi / 2 + 1e-6);

  // Monotone in n.
  double prev = 0.0;
  for (std::size_t n : {8u, 32u, 128u, 512u}) {
    const double t = check_cone_condition(Horseshoe{1, 0.05, 2.4}, n).theta_sup;
    CHECK(t >= prev);
    prev = t;
  }
}

TEST_CASE("angular hull is monotone under inclusion") {
  // Nested: small polygon inside the L-shape, both touching w = (0, 0).
  const auto inner = make_polygon({{0, 0}, {0.8, 0}, {0.8, 0.3}, {0.3, 0.3}, {0.3, 0.8}, {0, 0.8}});
  for (CPoint w : {CPoint{0, 0}, CPoint{0.2, 0}, CPoint{0, 0.5}, CPoint{-0.3, -0.2}, CPoint{1.2, 1.2}}) {
    CHECK(angular_hull(inner, w).theta <= angular_hull(l_shape(), w).theta + 1e-9);
  }
}

TEST_CASE("angular hull certifies containment") {
  const std::vector<std::pair<DomainSpec, CPoint>> cases{
      {l_shape(), {0.5, 0.5}},
      {l_shape(), {0.75, 0.5}},
      {Horseshoe{1, 0.1, 2.4}, {1, 0}},
      {Horseshoe{1, 0.1, 2.4}, std::polar(1.05, 2.4)},
  };
  unsigned seed = 17;
  for (const auto& [d, w] : cases) {
    const auto h = angular_hull(d, w);
    for (const auto& z : random_points_in(d, {-1.2, -1.2}, {1.2, 1.2}, 10000, seed++)) {
      CHECK(std::abs(std::arg(std::polar(1.0, -h.phi) * (z - w))) <= h.theta + 1e-9);
    }
  }
}

TEST_CASE("cone condition is rotation invariant") {
  const Placement pl{{0.4, -2.0}, 1.1};
  const auto rotated = moved(l_shape(), pl);
  CHECK(check_cone_condition(rotated).theta_sup == doctest::Approx(check_cone_condition(l_shape()).theta_sup).epsilon(1e-9));
}

TEST_CASE("horseshoe_theta0") {
  CHECK(horseshoe_theta0(kPi / 4) == 0.0);
  CHECK(horseshoe_theta0(kPi / 2) == 0.0);
  CHECK(horseshoe_theta0(3 * kPi / 4) == doctest::Approx(kPi / 2).epsilon(1e-15));
  CHECK_THROWS_AS(horseshoe_theta0(0.0), Error);
  CHECK_THROWS_AS(horseshoe_theta0(kPi), Error);
}

TEST_CASE("cutdisk margin") {
  // D_{1,0}: disk centred at -1, cut left of -2.
  CHECK(cutdisk_margin({3, 0}, 1, 0, {0, 0}, 0) == doctest::Approx(3.0));
  CHECK(cutdisk_margin({-1, 0}, 1, 0, {0, 0}, 0) == doctest::Approx(-1.0));
  CHECK(cutdisk_margin({-3, 0}, 1, 0, {0, 0}, 0) == doctest::Approx(0.0));
  // Same point after a rigid move of both.
  const Placement pl{{1, 2}, 0.5};
  CHECK(cutdisk_margin(pl.apply({3, 0.5}), 1, 0.3, pl.w, pl.phi) ==
        doctest::Approx(cutdisk_margin({3, 0.5}, 1, 0.3, {0, 0}, 0)));
}

TEST_CASE("check_cutdisk_condition examples") {
  CutDiskOptions opt;
  opt.n_boundary = 64;
  const auto a = check_cutdisk_condition(Horseshoe{1, 0.05, kPi / 3}, 1.0, 0.0, opt);
  CHECK(a.feasible);
  const auto b = check_cutdisk_condition(Horseshoe{1, 0.05, 3 * kPi / 4}, 1.0, kPi / 2, opt);
  CHECK(b.feasible);
  const auto c = check_cutdisk_condition(unit_square(), 1e6, 0.0, opt);
  CHECK(c.feasible);
  CHECK_THROWS_AS(check_cutdisk_condition(unit_square(), 0.0, 0.0), Error);
  CHECK_THROWS_AS(check_cutdisk_condition(unit_square(), 1.0, kPi), Error);

  // A small disk cannot sit outside the L-shape at its reentrant corner.
  const auto l = check_cutdisk_condition(l_shape(), 0.05, 0.0, opt);
  CHECK_FALSE(l.feasible);
}

TEST_CASE("cutdisk witnesses certify containment") {
  CutDiskOptions opt;
  opt.n_boundary = 64;
  const Horseshoe hs{1, 0.05, 3 * kPi / 4};
  const auto r = check_cutdisk_condition(hs, 1.0, kPi / 2, opt);
  REQUIRE(r.feasible);
  const auto fresh = random_points_in(hs, {-1.1, -1.1}, {1.1, 1.1}, 10000, 23);
  std::size_t failures = 0;
  for (const auto& w : r.witnesses) {
    CHECK(std::abs(w.theta_used) <= kPi / 2 + 1e-15);
    for (const auto& z : fresh) {
      if (!transform_contains(CutDiskExterior{1.0, w.theta_used}, {w.w, w.phi}, z)) ++failures;
    }
  }
  CHECK(failures == 0);
}
