#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hardy/error.hpp"
#include "hardy/pipeline.hpp"

using namespace hardy;
using namespace hardy::geometry;
using namespace hardy::pipeline;
using hardy::io::json;

namespace {

constexpr double kPi = std::numbers::pi;
const std::string kSpecs = std::string(HARDY_SOURCE_DIR) + "/data/specs/";

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InvalidParameters;
}

PipelineOptions fast() {
  PipelineOptions opt;
  opt.cutdisk.n_boundary = 64;
  return opt;
}

}  // namespace

TEST_CASE("problem specs") {
  const auto bare = problem_from_json(json::parse(R"({"kind":"halfplane"})"), "hp");
  CHECK(bare.name == "hp");
  CHECK(std::holds_alternative<HalfPlane>(bare.domain));
  CHECK_FALSE(cutdisk_params(bare).has_value());

  const auto hs = load_problem(kSpecs + "horseshoe_135.json");
  CHECK(hs.name == "horseshoe_135");
  REQUIRE(cutdisk_params(hs).has_value());
  CHECK(cutdisk_params(hs)->a == 1.0);
  CHECK(cutdisk_params(hs)->theta0 == doctest::Approx(kPi / 2).epsilon(1e-15));

  const auto given = problem_from_json(
      json::parse(R"({"name":"l","domain":{"kind":"polygon","vertices":[[0,0],[1,0],[0,1]]},"cutdisk":{"a":2,"theta0":0.5}})"));
  CHECK(cutdisk_params(given)->a == 2.0);
  CHECK(problem_from_json(to_json(given)).cutdisk->theta0 == 0.5);

  for (const char* f : {"square", "l_shape", "cutplane", "horseshoe_60", "horseshoe_135"}) {
    const auto p = load_problem(kSpecs + f + ".json");
    CHECK(p.name == f);
    CHECK(to_json(problem_from_json(to_json(p))) == to_json(p));
  }
  CHECK(std::holds_alternative<Disk>(*load_problem(kSpecs + "cutplane.json").support));

  auto code = [](const char* text) { return code_of([&] { problem_from_json(json::parse(text)); }); };
  CHECK(code(R"({"domain":{"kind":"halfplane"},"extra":1})") == ErrorCode::SpecParse);
  CHECK(code(R"({"name":"x"})") == ErrorCode::SpecParse);
  CHECK(code(R"({"domain":{"kind":"cutplane"},"support":{"kind":"halfplane"}})") == ErrorCode::SpecParse);
  CHECK(code(R"({"domain":{"kind":"cutplane"},"cutdisk":{"a":0,"theta0":0}})") == ErrorCode::SpecParse);
  CHECK(code_of([] { load_problem(std::string(HARDY_SOURCE_DIR) + "/tests/data/bad_spec.json"); }) == ErrorCode::SpecParse);
}

TEST_CASE("delta_in estimate") {
  const auto sq = delta_in_estimate(make_polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}}));
  CHECK(sq.contains(0.5));
  CHECK(sq.upper - sq.lower < 0.02);
  // Thin horseshoe: half the band width.
  const auto hs = delta_in_estimate(Horseshoe{1, 0.05, kPi / 3});
  CHECK(hs.contains(0.025));
  CHECK(hs.upper - 0.025 < 1e-3);
  CHECK(code_of([] { delta_in_estimate(CutPlane{}); }) == ErrorCode::UnboundedDomainNoRegion);
}

TEST_CASE("bound examples") {
  const auto sq = run_pipeline(load_problem(kSpecs + "square.json"), fast());
  REQUIRE(sq.certificate);
  CHECK(sq.certificate->method == bounds::Method::convex);
  CHECK(sq.certificate->r == 0.5);

  const auto hs = run_pipeline(load_problem(kSpecs + "horseshoe_60.json"), fast());
  REQUIRE(hs.certificate);
  CHECK(hs.certificate->method == bounds::Method::cutdisk);
  CHECK(hs.certificate->inputs.theta0 == 0.0);
  CHECK(hs.cutdisk->feasible);
  CHECK(hs.certificate->r == bounds::r_cutdisk(1.0, 0.0, hs.delta_in->upper));
  CHECK(hs.certificate->r == doctest::Approx(0.5 * (1 - 4 * 0.025)).epsilon(3e-3));

  const auto cp = run_pipeline(load_problem(kSpecs + "cutplane.json"), fast());
  REQUIRE(cp.certificate);
  CHECK(cp.certificate->r == 0.25);
  CHECK_FALSE(cp.cutdisk.has_value());

  const auto wide = run_pipeline(load_problem(kSpecs + "horseshoe_135.json"), fast());
  REQUIRE(wide.certificate);
  CHECK(wide.certificate->method == bounds::Method::cutdisk);
  CHECK(wide.certificate->r > bounds::r_cone(wide.cone->theta_sup));

  // Without checkers nothing applies; a cut-disk too small for the in-radius
  // breaks the precondition.
  PipelineOptions none = fast();
  none.run_cone = none.run_cutdisk = false;
  const auto l = run_pipeline(load_problem(kSpecs + "l_shape.json"), none);
  CHECK_FALSE(l.certificate);
  CHECK(l.bound_failure->code == ErrorCode::NoApplicableBound);
  PipelineOptions cut_only = fast();
  cut_only.run_cone = false;
  auto small = load_problem(kSpecs + "horseshoe_60.json");
  small.cutdisk = CutDiskParams{0.05, 0.0};
  const auto pre = run_pipeline(small, cut_only);
  REQUIRE(pre.cutdisk->feasible);
  CHECK(pre.bound_failure->code == ErrorCode::PreconditionViolated);
  for (const auto& v : pre.verdicts) CHECK(v.passed);
}

TEST_CASE("certificate is invariant under rigid motions") {
  const auto l = make_polygon({{0, 0}, {1, 0}, {1, 0.5}, {0.5, 0.5}, {0.5, 1}, {0, 1}});
  const double r0 = run_pipeline({"l", l, std::nullopt, std::nullopt}, fast()).certificate->r;
  for (const Placement pl : {Placement{{3, -1}, 0.7}, Placement{{-0.5, 2}, -2.9}, Placement{{0, 0}, kPi / 2}}) {
    const double r = run_pipeline({"l", moved(l, pl), std::nullopt, std::nullopt}, fast()).certificate->r;
    CHECK(std::abs(r - r0) <= 1e-9);
  }
}

TEST_CASE("verdicts are derived from the report alone") {
  PipelineOptions opt = fast();
  opt.h_list = {1.0 / 8, 1.0 / 16};
  const auto r = run_pipeline(load_problem(kSpecs + "square.json"), opt);
  REQUIRE(r.rayleigh.size() == 2);
  for (const auto& v : r.verdicts) CHECK_MESSAGE(v.passed, v.name);
  CHECK(std::any_of(r.verdicts.begin(), r.verdicts.end(), [](const auto& v) { return v.name.rfind("refinement_monotone", 0) == 0; }));

  const auto text = io::dump(to_json(r));
  const auto back = report_from_json(io::parse(text));
  CHECK(io::dump(to_json(back)) == text);
  const auto again = derive_verdicts(back);
  REQUIRE(again.size() == r.verdicts.size());
  for (std::size_t i = 0; i < again.size(); ++i) {
    CHECK(again[i].name == r.verdicts[i].name);
    CHECK(again[i].passed == r.verdicts[i].passed);
    CHECK(again[i].detail == r.verdicts[i].detail);
  }

  auto failed = [](const RunReport& rep, const std::string& prefix) {
    for (const auto& v : derive_verdicts(rep)) {
      if (v.name.rfind(prefix, 0) == 0 && !v.passed) return true;
    }
    return false;
  };
  auto tampered = back;
  tampered.certificate->r = 0.6;
  CHECK(failed(tampered, "certificate_reproduced"));
  tampered = back;
  tampered.rayleigh[1].estimate.lambda_h = 0.2;
  CHECK(failed(tampered, "hardy_consistency"));
  CHECK(failed(tampered, "refinement_monotone") == false);
  tampered.rayleigh[1].estimate.lambda_h = 0.9;
  CHECK(failed(tampered, "refinement_monotone"));
  tampered = back;
  tampered.problem.domain = make_polygon({{0, 0}, {1, 0}, {1, 0.5}, {0.5, 0.5}, {0.5, 1}, {0, 1}});
  CHECK(failed(tampered, "certificate_reproduced"));
}

TEST_CASE("csv artifacts are deterministic") {
  PipelineOptions opt = fast();
  opt.h_list = {1.0 / 8, 1.0 / 16};
  const auto p = load_problem(kSpecs + "horseshoe_60.json");
  const auto a = run_pipeline(p, opt);
  const auto b = run_pipeline(p, opt);
  CHECK(rayleigh_table(a.rayleigh).str() == rayleigh_table(b.rayleigh).str());
  CHECK(verdict_table(a.verdicts).str() == verdict_table(b.verdicts).str());
  CHECK(io::cone_witness_table(*a.cone).str() == io::cone_witness_table(*b.cone).str());
  CHECK(io::cutdisk_witness_table(*a.cutdisk).str() == io::cutdisk_witness_table(*b.cutdisk).str());
  CHECK(io::dump(to_json(a)) == io::dump(to_json(b)));
  CHECK(rayleigh_table(a.rayleigh).columns() ==
        std::vector<std::string>{"h", "lambda_h", "iterations", "residual", "certificate_margin", "support_radius",
                                 "n_unknowns", "eigen_residual"});
}

TEST_CASE("truncation radius sweep") {
  PipelineOptions opt = fast();
  opt.h_list = {1.0 / 8};
  opt.radii = {2.0, 4.0};
  const auto r = run_pipeline({"cp", CutPlane{}, std::nullopt, std::nullopt}, opt);
  REQUIRE(r.rayleigh.size() == 2);
  CHECK(*r.rayleigh[0].radius == 2.0);
  CHECK(*r.rayleigh[1].radius == 4.0);
  for (const auto& v : r.verdicts) CHECK_MESSAGE(v.passed, v.name);
}

TEST_CASE("koebe sweeps") {
  const auto k = koebe_sweep(conformal::koebe_map(), 0.25, 100);
  REQUIRE(k.size() == 101);
  CHECK(k[0].z == CPoint{0, 0});
  CHECK(std::abs(k[0].lhs - 0.25) <= 1e-12);
  CHECK(std::abs(k[0].rhs - 0.25) <= 1e-12);
  for (const auto& row : k) CHECK(row.passed);
  // The Koebe function is extremal at 0 and nowhere else on the sample.
  for (std::size_t i = 1; i < k.size(); ++i) CHECK(k[i].lhs >= k[i].rhs - 1e-12);
  CHECK_FALSE(koebe_sweep(conformal::koebe_map(), 0.26, 0)[0].passed);

  for (const auto& row : koebe_sweep(conformal::mobius_halfplane_map(), 0.5, 64)) CHECK(row.passed);
  for (const auto& row : koebe_sweep(conformal::halfplane_power_map(1.5), 0.25, 64)) CHECK(row.passed);
  CHECK(code_of([] { koebe_sweep(conformal::quarter_square_map(), 0.25, 4); }) == ErrorCode::InvalidParameters);

  const auto t = koebe_table(k).str();
  CHECK(t.rfind("# hardy koebe v1\nz_re,z_im,lhs,rhs,margin,passed\n", 0) == 0);
}
