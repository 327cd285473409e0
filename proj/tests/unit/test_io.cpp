#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <random>

#include "hardy/error.hpp"
#include "hardy/io.hpp"

using namespace hardy;
using namespace hardy::geometry;
using hardy::io::json;

namespace {

constexpr double kPi = std::numbers::pi;

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InvalidParameters;
}

bool same(const DomainSpec& a, const DomainSpec& b) {
  if (a.index() != b.index()) return false;
  return std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        const auto& y = std::get<T>(b);
        if constexpr (std::is_same_v<T, Polygon>) return x.vertices == y.vertices;
        if constexpr (std::is_same_v<T, Sector>) return x.theta == y.theta;
        if constexpr (std::is_same_v<T, CutDiskExterior>) return x.a == y.a && x.theta == y.theta;
        if constexpr (std::is_same_v<T, Horseshoe>) return x.rho == y.rho && x.delta == y.delta && x.psi == y.psi;
        if constexpr (std::is_same_v<T, Disk>) return x.center == y.center && x.radius == y.radius;
        return true;
      },
      a);
}

DomainSpec through_text(const DomainSpec& d) { return io::domain_from_json(io::parse(io::dump(io::to_json(d)))); }

}  // namespace

TEST_CASE("domain JSON encoding") {
  const auto j = io::to_json(Horseshoe{1, 0.05, kPi / 3});
  CHECK(j.dump() == R"({"kind":"horseshoe","rho":1.0,"delta":0.05,"psi":1.0471975511965976})");
  CHECK(io::to_json(CutPlane{}).dump() == R"({"kind":"cutplane"})");
  CHECK(io::to_json(Disk{{1, -2}, 0.5}).dump() == R"({"kind":"disk","center":[1.0,-2.0],"radius":0.5})");
  // Clockwise input comes back counter-clockwise.
  const auto p = io::domain_from_json(json::parse(R"({"kind":"polygon","vertices":[[0,0],[0,1],[1,1],[1,0]]})"));
  CHECK(polygon_signed_area(std::get<Polygon>(p).vertices) > 0);
  // Disk centre defaults to the origin.
  CHECK(same(io::domain_from_json(json::parse(R"({"kind":"disk","radius":2})")), Disk{{0, 0}, 2}));
}

TEST_CASE("domain round trip is the identity") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 200; ++k) {
    const double s = 0.01 + 10 * u(rng);
    std::vector<DomainSpec> ds{
        Sector{kPi * (0.01 + 0.99 * u(rng))},
        CutPlane{},
        CutDiskExterior{s, 0.999 * kPi * u(rng)},
        Horseshoe{s, s * u(rng) + 1e-3, 0.01 + 3.1 * u(rng)},
        Disk{{s * u(rng) - 3, -s * u(rng)}, s},
        HalfPlane{},
        make_polygon({{0, 0}, {s, 0}, {s * (1 + u(rng)), s * u(rng) + 0.1}, {0.3 * s * u(rng), s}}),
    };
    for (const auto& d : ds) {
      CHECK(same(through_text(d), d));
      CHECK(io::to_json(through_text(d)) == io::to_json(d));
    }
  }
}

TEST_CASE("domain parsing is strict") {
  auto code = [](const char* text) { return code_of([&] { io::domain_from_json(json::parse(text)); }); };
  CHECK(code(R"({"kind":"disk","radius":-1})") == ErrorCode::SpecParse);
  CHECK(code(R"({"kind":"disk","radius":1,"radious":2})") == ErrorCode::SpecParse);
  CHECK(code(R"({"kind":"horseshoe","rho":1,"delta":0.1})") == ErrorCode::SpecParse);
  CHECK(code(R"({"kind":"sector","theta":"pi"})") == ErrorCode::SpecParse);
  CHECK(code(R"({"kind":"sector","theta":4})") == ErrorCode::SpecParse);
  CHECK(code(R"({"kind":"annulus"})") == ErrorCode::SpecParse);
  CHECK(code(R"({"kind":"polygon","vertices":[[0,0],[1,1],[1,0],[0,1]]})") == ErrorCode::SpecParse);
  CHECK(code(R"({"kind":"polygon","vertices":[[0,0],[1]]})") == ErrorCode::SpecParse);
  CHECK(code(R"([1,2])") == ErrorCode::SpecParse);
  CHECK(code_of([] { io::parse("{\"kind\": "); }) == ErrorCode::SpecParse);
  CHECK(code_of([] { io::read_json_file("/nonexistent/spec.json"); }) == ErrorCode::SpecParse);
}

TEST_CASE("report records round trip") {
  const auto cone = conditions::check_cone_condition(make_polygon({{0, 0}, {1, 0}, {1, 0.5}, {0.5, 0.5}, {0.5, 1}, {0, 1}}), 64);
  const auto back = io::cone_report_from_json(io::parse(io::dump(io::to_json(cone))));
  CHECK(back.theta_sup == cone.theta_sup);
  CHECK(back.witnesses.size() == cone.witnesses.size());
  CHECK(io::to_json(back) == io::to_json(cone));

  conditions::CutDiskOptions opt;
  opt.n_boundary = 16;
  const auto cut = conditions::check_cutdisk_condition(Horseshoe{1, 0.05, kPi / 3}, 1.0, 0.0, opt);
  CHECK(io::to_json(io::cutdisk_report_from_json(io::parse(io::dump(io::to_json(cut))))) == io::to_json(cut));

  const auto cert = bounds::best_bound(cone, std::nullopt, false);
  const auto cback = io::certificate_from_json(io::parse(io::dump(io::to_json(cert))));
  CHECK(cback.method == cert.method);
  CHECK(cback.r == cert.r);
  CHECK(cback.inputs.theta == cert.inputs.theta);
  CHECK_FALSE(cback.inputs.a.has_value());
  CHECK(io::to_json(cback) == io::to_json(cert));

  variational::RayleighEstimate e;
  e.h = 0.0625;
  e.lambda_h = 0.1 + 0.2;
  e.iterations = 17;
  e.certificate_compared = variational::CertificateComparison{0.25, e.lambda_h - 0.25};
  const auto eback = io::rayleigh_from_json(io::parse(io::dump(io::to_json(e))));
  CHECK(eback.lambda_h == e.lambda_h);
  CHECK(eback.certificate_compared->margin == e.certificate_compared->margin);
}

TEST_CASE("csv format") {
  CHECK(io::format_double(0.0625) == "0.0625");
  CHECK(io::format_double(0.1) == "0.10000000000000001");
  CHECK(io::format_double(std::nan("")) == "");
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1e3, 1e3);
  for (int k = 0; k < 1000; ++k) {
    const double v = u(rng) * std::pow(10.0, k % 40 - 20);
    CHECK(std::strtod(io::format_double(v).c_str(), nullptr) == v);
  }

  io::CsvTable t("demo", 3, {"a", "b"});
  t.add_row({"1", "x"});
  CHECK(t.str() == "# hardy demo v3\na,b\n1,x\n");
  CHECK(code_of([&] { t.add_row({"1"}); }) == ErrorCode::InvalidParameters);

  const auto cone = conditions::check_cone_condition(make_polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}}), 32);
  const auto a = io::cone_witness_table(cone).str();
  CHECK(a == io::cone_witness_table(conditions::check_cone_condition(make_polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}}), 32)).str());
  CHECK(a.rfind("# hardy cone_witnesses v1\nw_re,w_im,theta,phi,full_circle\n", 0) == 0);
}

TEST_CASE("svg output") {
  const Horseshoe hs{1, 0.05, kPi / 3};
  conditions::CutDiskOptions opt;
  opt.n_boundary = 16;
  const auto svg = io::conditions_svg(hs, conditions::check_cone_condition(hs, 32),
                                      conditions::check_cutdisk_condition(hs, 1.0, 0.0, opt));
  CHECK(svg.rfind("<svg ", 0) == 0);
  CHECK(svg.find("</svg>") != std::string::npos);
  CHECK(svg.find("<circle") != std::string::npos);
  // Outline pieces: two arcs and two segments.
  CHECK(io::outline(hs).size() == 4);
  CHECK(io::outline(CutPlane{}, 3.0).size() == 2);
  CHECK(io::koebe_svg(conformal::koebe_map(), 0.25).find("</svg>") != std::string::npos);
}
