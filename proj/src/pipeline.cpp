#include "hardy/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <numbers>

#include "hardy/error.hpp"

namespace hardy::pipeline {

namespace {

using namespace geometry;
using io::json;

constexpr double kPi = std::numbers::pi;

[[noreturn]] void parse_fail(const std::string& what) { fail(ErrorCode::SpecParse, what); }

double num_field(const json& j, const char* key, const std::string& ctx) {
  const auto it = j.find(key);
  if (it == j.end() || !it->is_number()) parse_fail(ctx + ": '" + key + "' must be a number");
  return it->get<double>();
}

std::string fmt(double v) { return io::format_double(v); }

class Stopwatch {
 public:
  double lap() {
    const auto now = std::chrono::steady_clock::now();
    const double s = std::chrono::duration<double>(now - last_).count();
    last_ = now;
    return s;
  }

 private:
  std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

// Union-jack grids of rectilinear polygons nest under halving h.
bool nested_refinement(const DomainSpec& support) {
  const auto* poly = std::get_if<Polygon>(&support);
  if (!poly) return false;
  const auto& v = poly->vertices;
  const CPoint e = v[1] - v[0];
  const CPoint frame = e / std::abs(e);
  for (std::size_t i = 0; i < v.size(); ++i) {
    const CPoint d = (v[(i + 1) % v.size()] - v[i]) / frame;
    if (std::abs(d.real()) > 1e-12 * std::abs(d) && std::abs(d.imag()) > 1e-12 * std::abs(d)) return false;
  }
  return true;
}

std::optional<bounds::CutDiskInput> cutdisk_input(const RunReport& r) {
  if (!r.cutdisk || !r.delta_in) return std::nullopt;
  return bounds::CutDiskInput{*r.cutdisk, r.delta_in->upper};
}

}  // namespace

// ---------------------------------------------------------------------------

json to_json(const ProblemSpec& p) {
  json j = {{"name", p.name}, {"domain", io::to_json(p.domain)}};
  if (p.support) j["support"] = io::to_json(*p.support);
  if (p.cutdisk) j["cutdisk"] = {{"a", p.cutdisk->a}, {"theta0", p.cutdisk->theta0}};
  return j;
}

ProblemSpec problem_from_json(const json& j, const std::string& fallback_name) {
  if (!j.is_object()) parse_fail("spec: expected an object");
  if (j.contains("kind")) return {fallback_name, io::domain_from_json(j), std::nullopt, std::nullopt};
  for (const auto& [key, _] : j.items()) {
    if (key != "name" && key != "domain" && key != "support" && key != "cutdisk") parse_fail("spec: unknown key '" + key + "'");
  }
  ProblemSpec p;
  if (j.contains("name")) {
    if (!j["name"].is_string()) parse_fail("spec: 'name' must be a string");
    p.name = j["name"].get<std::string>();
  } else {
    p.name = fallback_name;
  }
  if (!j.contains("domain")) parse_fail("spec: missing 'domain'");
  p.domain = io::domain_from_json(j["domain"]);
  if (j.contains("support")) {
    p.support = io::domain_from_json(j["support"]);
    if (!is_bounded(*p.support)) parse_fail("spec: 'support' must be bounded");
  }
  if (j.contains("cutdisk")) {
    const auto& c = j["cutdisk"];
    if (!c.is_object()) parse_fail("spec: 'cutdisk' must be an object");
    for (const auto& [key, _] : c.items()) {
      if (key != "a" && key != "theta0") parse_fail("spec cutdisk: unknown key '" + key + "'");
    }
    const CutDiskParams params{num_field(c, "a", "spec cutdisk"), num_field(c, "theta0", "spec cutdisk")};
    if (!(params.a > 0.0) || !(std::abs(params.theta0) < kPi)) parse_fail("spec cutdisk: need a > 0 and |theta0| < pi");
    p.cutdisk = params;
  }
  return p;
}

ProblemSpec load_problem(const std::string& path) {
  std::string stem = path.substr(path.find_last_of('/') + 1);
  stem = stem.substr(0, stem.find('.'));
  return problem_from_json(io::read_json_file(path), stem);
}

std::optional<CutDiskParams> cutdisk_params(const ProblemSpec& p) {
  if (p.cutdisk) return p.cutdisk;
  if (const auto* hs = std::get_if<Horseshoe>(&p.domain)) return CutDiskParams{hs->rho, conditions::horseshoe_theta0(hs->psi)};
  return std::nullopt;
}

IntervalEstimate delta_in_estimate(const DomainSpec& d) {
  const auto box = bounding_box(d);
  if (!box) fail(ErrorCode::UnboundedDomainNoRegion, "in-radius needs a bounded domain");
  const double diag = std::abs(box->hi - box->lo);
  const auto coarse = in_radius(d, box, diag / 256);
  return in_radius(d, box, std::max(coarse.lower / 32, diag / 8192));
}

// ---------------------------------------------------------------------------

std::vector<Verdict> derive_verdicts(const RunReport& r) {
  std::vector<Verdict> out;

  if (r.cone && !r.cone->full_circle) {
    const double t = r.cone->theta_sup;
    out.push_back({"cone_theta_range", t >= kPi / 2 && t <= kPi, "theta_sup = " + fmt(t)});
  }
  if (r.cutdisk && r.cutdisk->feasible) {
    const bool all = std::all_of(r.cutdisk->witnesses.begin(), r.cutdisk->witnesses.end(),
                                 [](const auto& w) { return w.found && w.margin > 0.0; });
    out.push_back({"cutdisk_witness_margins", all && !r.cutdisk->witnesses.empty(),
                   std::to_string(r.cutdisk->witnesses.size()) + " witnesses"});
  }

  // The certificate must be what best_bound returns on the recorded inputs.
  {
    Verdict v{"certificate_reproduced", false, ""};
    try {
      const auto c = bounds::best_bound(r.cone, cutdisk_input(r), is_convex(r.problem.domain));
      if (r.certificate) {
        v.passed = c.method == r.certificate->method && c.r == r.certificate->r && c.r_squared == r.certificate->r_squared;
        v.detail = std::string(bounds::to_string(c.method)) + " r = " + fmt(c.r);
      } else {
        v.detail = "records give a certificate but none is reported";
      }
    } catch (const Error& e) {
      v.passed = !r.certificate && r.bound_failure && r.bound_failure->code == e.code();
      v.detail = std::string(to_string(e.code()));
    }
    out.push_back(v);
  }

  if (r.certificate) {
    const double r2 = r.certificate->r_squared;
    for (const auto& run : r.rayleigh) {
      const auto& e = run.estimate;
      std::string name = "hardy_consistency h=" + fmt(e.h);
      if (run.radius) name += " R=" + fmt(*run.radius);
      out.push_back({name, e.lambda_h >= r2 - r.consistency_slack, "lambda_h - r^2 = " + fmt(e.lambda_h - r2)});
    }
  }

  const DomainSpec support = r.problem.support.value_or(r.problem.domain);
  if (nested_refinement(support)) {
    std::vector<const variational::RayleighEstimate*> seq;
    for (const auto& run : r.rayleigh) seq.push_back(&run.estimate);
    std::sort(seq.begin(), seq.end(), [](const auto* a, const auto* b) { return a->h > b->h; });
    for (std::size_t i = 1; i < seq.size(); ++i) {
      if (seq[i - 1]->h != 2 * seq[i]->h) continue;
      out.push_back({"refinement_monotone h=" + fmt(seq[i]->h), seq[i]->lambda_h <= seq[i - 1]->lambda_h + 1e-10,
                     fmt(seq[i - 1]->lambda_h) + " -> " + fmt(seq[i]->lambda_h)});
    }
  }
  return out;
}

RunReport run_pipeline(const ProblemSpec& p, const PipelineOptions& opt) {
  RunReport r;
  r.problem = p;
  r.consistency_slack = opt.consistency_slack;
  r.convex = is_convex(p.domain);
  Stopwatch clock;

  if (opt.run_cone) {
    r.cone = conditions::check_cone_condition(p.domain, opt.cone_samples);
    r.timings.emplace_back("cone", clock.lap());
    if (r.cone->full_circle) r.warnings.push_back("cone condition fails at some boundary point");
  }

  if (opt.run_cutdisk) {
    if (const auto params = cutdisk_params(p)) {
      if (is_bounded(p.domain)) {
        r.delta_in = delta_in_estimate(p.domain);
        r.timings.emplace_back("delta_in", clock.lap());
        r.cutdisk = conditions::check_cutdisk_condition(p.domain, params->a, params->theta0, opt.cutdisk);
        r.timings.emplace_back("cutdisk", clock.lap());
        if (!r.cutdisk->feasible) r.warnings.push_back("cut-disk placement not found at this resolution");
      } else {
        r.warnings.push_back("cut-disk constant needs a finite in-radius; skipped for an unbounded domain");
      }
    }
  }

  try {
    r.certificate = bounds::best_bound(r.cone, cutdisk_input(r), r.convex);
  } catch (const Error& e) {
    r.bound_failure = BoundFailure{e.code(), e.what()};
  }
  r.timings.emplace_back("bound", clock.lap());

  if (!opt.h_list.empty()) {
    std::vector<std::pair<std::optional<double>, DomainSpec>> supports;
    if (p.support) {
      supports.emplace_back(std::nullopt, *p.support);
    } else if (is_bounded(p.domain)) {
      supports.emplace_back(std::nullopt, p.domain);
    } else {
      for (double radius : opt.radii) supports.emplace_back(radius, variational::default_support(p.domain, radius));
    }
    for (const auto& [radius, support] : supports) {
      for (auto& e : variational::refinement_study(p.domain, support, opt.h_list, opt.tol)) {
        if (r.certificate) variational::compare_with_certificate(e, r.certificate->r);
        r.rayleigh.push_back({radius, std::move(e)});
      }
    }
    r.timings.emplace_back("rayleigh", clock.lap());
  }

  r.verdicts = derive_verdicts(r);
  return r;
}

// ---------------------------------------------------------------------------

json to_json(const RunReport& r) {
  json j = {{"format", "hardy-report"}, {"version", 1}, {"problem", to_json(r.problem)}};
  j["cone"] = r.cone ? io::to_json(*r.cone) : json(nullptr);
  j["cutdisk"] = r.cutdisk ? io::to_json(*r.cutdisk) : json(nullptr);
  j["delta_in"] = r.delta_in ? io::to_json(*r.delta_in) : json(nullptr);
  j["convex"] = r.convex;
  j["certificate"] = r.certificate ? io::to_json(*r.certificate) : json(nullptr);
  j["bound_failure"] = r.bound_failure
                           ? json{{"code", std::string(to_string(r.bound_failure->code))}, {"message", r.bound_failure->message}}
                           : json(nullptr);
  json runs = json::array();
  for (const auto& run : r.rayleigh) {
    json e = io::to_json(run.estimate);
    e["support_radius"] = run.radius ? json(*run.radius) : json(nullptr);
    runs.push_back(e);
  }
  j["rayleigh"] = runs;
  j["consistency_slack"] = r.consistency_slack;
  json verdicts = json::array();
  for (const auto& v : r.verdicts) verdicts.push_back({{"name", v.name}, {"passed", v.passed}, {"detail", v.detail}});
  j["verdicts"] = verdicts;
  j["warnings"] = r.warnings;
  return j;
}

RunReport report_from_json(const json& j) try {
  if (!j.is_object() || j.value("format", "") != "hardy-report") parse_fail("not a hardy report");
  RunReport r;
  r.problem = problem_from_json(j.at("problem"));
  if (!j.at("cone").is_null()) r.cone = io::cone_report_from_json(j["cone"]);
  if (!j.at("cutdisk").is_null()) r.cutdisk = io::cutdisk_report_from_json(j["cutdisk"]);
  if (!j.at("delta_in").is_null()) r.delta_in = io::interval_from_json(j["delta_in"]);
  r.convex = j.at("convex").get<bool>();
  if (!j.at("certificate").is_null()) r.certificate = io::certificate_from_json(j["certificate"]);
  if (!j.at("bound_failure").is_null()) {
    const auto code = j["bound_failure"].at("code").get<std::string>();
    BoundFailure f{ErrorCode::NoApplicableBound, j["bound_failure"].at("message").get<std::string>()};
    f.code = code == to_string(ErrorCode::PreconditionViolated) ? ErrorCode::PreconditionViolated : ErrorCode::NoApplicableBound;
    r.bound_failure = f;
  }
  for (const auto& e : j.at("rayleigh")) {
    json copy = e;
    std::optional<double> radius;
    if (copy.contains("support_radius")) {
      if (!copy["support_radius"].is_null()) radius = copy["support_radius"].get<double>();
      copy.erase("support_radius");
    }
    r.rayleigh.push_back({radius, io::rayleigh_from_json(copy)});
  }
  r.consistency_slack = j.at("consistency_slack").get<double>();
  for (const auto& v : j.at("verdicts")) {
    r.verdicts.push_back({v.at("name").get<std::string>(), v.at("passed").get<bool>(), v.at("detail").get<std::string>()});
  }
  r.warnings = j.at("warnings").get<std::vector<std::string>>();
  return r;
} catch (const json::exception& e) {
  parse_fail(std::string("report: ") + e.what());
}

json timings_json(const RunReport& r) {
  json j = json::object();
  for (const auto& [stage, seconds] : r.timings) j[stage] = seconds;
  return j;
}

io::CsvTable rayleigh_table(const std::vector<RayleighRun>& runs) {
  io::CsvTable t("rayleigh", 1,
                 {"h", "lambda_h", "iterations", "residual", "certificate_margin", "support_radius", "n_unknowns",
                  "eigen_residual"});
  for (const auto& run : runs) {
    const auto& e = run.estimate;
    t.add_row({fmt(e.h), fmt(e.lambda_h), std::to_string(e.iterations), fmt(e.residual),
               e.certificate_compared ? fmt(e.certificate_compared->margin) : "", run.radius ? fmt(*run.radius) : "",
               std::to_string(e.n_unknowns), fmt(e.eigen_residual)});
  }
  return t;
}

io::CsvTable verdict_table(const std::vector<Verdict>& verdicts) {
  io::CsvTable t("verdicts", 1, {"name", "passed", "detail"});
  for (const auto& v : verdicts) {
    std::string detail = v.detail;
    std::replace(detail.begin(), detail.end(), ',', ';');
    t.add_row({v.name, v.passed ? "1" : "0", detail});
  }
  return t;
}

// ---------------------------------------------------------------------------

std::vector<KoebeRow> koebe_sweep(const conformal::TestMap& f, double r, std::size_t n) {
  const auto n_r = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n))));
  const std::size_t n_a = n_r == 0 ? 0 : (n + n_r - 1) / n_r;
  std::vector<KoebeRow> rows;

  if (std::holds_alternative<Disk>(f.source)) {
    auto at = [&](CPoint z) {
      const double s = 1.0 - std::norm(z);
      conformal::TestMap g{f.name, f.source,
                           [&f, z](CPoint w) { return f.eval((w + z) / (1.0 + std::conj(z) * w)); },
                           [&f, z, s](CPoint w) {
                             const CPoint q = 1.0 + std::conj(z) * w;
                             return f.deriv((w + z) / q) * s / (q * q);
                           },
                           f.image};
      const auto k = conformal::koebe_check(g, r);
      const double lhs = boundary_distance(f.image, f.eval(z));
      rows.push_back({z, lhs, r * s * std::abs(f.deriv(z)), k.passed});
    };
    at({0.0, 0.0});
    for (std::size_t k = 0; k < n; ++k) {
      const double rad = 0.9 * (static_cast<double>(k / n_a) + 0.5) / static_cast<double>(n_r);
      const double ang = 2 * kPi * (static_cast<double>(k % n_a) + 0.5) / static_cast<double>(n_a);
      at(std::polar(rad, ang));
    }
  } else if (std::holds_alternative<HalfPlane>(f.source)) {
    auto at = [&](CPoint z) {
      const auto t = conformal::halfplane_transport_check(f, z, r);
      rows.push_back({z, t.lhs, t.rhs, t.passed});
    };
    at({1.0, 0.0});
    for (std::size_t k = 0; k < n; ++k) {
      const double x = 2.0 * (static_cast<double>(k / n_a) + 0.5) / static_cast<double>(n_r);
      const double y = -2.0 + 4.0 * (static_cast<double>(k % n_a) + 0.5) / static_cast<double>(n_a);
      at({x, y});
    }
  } else {
    fail(ErrorCode::InvalidParameters, "koebe sweep needs a map on the unit disk or the right half-plane");
  }
  return rows;
}

io::CsvTable koebe_table(const std::vector<KoebeRow>& rows) {
  io::CsvTable t("koebe", 1, {"z_re", "z_im", "lhs", "rhs", "margin", "passed"});
  for (const auto& row : rows) {
    t.add_row({fmt(row.z.real()), fmt(row.z.imag()), fmt(row.lhs), fmt(row.rhs), fmt(row.lhs - row.rhs),
               row.passed ? "1" : "0"});
  }
  return t;
}

}  // namespace hardy::pipeline
