// hardy: certified Hardy constants for planar domains, with numerical
// cross-checks.
//
// Exit codes: 0 ok, 1 other error, 2 spec parse / invalid parameters,
// 3 precondition violated, 4 no applicable bound, 5 a report verdict failed.

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "hardy/error.hpp"
#include "hardy/io.hpp"
#include "hardy/pipeline.hpp"

namespace fs = std::filesystem;
using namespace hardy;

namespace {

struct Flags {
  std::string spec;
  std::string support;
  std::string out = ".";
  std::string h = "1/16,1/32";
  std::string radius = "4";
  std::size_t samples = 256;
  double tol = 1e-8;
  bool svg = false;
  std::optional<double> a;
  std::optional<double> theta0;
  std::string map = "koebe";
  std::optional<double> theta;
  std::string r_source = "cone";
  std::optional<double> r;
  std::string checks = "cone,cutdisk";
};

double parse_number(const std::string& tok) {
  try {
    std::size_t used = 0;
    const auto slash = tok.find('/');
    double v = 0.0;
    if (slash == std::string::npos) {
      v = std::stod(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
    } else {
      const std::string num = tok.substr(0, slash);
      const std::string den = tok.substr(slash + 1);
      std::size_t un = 0;
      std::size_t ud = 0;
      v = std::stod(num, &un) / std::stod(den, &ud);
      if (un != num.size() || ud != den.size()) throw std::invalid_argument(tok);
    }
    return v;
  } catch (const std::logic_error&) {
    fail(ErrorCode::InvalidParameters, "cannot read number '" + tok + "'");
  }
}

// "1/16,1/32" or "0.0625 0.03125".
std::vector<double> parse_list(const std::string& s) {
  std::string t = s;
  for (char& c : t) {
    if (c == ',' || c == ';') c = ' ';
  }
  std::istringstream in(t);
  std::vector<double> out;
  for (std::string tok; in >> tok;) out.push_back(parse_number(tok));
  if (out.empty()) fail(ErrorCode::InvalidParameters, "empty list '" + s + "'");
  return out;
}

std::string path_in(const Flags& f, const std::string& name) { return (fs::path(f.out) / name).string(); }

void write(const Flags& f, const std::string& name, const std::string& text) {
  io::write_text_file(path_in(f, name), text);
  std::cout << "wrote " << path_in(f, name) << "\n";
}

pipeline::ProblemSpec load(const Flags& f) {
  auto p = pipeline::load_problem(f.spec);
  if (!f.support.empty()) {
    p.support = io::domain_from_json(io::read_json_file(f.support));
    if (!geometry::is_bounded(*p.support)) fail(ErrorCode::SpecParse, "support must be bounded");
  }
  if (f.a || f.theta0) {
    auto params = pipeline::cutdisk_params(p).value_or(pipeline::CutDiskParams{});
    if (f.a) params.a = *f.a;
    if (f.theta0) params.theta0 = *f.theta0;
    p.cutdisk = params;
  }
  return p;
}

pipeline::PipelineOptions options(const Flags& f, bool rayleigh) {
  pipeline::PipelineOptions opt;
  opt.cone_samples = f.samples;
  opt.cutdisk.n_boundary = f.samples;
  opt.tol = f.tol;
  opt.run_cone = opt.run_cutdisk = false;
  std::string t = f.checks;
  for (char& c : t) {
    if (c == ',') c = ' ';
  }
  std::istringstream in(t);
  for (std::string tok; in >> tok;) {
    if (tok == "cone") {
      opt.run_cone = true;
    } else if (tok == "cutdisk") {
      opt.run_cutdisk = true;
    } else if (tok != "none") {
      fail(ErrorCode::InvalidParameters, "--checks takes cone, cutdisk or none");
    }
  }
  if (rayleigh) {
    opt.h_list = parse_list(f.h);
    opt.radii = parse_list(f.radius);
  }
  return opt;
}

void print_certificate(const std::string& name, const bounds::BoundCertificate& c) {
  std::printf("%s: r = %.17g, r^2 = %.17g (%s)\n", name.c_str(), c.r, c.r_squared, std::string(bounds::to_string(c.method)).c_str());
  auto row = [](const char* k, const std::string& v) { std::printf("  %-10s %s\n", k, v.c_str()); };
  auto opt = [](const std::optional<double>& v) { return v ? io::format_double(*v) : std::string("-"); };
  row("method", std::string(bounds::to_string(c.method)));
  row("r", io::format_double(c.r));
  row("r^2", io::format_double(c.r_squared));
  row("theta", opt(c.inputs.theta));
  row("a", opt(c.inputs.a));
  row("theta0", opt(c.inputs.theta0));
  row("delta_in", opt(c.inputs.delta_in));
  row("notes", c.notes);
}

[[noreturn]] void rethrow_bound_failure(const pipeline::RunReport& r) {
  throw Error(r.bound_failure->code, r.bound_failure->message);
}

int cmd_bound(const Flags& f) {
  auto opt = options(f, false);
  const auto r = pipeline::run_pipeline(load(f), opt);
  for (const auto& w : r.warnings) std::cerr << "warning: " << w << "\n";
  if (!r.certificate) rethrow_bound_failure(r);
  print_certificate(r.problem.name, *r.certificate);
  write(f, "certificate.json", io::dump(io::to_json(*r.certificate)));
  return 0;
}

int cmd_check_conditions(const Flags& f) {
  const auto r = pipeline::run_pipeline(load(f), options(f, false));
  for (const auto& w : r.warnings) std::cerr << "warning: " << w << "\n";
  if (r.cone) {
    std::printf("cone: theta_sup = %.17g, holds = %s, samples = %zu\n", r.cone->theta_sup, r.cone->holds() ? "yes" : "no",
                r.cone->n_boundary_samples);
    write(f, "cone_witnesses.csv", io::cone_witness_table(*r.cone).str());
  }
  if (r.cutdisk) {
    std::printf("cut-disk: a = %.17g, theta0 = %.17g, feasible = %s\n", r.cutdisk->a, r.cutdisk->theta0,
                r.cutdisk->feasible ? "yes" : "not found at this resolution");
    write(f, "cutdisk_witnesses.csv", io::cutdisk_witness_table(*r.cutdisk).str());
  }
  write(f, "conditions.json", io::dump(pipeline::to_json(r)));
  if (f.svg) write(f, "conditions.svg", io::conditions_svg(r.problem.domain, r.cone, r.cutdisk));
  return 0;
}

int cmd_koebe_verify(const Flags& f) {
  const auto map = conformal::find_map(f.map, f.a.value_or(1.0), f.theta);
  if (!map) fail(ErrorCode::InvalidParameters, "unknown map '" + f.map + "'");
  double r = 0.0;
  if (f.r_source == "explicit") {
    if (!f.r) fail(ErrorCode::InvalidParameters, "--r-source explicit needs --r");
    r = *f.r;
  } else if (f.r_source == "cone" || f.r_source == "cutdisk") {
    pipeline::ProblemSpec image{map->name + "-image", map->image.shape, std::nullopt, std::nullopt};
    pipeline::PipelineOptions opt;
    opt.cone_samples = f.samples;
    opt.cutdisk.n_boundary = f.samples;
    opt.run_cone = f.r_source == "cone";
    opt.run_cutdisk = f.r_source == "cutdisk";
    if (opt.run_cutdisk) {
      if (!f.theta0) fail(ErrorCode::InvalidParameters, "--r-source cutdisk needs --theta0 (and --a)");
      image.cutdisk = pipeline::CutDiskParams{f.a.value_or(1.0), *f.theta0};
    }
    const auto rep = pipeline::run_pipeline(image, opt);
    if (!rep.certificate) rethrow_bound_failure(rep);
    r = rep.certificate->r;
  } else {
    fail(ErrorCode::InvalidParameters, "--r-source must be cone, cutdisk or explicit");
  }
  const auto rows = pipeline::koebe_sweep(*map, r, f.samples);
  std::size_t failed = 0;
  for (const auto& row : rows) failed += row.passed ? 0 : 1;
  std::printf("%s: r = %.17g, delta(f(z0)) = %.17g, r-scaled derivative = %.17g, %zu/%zu points pass\n", map->name.c_str(), r,
              rows.front().lhs, rows.front().rhs, rows.size() - failed, rows.size());
  write(f, "koebe.csv", pipeline::koebe_table(rows).str());
  if (f.svg && std::holds_alternative<geometry::Disk>(map->source)) write(f, "koebe.svg", io::koebe_svg(*map, r));
  return failed == 0 ? 0 : 5;
}

int cmd_rayleigh(const Flags& f) {
  const auto r = pipeline::run_pipeline(load(f), options(f, true));
  for (const auto& w : r.warnings) std::cerr << "warning: " << w << "\n";
  const auto table = pipeline::rayleigh_table(r.rayleigh);
  std::cout << table.str();
  write(f, "rayleigh.csv", table.str());
  if (f.svg) {
    for (std::size_t i = 0; i < r.rayleigh.size(); ++i) write(f, "mode_" + std::to_string(i) + ".svg", io::mode_svg(r.rayleigh[i].estimate));
  }
  return 0;
}

int cmd_report(const Flags& f) {
  const auto r = pipeline::run_pipeline(load(f), options(f, true));
  for (const auto& w : r.warnings) std::cerr << "warning: " << w << "\n";
  write(f, "report.json", io::dump(pipeline::to_json(r)));
  write(f, "timings.json", io::dump(pipeline::timings_json(r)));
  if (r.cone) write(f, "cone_witnesses.csv", io::cone_witness_table(*r.cone).str());
  if (r.cutdisk) write(f, "cutdisk_witnesses.csv", io::cutdisk_witness_table(*r.cutdisk).str());
  if (r.certificate) write(f, "certificate.csv", io::certificate_table(*r.certificate).str());
  write(f, "rayleigh.csv", pipeline::rayleigh_table(r.rayleigh).str());
  write(f, "verdicts.csv", pipeline::verdict_table(r.verdicts).str());
  if (f.svg) {
    write(f, "conditions.svg", io::conditions_svg(r.problem.domain, r.cone, r.cutdisk));
    if (!r.rayleigh.empty()) write(f, "mode.svg", io::mode_svg(r.rayleigh.back().estimate));
  }
  bool all = true;
  for (const auto& v : r.verdicts) {
    std::printf("%-4s %s  (%s)\n", v.passed ? "PASS" : "FAIL", v.name.c_str(), v.detail.c_str());
    all = all && v.passed;
  }
  if (!r.certificate) rethrow_bound_failure(r);
  print_certificate(r.problem.name, *r.certificate);
  return all ? 0 : 5;
}

int exit_code(ErrorCode c) {
  switch (c) {
    case ErrorCode::SpecParse:
    case ErrorCode::InvalidParameters: return 2;
    case ErrorCode::PreconditionViolated: return 3;
    case ErrorCode::NoApplicableBound: return 4;
    default: return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hardy constants for planar domains: certificates, condition checks and variational cross-checks"};
  app.require_subcommand(1);
  app.set_help_flag("--help", "print help");  // -h would clash with --h
  Flags f;

  auto common = [&](CLI::App* sub, bool needs_spec) {
    auto* spec = sub->add_option("--spec", f.spec, "domain spec (JSON)");
    if (needs_spec) spec->required()->check(CLI::ExistingFile);
    sub->add_option("--out", f.out, "output directory");
    sub->add_option("--samples", f.samples, "boundary samples (koebe-verify: sweep points)")->check(CLI::PositiveNumber);
    sub->add_flag("--svg", f.svg, "also write SVG figures");
    sub->add_option("--a", f.a, "cut-disk radius a");
    sub->add_option("--theta0", f.theta0, "cut-disk opening theta0");
    if (needs_spec) sub->add_option("--checks", f.checks, "condition checkers to run: cone,cutdisk (or none)");
  };
  auto variational = [&](CLI::App* sub) {
    sub->add_option("--h", f.h, "mesh sizes, e.g. \"1/16,1/32\"");
    sub->add_option("--radius", f.radius, "truncation radii for unbounded domains, e.g. \"2,4,8\"");
    sub->add_option("--tol", f.tol, "inverse-iteration tolerance");
    sub->add_option("--support", f.support, "support domain spec (JSON)")->check(CLI::ExistingFile);
  };

  auto* bound = app.add_subcommand("bound", "certificate for a domain");
  common(bound, true);
  auto* check = app.add_subcommand("check-conditions", "exterior cone and cut-disk conditions");
  common(check, true);
  auto* koebe = app.add_subcommand("koebe-verify", "Koebe-type estimates on a shipped map");
  common(koebe, false);
  koebe->add_option("--map", f.map, "identity, koebe, mobius, sector, cutdisk, halfplane-identity, halfplane-power");
  koebe->add_option("--theta", f.theta, "map parameter (sector / cut-disk opening)");
  koebe->add_option("--r-source", f.r_source, "cone, cutdisk or explicit");
  koebe->add_option("--r", f.r, "explicit r");
  auto* rayleigh = app.add_subcommand("rayleigh", "finite-element Hardy quotient");
  common(rayleigh, true);
  variational(rayleigh);
  auto* report = app.add_subcommand("report", "full pipeline with verdicts");
  common(report, true);
  variational(report);

  CLI11_PARSE(app, argc, argv);

  try {
    fs::create_directories(f.out);
    if (bound->parsed()) return cmd_bound(f);
    if (check->parsed()) return cmd_check_conditions(f);
    if (koebe->parsed()) return cmd_koebe_verify(f);
    if (rayleigh->parsed()) return cmd_rayleigh(f);
    if (report->parsed()) return cmd_report(f);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
