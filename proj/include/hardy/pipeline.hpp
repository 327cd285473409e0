#pragma once

// spec -> conditions -> certificate -> variational cross-check -> report.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hardy/bounds.hpp"
#include "hardy/conditions.hpp"
#include "hardy/conformal.hpp"
#include "hardy/error.hpp"
#include "hardy/geometry.hpp"
#include "hardy/io.hpp"
#include "hardy/variational.hpp"

namespace hardy::pipeline {

using geometry::DomainSpec;

struct CutDiskParams {
  double a = 1.0;
  double theta0 = 0.0;
};

/// Spec file contents. A file holding a bare domain object is accepted too.
/// Horseshoes default to a = rho and theta0 = horseshoe_theta0(psi).
struct ProblemSpec {
  std::string name;
  DomainSpec domain;
  std::optional<DomainSpec> support;  // mesh region for the variational estimate
  std::optional<CutDiskParams> cutdisk;
};

io::json to_json(const ProblemSpec& p);
ProblemSpec problem_from_json(const io::json& j, const std::string& fallback_name = "domain");
ProblemSpec load_problem(const std::string& path);

/// Cut-disk parameters from the spec, else from the domain's structure.
std::optional<CutDiskParams> cutdisk_params(const ProblemSpec& p);

struct PipelineOptions {
  std::size_t cone_samples = 256;
  conditions::CutDiskOptions cutdisk{};
  bool run_cone = true;
  bool run_cutdisk = true;  // only when parameters are known and the domain is bounded
  std::vector<double> h_list;  // empty: no variational run
  std::vector<double> radii{4.0};  // truncation radii for unbounded domains
  double tol = 1e-8;
  double consistency_slack = 1e-6;
};

/// Grid spacing for the in-radius enclosure: a coarse pass at diag/256, then
/// a pass at lower/32 (floored at diag/8192) over the same box.
geometry::IntervalEstimate delta_in_estimate(const DomainSpec& d);

struct RayleighRun {
  std::optional<double> radius;  // set when the support is a truncation disk
  variational::RayleighEstimate estimate;
};

struct Verdict {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct BoundFailure {
  ErrorCode code = ErrorCode::NoApplicableBound;
  std::string message;
};

struct RunReport {
  ProblemSpec problem;
  std::optional<conditions::ConeReport> cone;
  std::optional<conditions::CutDiskReport> cutdisk;
  std::optional<geometry::IntervalEstimate> delta_in;
  bool convex = false;
  std::optional<bounds::BoundCertificate> certificate;
  std::optional<BoundFailure> bound_failure;
  std::vector<RayleighRun> rayleigh;
  std::vector<Verdict> verdicts;
  std::vector<std::string> warnings;
  std::vector<std::pair<std::string, double>> timings;  // seconds; serialised separately
  double consistency_slack = 1e-6;
};

/// Recomputes every verdict from the records in the report: the certificate
/// against the condition reports and closed forms, lambda_h >= r^2 - slack
/// for every estimate, and monotonicity along each refinement sequence.
std::vector<Verdict> derive_verdicts(const RunReport& r);

RunReport run_pipeline(const ProblemSpec& p, const PipelineOptions& opt);

/// Everything but timings.
io::json to_json(const RunReport& r);
RunReport report_from_json(const io::json& j);
io::json timings_json(const RunReport& r);

io::CsvTable rayleigh_table(const std::vector<RayleighRun>& runs);
io::CsvTable verdict_table(const std::vector<Verdict>& v);

// ---------------------------------------------------------------------------
// Koebe sweeps over a shipped map.

struct KoebeRow {
  geometry::CPoint z;
  double lhs = 0.0;  // delta(f(z))
  double rhs = 0.0;  // r (1 - |z|^2) |f'(z)| on the disk, 2 r Re z |f'(z)| on the half-plane
  bool passed = false;
};

/// Row 0 is the base point (0 on the disk, 1 on the half-plane); then n
/// stratified points. Disk maps are checked at z through koebe_check of
/// f composed with the disk automorphism sending 0 to z.
std::vector<KoebeRow> koebe_sweep(const conformal::TestMap& f, double r, std::size_t n);

io::CsvTable koebe_table(const std::vector<KoebeRow>& rows);

}  // namespace hardy::pipeline
