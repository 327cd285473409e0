#pragma once

// P1 finite-element upper estimates of the sharp Hardy constant
//   inf  int |grad u|^2 / int u^2/delta^2
// with delta measured in the (possibly unbounded) distance domain and u
// supported on a bounded mesh region.

#include <Eigen/SparseCore>
#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "hardy/geometry.hpp"

namespace hardy::variational {

using geometry::CPoint;
using geometry::DomainSpec;

struct TriMesh {
  std::vector<CPoint> vertices;
  std::vector<std::array<int, 3>> triangles;  // counter-clockwise
  std::vector<bool> is_boundary;
  double h = 0.0;
};

/// Structured meshes: frame-aligned union-jack grids for rectilinear polygons
/// (other polygons: max-min-angle triangulation, red-refined), concentric
/// rings for disks with a node column along the ray arg = pi, a mapped polar
/// grid for horseshoes. Boundary flags mark vertices on the support boundary.
/// Throws MeshFailure when the minimum angle drops below 20 degrees.
TriMesh triangulate(const DomainSpec& support, double h);

double min_angle(const TriMesh& m);  // radians
double max_edge(const TriMesh& m);

/// Stiffness and 1/delta^2-weighted mass matrices on the free vertices:
/// those not flagged as boundary and lying inside the distance domain.
struct Assembly {
  Eigen::SparseMatrix<double> A;
  Eigen::SparseMatrix<double> B;
  std::vector<int> dof;  // vertex -> unknown index, -1 when eliminated
};

Assembly assemble(const TriMesh& mesh, const DomainSpec& distance_domain);

struct EigenResult {
  double lambda = 0.0;
  std::size_t iterations = 0;
  double residual = 0.0;        // relative change of lambda at the last step
  double eigen_residual = 0.0;  // |A x - lambda B x| / |lambda B x|
  Eigen::VectorXd vector;       // B-normalised
};

/// Inverse power iteration from the all-ones vector; inner solves use a sparse
/// LDL^T factorisation of A computed once.
EigenResult smallest_eigenvalue(const Eigen::SparseMatrix<double>& A, const Eigen::SparseMatrix<double>& B, double tol = 1e-8,
                                std::size_t max_iterations = 10000);

struct CertificateComparison {
  double r_squared = 0.0;
  double margin = 0.0;  // lambda_h - r^2
};

struct RayleighEstimate {
  double lambda_h = 0.0;
  double h = 0.0;
  std::size_t iterations = 0;
  double residual = 0.0;
  double eigen_residual = 0.0;
  std::size_t n_unknowns = 0;
  std::optional<CertificateComparison> certificate_compared;
  TriMesh mesh;
  std::vector<double> mode;  // per vertex, zero on eliminated vertices, max |.| = 1
};

RayleighEstimate hardy_quotient_estimate(const DomainSpec& distance_domain, const DomainSpec& support, double h,
                                         double tol = 1e-8);

void compare_with_certificate(RayleighEstimate& est, double r);

std::vector<RayleighEstimate> refinement_study(const DomainSpec& distance_domain, const DomainSpec& support,
                                               const std::vector<double>& h_list, double tol = 1e-8);

/// Bounded mesh support for a distance domain: the domain itself when bounded,
/// otherwise Disk(0, radius).
DomainSpec default_support(const DomainSpec& distance_domain, double radius = 4.0);

}  // namespace hardy::variational
