#pragma once

// Exterior cone and exterior cut-disk conditions, checked at boundary points.

#include <cstddef>
#include <vector>

#include "hardy/geometry.hpp"

namespace hardy::conditions {

using geometry::CPoint;
using geometry::DomainSpec;

/// Minimal sector K_theta(w, phi) containing the domain. `full_circle` is set
/// when the domain's directions cover the whole circle seen from w, so no
/// theta <= pi works; theta is then reported as pi.
struct HullResult {
  double theta = 0.0;
  double phi = 0.0;
  bool full_circle = false;
};

HullResult angular_hull(const DomainSpec& d, CPoint w);

struct ConeWitness {
  CPoint w;
  double theta = 0.0;
  double phi = 0.0;
  bool full_circle = false;
};

struct ConeReport {
  double theta_sup = 0.0;
  std::vector<ConeWitness> witnesses;
  std::size_t n_boundary_samples = 0;
  bool full_circle = false;  // condition fails somewhere

  bool holds() const { return !full_circle; }
  const ConeWitness& worst() const;
};

/// Runs angular_hull on a nested boundary sample (features plus n positions).
ConeReport check_cone_condition(const DomainSpec& d, std::size_t n = 256);

struct CutDiskOptions {
  std::size_t n_boundary = 256;
  std::size_t n_phi = 128;
  std::size_t n_theta = 16;  // per sign
  std::size_t n_domain = 4096;
  double extent = 4.0;  // truncation for unbounded domains
};

struct CutDiskWitness {
  CPoint w;
  double phi = 0.0;
  double theta_used = 0.0;
  double margin = 0.0;  // min signed distance of the domain sample to the placed complement
  bool found = false;
};

struct CutDiskReport {
  double a = 0.0;
  double theta0 = 0.0;
  bool feasible = false;
  std::vector<CutDiskWitness> witnesses;
  std::size_t n_boundary_samples = 0;
  std::size_t n_domain_samples = 0;
};

/// Signed distance from z to the complement of D_{a,theta}(w, phi); negative
/// inside the removed disk, zero on the cut.
double cutdisk_margin(CPoint z, double a, double theta, CPoint w, double phi);

/// Grid search over placements. feasible=true is backed by a positive margin
/// on every sampled domain point; false only means nothing was found at this
/// resolution.
CutDiskReport check_cutdisk_condition(const DomainSpec& d, double a, double theta0, const CutDiskOptions& opt = {});

/// 0 for psi <= pi/2, else 2 psi - pi.
double horseshoe_theta0(double psi);

}  // namespace hardy::conditions
