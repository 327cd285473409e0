#include "hardy/variational.hpp"

#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

#include "hardy/error.hpp"
#include "hardy/parallel.hpp"

namespace hardy::variational {

using namespace geometry;

namespace {

constexpr double kPi = std::numbers::pi;

double cross(CPoint a, CPoint b) { return a.real() * b.imag() - a.imag() * b.real(); }

double signed_area(const TriMesh& m, const std::array<int, 3>& t) {
  const CPoint a = m.vertices[t[0]], b = m.vertices[t[1]], c = m.vertices[t[2]];
  return 0.5 * cross(b - a, c - a);
}

double tri_min_angle(const TriMesh& m, const std::array<int, 3>& t) {
  double best = kPi;
  for (int k = 0; k < 3; ++k) {
    const CPoint a = m.vertices[t[k]], b = m.vertices[t[(k + 1) % 3]], c = m.vertices[t[(k + 2) % 3]];
    best = std::min(best, std::abs(std::arg((c - a) / (b - a))));
  }
  return best;
}

int grid_cells(double length, double h) { return std::max(1, static_cast<int>(std::ceil(length / h - 1e-9))); }

// Union-jack split of the quad a b c d (counter-clockwise); the diagonal
// alternates with the cell parity so the pattern is symmetric and nests.
void split_cell(std::vector<std::array<int, 3>>& tris, int a, int b, int c, int d, bool even) {
  if (even) {
    tris.push_back({a, b, c});
    tris.push_back({a, c, d});
  } else {
    tris.push_back({a, b, d});
    tris.push_back({b, c, d});
  }
}

std::optional<TriMesh> frame_grid(const Polygon& poly, double h) {
  const auto& v = poly.vertices;
  const CPoint origin = v[0];
  const CPoint e1 = (v[1] - v[0]) / std::abs(v[1] - v[0]);
  auto to_frame = [&](CPoint z) { return (z - origin) * std::conj(e1); };
  std::vector<CPoint> f;
  for (CPoint z : v) f.push_back(to_frame(z));
  for (std::size_t i = 0; i < f.size(); ++i) {
    const CPoint d = f[(i + 1) % f.size()] - f[i];
    const double tol = 1e-12 * std::abs(d);
    if (std::abs(d.real()) > tol && std::abs(d.imag()) > tol) return std::nullopt;
  }
  double x0 = f[0].real(), x1 = x0, y0 = f[0].imag(), y1 = y0;
  for (CPoint z : f) {
    x0 = std::min(x0, z.real());
    x1 = std::max(x1, z.real());
    y0 = std::min(y0, z.imag());
    y1 = std::max(y1, z.imag());
  }
  const int nx = grid_cells(x1 - x0, h), ny = grid_cells(y1 - y0, h);
  const double hx = (x1 - x0) / nx, hy = (y1 - y0) / ny;
  for (CPoint z : f) {
    const double ix = (z.real() - x0) / hx, iy = (z.imag() - y0) / hy;
    if (std::abs(ix - std::round(ix)) > 1e-9 || std::abs(iy - std::round(iy)) > 1e-9) return std::nullopt;
  }
  auto world = [&](int i, int j) { return origin + e1 * CPoint{x0 + i * hx, y0 + j * hy}; };
  auto node = [&](int i, int j) { return j * (nx + 1) + i; };

  std::vector<char> keep(static_cast<std::size_t>(nx) * ny, 0);
  std::vector<int> id(static_cast<std::size_t>(nx + 1) * (ny + 1), -1);
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const CPoint c = origin + e1 * CPoint{x0 + (i + 0.5) * hx, y0 + (j + 0.5) * hy};
      if (!contains(DomainSpec{poly}, c)) continue;
      keep[j * nx + i] = 1;
      for (int dj = 0; dj < 2; ++dj)
        for (int di = 0; di < 2; ++di) id[node(i + di, j + dj)] = 0;
    }
  }
  TriMesh m;
  m.h = h;
  for (int j = 0; j <= ny; ++j) {
    for (int i = 0; i <= nx; ++i) {
      if (id[node(i, j)] < 0) continue;
      id[node(i, j)] = static_cast<int>(m.vertices.size());
      m.vertices.push_back(world(i, j));
    }
  }
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      if (!keep[j * nx + i]) continue;
      split_cell(m.triangles, id[node(i, j)], id[node(i + 1, j)], id[node(i + 1, j + 1)], id[node(i, j + 1)], (i + j) % 2 == 0);
    }
  }
  return m;
}

bool segments_cross(CPoint a, CPoint b, CPoint c, CPoint d) {
  const double d1 = cross(b - a, c - a), d2 = cross(b - a, d - a);
  const double d3 = cross(d - c, a - c), d4 = cross(d - c, b - c);
  return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0)) && d1 != 0 && d2 != 0 && d3 != 0 && d4 != 0;
}

// Triangulation of a simple polygon maximising the smallest angle (dynamic
// programming over diagonals), then red refinement down to h.
TriMesh polygon_refined(const Polygon& poly, double h) {
  TriMesh m;
  m.h = h;
  m.vertices = poly.vertices;
  const int n = static_cast<int>(m.vertices.size());
  const auto& v = m.vertices;
  auto diagonal_ok = [&](int i, int j) {
    if ((j - i + n) % n == 1 || (i - j + n) % n == 1) return true;
    for (int e = 0; e < n; ++e) {
      const int f = (e + 1) % n;
      if (e == i || e == j || f == i || f == j) continue;
      if (segments_cross(v[i], v[j], v[e], v[f])) return false;
    }
    return contains(DomainSpec{poly}, 0.5 * (v[i] + v[j]));
  };
  const double none = -1.0;
  std::vector<double> best(static_cast<std::size_t>(n) * n, none);
  std::vector<int> split(static_cast<std::size_t>(n) * n, -1);
  auto at = [&](int i, int j) -> double& { return best[static_cast<std::size_t>(i) * n + j]; };
  for (int i = 0; i + 1 < n; ++i) at(i, i + 1) = kPi;
  for (int len = 2; len < n; ++len) {
    for (int i = 0; i + len < n; ++i) {
      const int j = i + len;
      if (!diagonal_ok(i, j)) continue;
      for (int k = i + 1; k < j; ++k) {
        if (at(i, k) < 0 || at(k, j) < 0) continue;
        if (cross(v[k] - v[i], v[j] - v[i]) <= 0) continue;
        const double q = std::min({at(i, k), at(k, j), tri_min_angle(m, {i, k, j})});
        if (q > at(i, j)) {
          at(i, j) = q;
          split[static_cast<std::size_t>(i) * n + j] = k;
        }
      }
    }
  }
  if (at(0, n - 1) < 0) fail(ErrorCode::MeshFailure, "polygon triangulation failed");
  std::vector<std::pair<int, int>> stack{{0, n - 1}};
  while (!stack.empty()) {
    const auto [i, j] = stack.back();
    stack.pop_back();
    if (j - i < 2) continue;
    const int k = split[static_cast<std::size_t>(i) * n + j];
    m.triangles.push_back({i, k, j});
    stack.push_back({i, k});
    stack.push_back({k, j});
  }

  while (max_edge(m) > h) {
    std::map<std::pair<int, int>, int> mid;
    auto midpoint = [&](int a, int b) {
      const auto key = std::minmax(a, b);
      auto it = mid.find(key);
      if (it != mid.end()) return it->second;
      const int id = static_cast<int>(m.vertices.size());
      m.vertices.push_back(0.5 * (m.vertices[a] + m.vertices[b]));
      mid.emplace(key, id);
      return id;
    };
    std::vector<std::array<int, 3>> next;
    next.reserve(4 * m.triangles.size());
    for (const auto& t : m.triangles) {
      const int ab = midpoint(t[0], t[1]), bc = midpoint(t[1], t[2]), ca = midpoint(t[2], t[0]);
      next.push_back({t[0], ab, ca});
      next.push_back({ab, t[1], bc});
      next.push_back({ca, bc, t[2]});
      next.push_back({ab, bc, ca});
    }
    m.triangles = std::move(next);
  }
  return m;
}

// Rings of 6i nodes starting at arg = pi, so the ray left of the centre is a
// chain of mesh edges and no triangle crosses it.
TriMesh disk_rings(const Disk& disk, double h) {
  // Ring spacing 0.8 h keeps the slanted edges between rings below 1.5 h.
  const int n = grid_cells(disk.radius, 0.8 * h);
  TriMesh m;
  m.h = h;
  m.vertices.push_back(disk.center);
  std::vector<int> start{0};
  for (int i = 1; i <= n; ++i) {
    start.push_back(static_cast<int>(m.vertices.size()));
    const double r = disk.radius * i / n;
    const int count = 6 * i;
    for (int k = 0; k < count; ++k) {
      const CPoint u = k == 0 ? CPoint{-1, 0} : std::polar(1.0, kPi + 2 * kPi * k / count);
      m.vertices.push_back(disk.center + r * u);
    }
  }
  for (int k = 0; k < 6; ++k) m.triangles.push_back({0, start[1] + k, start[1] + (k + 1) % 6});
  for (int i = 1; i < n; ++i) {
    const int ni = 6 * i, no = 6 * (i + 1);
    auto in = [&](int p) { return start[i] + p % ni; };
    auto out = [&](int q) { return start[i + 1] + q % no; };
    int p = 0, q = 0;
    while (p < ni || q < no) {
      // Advance along whichever ring has the next node at the smaller angle.
      const bool take_outer = p == ni || (q < no && static_cast<double>(q + 1) / no <= static_cast<double>(p + 1) / ni);
      if (take_outer) {
        m.triangles.push_back({in(p), out(q), out(q + 1)});
        ++q;
      } else {
        m.triangles.push_back({in(p), out(q), in(p + 1)});
        ++p;
      }
    }
  }
  return m;
}

TriMesh horseshoe_grid(const Horseshoe& hs, double h) {
  // Thin bands get four to eight cells across; angular spacing at most twice
  // the radial one keeps the angles above 26 degrees.
  // The straight ends are longer than the band is wide when psi > pi/2.
  const double end_angle = hs.psi <= kPi / 2 ? hs.psi : std::acos(hs.rho * std::cos(hs.psi) / (hs.rho + hs.delta));
  const double end_length = std::abs(std::polar(hs.rho, hs.psi) - std::polar(hs.rho + hs.delta, end_angle));
  const int ns = std::max(grid_cells(end_length, h), std::min(8, std::max(4, grid_cells(4 * hs.delta, h))));
  int nt = grid_cells(2 * hs.psi * (hs.rho + hs.delta), std::min(h, 2 * hs.delta / ns));
  nt += nt % 2;
  auto half_angle = [&](double r) {
    if (hs.psi <= kPi / 2) return hs.psi;
    return std::acos(std::clamp(hs.rho * std::cos(hs.psi) / r, -1.0, 1.0));
  };
  TriMesh m;
  m.h = h;
  for (int k = 0; k <= ns; ++k) {
    const double r = hs.rho + hs.delta * k / ns;
    const double a = half_angle(r);
    for (int l = 0; l <= nt; ++l) m.vertices.push_back(std::polar(r, a * (2.0 * l / nt - 1)));
  }
  auto id = [&](int k, int l) { return k * (nt + 1) + l; };
  for (int k = 0; k < ns; ++k) {
    for (int l = 0; l < nt; ++l) {
      // (radius, angle) is a right-handed frame, so this quad is counter-clockwise.
      // Near sheared ends the diagonal with the better angles wins; parity breaks ties.
      const int a = id(k, l), b = id(k + 1, l), c = id(k + 1, l + 1), d = id(k, l + 1);
      const double even = std::min(tri_min_angle(m, {a, b, c}), tri_min_angle(m, {a, c, d}));
      const double odd = std::min(tri_min_angle(m, {a, b, d}), tri_min_angle(m, {b, c, d}));
      const bool use_even = std::abs(even - odd) <= 1e-12 ? (k + l) % 2 == 0 : even > odd;
      split_cell(m.triangles, a, b, c, d, use_even);
    }
  }
  return m;
}

void finish_mesh(TriMesh& m, const DomainSpec& support) {
  m.is_boundary.assign(m.vertices.size(), false);
  for (std::size_t i = 0; i < m.vertices.size(); ++i) {
    m.is_boundary[i] = distance_to_boundary(support, m.vertices[i]) <= 1e-9 * m.h;
  }
  for (const auto& t : m.triangles) {
    if (!(signed_area(m, t) > 0)) fail(ErrorCode::MeshFailure, "triangle with non-positive area");
  }
  const double angle = min_angle(m), edge = max_edge(m);
  if (angle < 20.0 * kPi / 180 - 1e-12 || edge > 1.5 * m.h) {
    std::ostringstream os;
    os << "mesh quality: min angle " << angle * 180 / kPi << " deg, max edge " << edge << " (h = " << m.h << ")";
    fail(ErrorCode::MeshFailure, os.str());
  }
}

}  // namespace

double min_angle(const TriMesh& m) {
  double best = kPi;
  for (const auto& t : m.triangles) best = std::min(best, tri_min_angle(m, t));
  return best;
}

double max_edge(const TriMesh& m) {
  double best = 0.0;
  for (const auto& t : m.triangles) {
    for (int k = 0; k < 3; ++k) best = std::max(best, std::abs(m.vertices[t[k]] - m.vertices[t[(k + 1) % 3]]));
  }
  return best;
}

TriMesh triangulate(const DomainSpec& support, double h) {
  if (!(h > 0.0) || !std::isfinite(h)) fail(ErrorCode::InvalidParameters, "h must be > 0");
  if (!is_bounded(support)) fail(ErrorCode::InvalidParameters, "mesh support must be bounded");
  TriMesh m;
  if (const auto* poly = std::get_if<Polygon>(&support)) {
    auto grid = frame_grid(*poly, h);
    m = grid ? std::move(*grid) : polygon_refined(*poly, h);
  } else if (const auto* disk = std::get_if<Disk>(&support)) {
    m = disk_rings(*disk, h);
  } else if (const auto* hs = std::get_if<Horseshoe>(&support)) {
    m = horseshoe_grid(*hs, h);
  } else {
    fail(ErrorCode::MeshFailure, "no mesher for this support");
  }
  finish_mesh(m, support);
  return m;
}

Assembly assemble(const TriMesh& mesh, const DomainSpec& distance_domain) {
  Assembly out;
  out.dof.assign(mesh.vertices.size(), -1);
  int n = 0;
  for (std::size_t i = 0; i < mesh.vertices.size(); ++i) {
    if (!mesh.is_boundary[i] && contains(distance_domain, mesh.vertices[i])) out.dof[i] = n++;
  }

  struct Element {
    std::array<double, 9> K{};
    std::array<double, 9> M{};
  };
  std::vector<Element> elems(mesh.triangles.size());
  parallel_for(mesh.triangles.size(), [&](std::size_t e) {
    const auto& t = mesh.triangles[e];
    const CPoint p[3] = {mesh.vertices[t[0]], mesh.vertices[t[1]], mesh.vertices[t[2]]};
    const double area = 0.5 * cross(p[1] - p[0], p[2] - p[0]);
    if (!(area > 0)) fail(ErrorCode::MeshFailure, "triangle with non-positive area");
    double b[3], c[3];
    for (int i = 0; i < 3; ++i) {
      const CPoint pj = p[(i + 1) % 3], pk = p[(i + 2) % 3];
      b[i] = pj.imag() - pk.imag();
      c[i] = pk.real() - pj.real();
    }
    auto& el = elems[e];
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) el.K[3 * i + j] = (b[i] * b[j] + c[i] * c[j]) / (4 * area);
    // Interior points (2/3, 1/6, 1/6) keep 1/delta^2 off the boundary.
    for (int q = 0; q < 3; ++q) {
      double lam[3] = {1.0 / 6, 1.0 / 6, 1.0 / 6};
      lam[q] = 2.0 / 3;
      const CPoint x = lam[0] * p[0] + lam[1] * p[1] + lam[2] * p[2];
      if (!contains(distance_domain, x)) {
        std::ostringstream os;
        os.precision(17);
        os << "quadrature point (" << x.real() << ", " << x.imag() << ") of triangle " << e;
        fail(ErrorCode::QuadraturePointOutsideDomain, os.str());
      }
      const double d = distance_to_boundary(distance_domain, x);
      const double w = area / 3 / (d * d);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) el.M[3 * i + j] += w * lam[i] * lam[j];
    }
  });

  // Triplets in triangle order: entry sums do not depend on the thread count.
  std::vector<Eigen::Triplet<double>> ka, mb;
  ka.reserve(9 * elems.size());
  mb.reserve(9 * elems.size());
  for (std::size_t e = 0; e < elems.size(); ++e) {
    const auto& t = mesh.triangles[e];
    for (int i = 0; i < 3; ++i) {
      const int di = out.dof[t[i]];
      if (di < 0) continue;
      for (int j = 0; j < 3; ++j) {
        const int dj = out.dof[t[j]];
        if (dj < 0) continue;
        ka.emplace_back(di, dj, elems[e].K[3 * i + j]);
        mb.emplace_back(di, dj, elems[e].M[3 * i + j]);
      }
    }
  }
  out.A.resize(n, n);
  out.B.resize(n, n);
  out.A.setFromTriplets(ka.begin(), ka.end());
  out.B.setFromTriplets(mb.begin(), mb.end());
  return out;
}

EigenResult smallest_eigenvalue(const Eigen::SparseMatrix<double>& A, const Eigen::SparseMatrix<double>& B, double tol,
                                std::size_t max_iterations) {
  if (A.rows() == 0 || A.rows() != A.cols() || B.rows() != A.rows() || B.cols() != A.cols()) {
    fail(ErrorCode::InvalidParameters, "eigenproblem needs square matrices of equal, positive size");
  }
  if (!(tol > 0.0)) fail(ErrorCode::InvalidParameters, "tolerance must be > 0");
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(A);
  if (solver.info() != Eigen::Success) fail(ErrorCode::NoConvergence, "factorisation of the stiffness matrix failed");

  EigenResult res;
  Eigen::VectorXd x = Eigen::VectorXd::Ones(A.rows());
  Eigen::VectorXd Bx = B * x;
  double xBx = x.dot(Bx);
  if (!(xBx > 0)) fail(ErrorCode::InvalidParameters, "B is not positive on the start vector");
  double lambda = x.dot(A * x) / xBx;
  x /= std::sqrt(xBx);
  Bx /= std::sqrt(xBx);
  for (std::size_t it = 1; it <= max_iterations; ++it) {
    Eigen::VectorXd y = solver.solve(Bx);
    const Eigen::VectorXd By = B * y;
    const double yBy = y.dot(By);
    const double next = y.dot(A * y) / yBy;
    const double change = std::abs(next - lambda) / std::abs(next);
    x = y / std::sqrt(yBy);
    Bx = By / std::sqrt(yBy);
    lambda = next;
    if (change < tol) {
      res.lambda = lambda;
      res.iterations = it;
      res.residual = change;
      res.eigen_residual = (A * x - lambda * Bx).norm() / (lambda * Bx).norm();
      res.vector = std::move(x);
      return res;
    }
  }
  fail(ErrorCode::NoConvergence, "inverse iteration did not converge in " + std::to_string(max_iterations) + " steps");
}

RayleighEstimate hardy_quotient_estimate(const DomainSpec& distance_domain, const DomainSpec& support, double h, double tol) {
  validate(distance_domain);
  validate(support);
  if (!is_bounded(support)) fail(ErrorCode::InvalidParameters, "mesh support must be bounded");
  // Samples on the distance domain's boundary (a slit through the support) are
  // allowed: mesh vertices there are eliminated.
  for (CPoint p : interior_samples(support, 4096)) {
    if (!contains(distance_domain, p) && distance_to_boundary(distance_domain, p) > 1e-9 * h) {
      fail(ErrorCode::SupportNotContained, "support sample outside the distance domain");
    }
  }
  RayleighEstimate est;
  est.h = h;
  est.mesh = triangulate(support, h);
  const auto sys = assemble(est.mesh, distance_domain);
  if (sys.A.rows() == 0) fail(ErrorCode::MeshFailure, "mesh has no interior vertices; reduce h");
  auto eig = smallest_eigenvalue(sys.A, sys.B, tol);
  est.lambda_h = eig.lambda;
  est.iterations = eig.iterations;
  est.residual = eig.residual;
  est.eigen_residual = eig.eigen_residual;
  est.n_unknowns = static_cast<std::size_t>(sys.A.rows());

  const double sum = eig.vector.sum();
  const double scale = eig.vector.cwiseAbs().maxCoeff() * (sum < 0 ? -1.0 : 1.0);
  est.mode.assign(est.mesh.vertices.size(), 0.0);
  for (std::size_t i = 0; i < est.mode.size(); ++i) {
    if (sys.dof[i] >= 0) est.mode[i] = eig.vector[sys.dof[i]] / scale;
  }
  return est;
}

void compare_with_certificate(RayleighEstimate& est, double r) {
  est.certificate_compared = CertificateComparison{r * r, est.lambda_h - r * r};
}

std::vector<RayleighEstimate> refinement_study(const DomainSpec& distance_domain, const DomainSpec& support,
                                               const std::vector<double>& h_list, double tol) {
  for (std::size_t i = 1; i < h_list.size(); ++i) {
    if (!(h_list[i] < h_list[i - 1])) fail(ErrorCode::InvalidParameters, "h list must be decreasing");
  }
  std::vector<RayleighEstimate> out;
  for (double h : h_list) out.push_back(hardy_quotient_estimate(distance_domain, support, h, tol));
  return out;
}

DomainSpec default_support(const DomainSpec& distance_domain, double radius) {
  if (is_bounded(distance_domain)) return distance_domain;
  if (!(radius > 0.0)) fail(ErrorCode::InvalidParameters, "truncation radius must be > 0");
  return Disk{{0, 0}, radius};
}

}  // namespace hardy::variational
