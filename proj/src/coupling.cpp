#include "febem/coupling.hpp"

#include <Eigen/LU>

#include <Eigen/SparseLU>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "febem/quadrature.hpp"

namespace febem {

CoupledSystem assemble_system(const FeSpace& fe, const TraceOperator& trace,
                              const TraceSpace& t, const BemSpace& m,
                              const Coefficient& coeff, const BoundaryMesh& bmesh,
                              int quad_boundary) {
  if (trace.num_trace_dofs() != t.num_dofs)
    throw std::invalid_argument("assemble_system: trace operator/space mismatch");
  CoupledSystem sys;
  sys.n_fem = fe.num_dofs;
  sys.n_bem = m.num_dofs;
  sys.trace = trace;
  sys.c = slp_matrix(bmesh, m, quad_boundary);
  sys.b = dlp_matrix(bmesh, t, m, quad_boundary);
  // the arclength derivatives of the trace space live exactly in the flux
  // space, so D reuses the single layer matrix already assembled for c
  sys.d = hypersingular_from_slp(bmesh, t, sys.c);

  Eigen::SparseMatrix<double> stiffness = assemble_stiffness(fe, coeff);
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(stiffness.nonZeros() + t.num_dofs * t.num_dofs);
  for (int k = 0; k < stiffness.outerSize(); ++k)
    for (Eigen::SparseMatrix<double>::InnerIterator it(stiffness, k); it; ++it)
      triplets.emplace_back(it.row(), it.col(), it.value());
  for (int i = 0; i < t.num_dofs; ++i)
    for (int j = 0; j < t.num_dofs; ++j)
      triplets.emplace_back(trace.volume_dof[i], trace.volume_dof[j], sys.d(i, j));
  sys.a_tilde.resize(fe.num_dofs, fe.num_dofs);
  sys.a_tilde.setFromTriplets(triplets.begin(), triplets.end());

  sys.rhs1 = Eigen::VectorXd::Zero(sys.n_fem);
  sys.rhs2 = Eigen::VectorXd::Zero(sys.n_bem);
  return sys;
}

void assemble_rhs(CoupledSystem& sys, const FeSpace& fe, const TraceSpace& t,
                  const BemSpace& m, const BoundaryMesh& bmesh,
                  const std::function<double(const Eigen::Vector2d&)>& f,
                  const BoundaryFn& u0, const FluxFn& phi0, DataMode mode,
                  int quad_volume, int quad_boundary) {
  const Eigen::VectorXd u0h = l2_project_trace(u0, bmesh, t, quad_boundary);

  sys.rhs1 = assemble_domain_load(fe, f, quad_volume);
  Eigen::VectorXd phi0_term;
  switch (mode) {
    case DataMode::project_u0:
      phi0_term = trace_load(phi0, bmesh, t, quad_boundary);
      break;
    case DataMode::project_both: {
      const Eigen::VectorXd phi0h = l2_project_flux(phi0, bmesh, m, quad_boundary);
      phi0_term = mixed_mass_matrix(bmesh, t, m).transpose() * phi0h;
      break;
    }
    default:
      throw std::invalid_argument("assemble_rhs: unknown data mode");
  }
  const Eigen::VectorXd boundary_part = phi0_term + sys.d * u0h;
  sys.trace.scatter_add(boundary_part, sys.rhs1);
  sys.rhs2 = sys.b * u0h;
}

CoupledSolution solve(const CoupledSystem& sys) {
  const int n = sys.n_fem + sys.n_bem;
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(sys.a_tilde.nonZeros() + 2 * sys.b.size() + sys.c.size());
  for (int k = 0; k < sys.a_tilde.outerSize(); ++k)
    for (Eigen::SparseMatrix<double>::InnerIterator it(sys.a_tilde, k); it; ++it)
      triplets.emplace_back(it.row(), it.col(), it.value());
  for (int i = 0; i < sys.n_bem; ++i) {
    for (int j = 0; j < static_cast<int>(sys.b.cols()); ++j) {
      const int vj = sys.trace.volume_dof[j];
      triplets.emplace_back(vj, sys.n_fem + i, -sys.b(i, j));
      triplets.emplace_back(sys.n_fem + i, vj, sys.b(i, j));
    }
    for (int j = 0; j < sys.n_bem; ++j)
      triplets.emplace_back(sys.n_fem + i, sys.n_fem + j, sys.c(i, j));
  }
  Eigen::SparseMatrix<double> mat(n, n);
  mat.setFromTriplets(triplets.begin(), triplets.end());

  Eigen::VectorXd rhs(n);
  rhs.head(sys.n_fem) = sys.rhs1;
  rhs.tail(sys.n_bem) = sys.rhs2;

  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  lu.analyzePattern(mat);
  lu.factorize(mat);
  if (lu.info() != Eigen::Success)
    throw std::runtime_error("solve: sparse LU factorization failed (singular "
                             "or ill-conditioned block system)");
  const Eigen::VectorXd x = lu.solve(rhs);

  CoupledSolution sol;
  sol.u = x.head(sys.n_fem);
  sol.phi = x.tail(sys.n_bem);
  const double rhs_norm = rhs.norm();
  sol.residual = (mat * x - rhs).norm() / (rhs_norm > 0 ? rhs_norm : 1.0);
  return sol;
}

double check_compatibility(const std::function<double(const Eigen::Vector2d&)>& f,
                           const FluxFn& phi0, const FeSpace& fe,
                           const BoundaryMesh& bmesh, int quad_volume) {
  const TriMesh& mesh = *fe.mesh;
  const TriangleRule rule = triangle_rule(quad_volume);
  double volume_part = 0.0;
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const Eigen::Vector2d p0 = mesh.vertices.row(mesh.triangles(t, 0));
    const Eigen::Vector2d p1 = mesh.vertices.row(mesh.triangles(t, 1));
    const Eigen::Vector2d p2 = mesh.vertices.row(mesh.triangles(t, 2));
    Eigen::Matrix2d jac;
    jac.col(0) = p1 - p0;
    jac.col(1) = p2 - p0;
    const double detj = jac.determinant();
    for (int q = 0; q < rule.size(); ++q) {
      const Eigen::Vector2d x =
          p0 + jac * Eigen::Vector2d(rule.points(q, 0), rule.points(q, 1));
      volume_part += rule.weights[q] * detj * f(x);
    }
  }
  double boundary_part = 0.0;
  for (int s = 0; s < bmesh.num_segments(); ++s) {
    const Eigen::Vector2d a = bmesh.a.row(s);
    const Eigen::Vector2d d = Eigen::Vector2d(bmesh.b.row(s)) - a;
    const Eigen::Vector2d nrm = bmesh.normals.row(s);
    boundary_part += graded_integrate(
        [&](double u) { return phi0(a + u * d, nrm) * bmesh.length[s]; }, 0.0, 1.0);
  }
  return volume_part + boundary_part;
}

void write_system_matrix(const CoupledSystem& sys, std::ostream& out) {
  char buf[96];
  auto emit = [&](int r, int c, double v) {
    std::snprintf(buf, sizeof buf, "%d %d %.17g\n", r, c, v);
    out << buf;
  };
  for (int k = 0; k < sys.a_tilde.outerSize(); ++k)
    for (Eigen::SparseMatrix<double>::InnerIterator it(sys.a_tilde, k); it; ++it)
      emit(static_cast<int>(it.row()), static_cast<int>(it.col()), it.value());
  for (int i = 0; i < sys.n_bem; ++i) {
    for (int j = 0; j < static_cast<int>(sys.b.cols()); ++j) {
      const int vj = sys.trace.volume_dof[j];
      emit(vj, sys.n_fem + i, -sys.b(i, j));
      emit(sys.n_fem + i, vj, sys.b(i, j));
    }
    for (int j = 0; j < sys.n_bem; ++j)
      emit(sys.n_fem + i, sys.n_fem + j, sys.c(i, j));
  }
}

}  // namespace febem
