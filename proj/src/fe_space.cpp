#include "febem/fe_space.hpp"

#include <Eigen/LU>

#include <cmath>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "febem/quadrature.hpp"

namespace febem {

namespace {

struct PairHash {
  size_t operator()(const std::pair<int, int>& p) const {
    return std::hash<long long>()((static_cast<long long>(p.first) << 32) ^ p.second);
  }
};

}  // namespace

Coefficient Coefficient::identity() {
  Coefficient c;
  c.value = [](const Eigen::Vector2d&) { return Eigen::Matrix2d::Identity(); };
  c.ellipticity = 1.0;
  return c;
}

void FeSpace::element_dofs(int t, int* out) const {
  out[0] = mesh->triangles(t, 0);
  out[1] = mesh->triangles(t, 1);
  out[2] = mesh->triangles(t, 2);
  if (degree == 2) {
    const int nv = mesh->num_vertices();
    out[3] = nv + tri_edges(t, 0);
    out[4] = nv + tri_edges(t, 1);
    out[5] = nv + tri_edges(t, 2);
  }
}

FeSpace build_fe_space(const TriMesh& mesh, int degree) {
  if (degree != 1 && degree != 2)
    throw std::invalid_argument("build_fe_space: unsupported degree");
  FeSpace space;
  space.mesh = &mesh;
  space.degree = degree;
  const int nv = mesh.num_vertices();
  const int nt = mesh.num_triangles();

  if (degree == 2) {
    std::unordered_map<std::pair<int, int>, int, PairHash> edge_id;
    std::vector<std::pair<int, int>> edge_list;
    space.tri_edges.resize(nt, 3);
    for (int t = 0; t < nt; ++t) {
      for (int e = 0; e < 3; ++e) {
        const int u = mesh.triangles(t, e);
        const int w = mesh.triangles(t, (e + 1) % 3);
        const std::pair<int, int> key{std::min(u, w), std::max(u, w)};
        auto it = edge_id.find(key);
        if (it == edge_id.end()) {
          it = edge_id.emplace(key, static_cast<int>(edge_list.size())).first;
          edge_list.push_back(key);
        }
        space.tri_edges(t, e) = it->second;
      }
    }
    const int ne = static_cast<int>(edge_list.size());
    space.edges.resize(ne, 2);
    space.num_dofs = nv + ne;
    space.dof_coords.resize(space.num_dofs, 2);
    space.dof_coords.topRows(nv) = mesh.vertices;
    for (int e = 0; e < ne; ++e) {
      space.edges.row(e) << edge_list[e].first, edge_list[e].second;
      space.dof_coords.row(nv + e) =
          0.5 * (mesh.vertices.row(edge_list[e].first) +
                 mesh.vertices.row(edge_list[e].second));
    }
  } else {
    space.num_dofs = nv;
    space.dof_coords = mesh.vertices;
  }

  const BoundaryMesh bmesh = extract_boundary(mesh);
  const int ns = bmesh.num_segments();
  space.boundary_dofs.resize(degree * ns);
  for (int s = 0; s < ns; ++s) {
    if (degree == 1) {
      space.boundary_dofs[s] = bmesh.segments(s, 0);
    } else {
      space.boundary_dofs[2 * s] = bmesh.segments(s, 0);
      space.boundary_dofs[2 * s + 1] =
          nv + space.tri_edges(bmesh.parent_edge(s, 0), bmesh.parent_edge(s, 1));
    }
  }
  return space;
}

Eigen::VectorXd fe_shape_values(int degree, double xi, double eta) {
  const double l0 = 1.0 - xi - eta;
  if (degree == 1) {
    Eigen::VectorXd n(3);
    n << l0, xi, eta;
    return n;
  }
  Eigen::VectorXd n(6);
  n << l0 * (2 * l0 - 1), xi * (2 * xi - 1), eta * (2 * eta - 1),
      4 * l0 * xi, 4 * xi * eta, 4 * eta * l0;
  return n;
}

Eigen::MatrixXd fe_shape_gradients(int degree, double xi, double eta) {
  if (degree == 1) {
    Eigen::MatrixXd g(2, 3);
    g << -1, 1, 0, -1, 0, 1;
    return g;
  }
  const double l0 = 1.0 - xi - eta;
  Eigen::MatrixXd g(2, 6);
  g.col(0) << 1 - 4 * l0, 1 - 4 * l0;
  g.col(1) << 4 * xi - 1, 0;
  g.col(2) << 0, 4 * eta - 1;
  g.col(3) << 4 * (l0 - xi), -4 * xi;
  g.col(4) << 4 * eta, 4 * xi;
  g.col(5) << -4 * eta, 4 * (l0 - eta);
  return g;
}

Eigen::SparseMatrix<double> assemble_stiffness(const FeSpace& space,
                                               const Coefficient& coeff,
                                               int quad_degree) {
  const TriMesh& mesh = *space.mesh;
  const int nd = space.dofs_per_element();
  if (quad_degree < 0) quad_degree = 2 * space.degree;
  const TriangleRule rule = triangle_rule(quad_degree);

  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(static_cast<size_t>(mesh.num_triangles()) * nd * nd);
  int dofs[6];
  bool coeff_checked = false;
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    space.element_dofs(t, dofs);
    const Eigen::Vector2d p0 = mesh.vertices.row(mesh.triangles(t, 0));
    const Eigen::Vector2d p1 = mesh.vertices.row(mesh.triangles(t, 1));
    const Eigen::Vector2d p2 = mesh.vertices.row(mesh.triangles(t, 2));
    Eigen::Matrix2d jac;
    jac.col(0) = p1 - p0;
    jac.col(1) = p2 - p0;
    const double detj = jac.determinant();
    const Eigen::Matrix2d jinv_t = jac.inverse().transpose();

    Eigen::MatrixXd local = Eigen::MatrixXd::Zero(nd, nd);
    for (int q = 0; q < rule.size(); ++q) {
      const double xi = rule.points(q, 0);
      const double eta = rule.points(q, 1);
      const Eigen::MatrixXd grads = jinv_t * fe_shape_gradients(space.degree, xi, eta);
      const Eigen::Vector2d x = p0 + jac * Eigen::Vector2d(xi, eta);
      const Eigen::Matrix2d a = coeff.value(x);
      if (!coeff_checked) {
        // spot-check symmetry and positive definiteness at the quadrature
        // nodes of the first element
        if (std::abs(a(0, 1) - a(1, 0)) > 1e-12 * a.norm() ||
            a(0, 0) <= 0.0 || a.determinant() <= 0.0)
          throw std::invalid_argument(
              "assemble_stiffness: coefficient is not symmetric positive "
              "definite at a quadrature node");
        if (q + 1 == rule.size()) coeff_checked = true;
      }
      local += (rule.weights[q] * detj) * grads.transpose() * a * grads;
    }
    for (int i = 0; i < nd; ++i)
      for (int j = 0; j < nd; ++j)
        triplets.emplace_back(dofs[i], dofs[j], local(i, j));
  }
  Eigen::SparseMatrix<double> mat(space.num_dofs, space.num_dofs);
  mat.setFromTriplets(triplets.begin(), triplets.end());
  return mat;
}

Eigen::VectorXd assemble_domain_load(
    const FeSpace& space, const std::function<double(const Eigen::Vector2d&)>& f,
    int quad_degree) {
  const TriMesh& mesh = *space.mesh;
  const int nd = space.dofs_per_element();
  const TriangleRule rule = triangle_rule(quad_degree);
  Eigen::VectorXd load = Eigen::VectorXd::Zero(space.num_dofs);
  int dofs[6];
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    space.element_dofs(t, dofs);
    const Eigen::Vector2d p0 = mesh.vertices.row(mesh.triangles(t, 0));
    const Eigen::Vector2d p1 = mesh.vertices.row(mesh.triangles(t, 1));
    const Eigen::Vector2d p2 = mesh.vertices.row(mesh.triangles(t, 2));
    Eigen::Matrix2d jac;
    jac.col(0) = p1 - p0;
    jac.col(1) = p2 - p0;
    const double detj = jac.determinant();
    for (int q = 0; q < rule.size(); ++q) {
      const double xi = rule.points(q, 0);
      const double eta = rule.points(q, 1);
      const Eigen::Vector2d x = p0 + jac * Eigen::Vector2d(xi, eta);
      const Eigen::VectorXd shapes = fe_shape_values(space.degree, xi, eta);
      const double w = rule.weights[q] * detj * f(x);
      for (int i = 0; i < nd; ++i) load[dofs[i]] += w * shapes[i];
    }
  }
  return load;
}

Eigen::VectorXd TraceOperator::restrict_to_trace(const Eigen::VectorXd& full) const {
  Eigen::VectorXd out(volume_dof.size());
  for (int i = 0; i < volume_dof.size(); ++i) out[i] = full[volume_dof[i]];
  return out;
}

void TraceOperator::scatter_add(const Eigen::VectorXd& trace,
                                Eigen::VectorXd& full) const {
  for (int i = 0; i < volume_dof.size(); ++i) full[volume_dof[i]] += trace[i];
}

TraceOperator trace_restriction(const FeSpace& space, const BoundaryMesh& bmesh) {
  const TriMesh& mesh = *space.mesh;
  for (int s = 0; s < bmesh.num_segments(); ++s) {
    const int t = bmesh.parent_edge(s, 0);
    const int e = bmesh.parent_edge(s, 1);
    if (t < 0 || t >= mesh.num_triangles())
      throw std::invalid_argument("trace_restriction: boundary mesh does not match");
    const int u = mesh.triangles(t, e);
    const int w = mesh.triangles(t, (e + 1) % 3);
    if (u != bmesh.segments(s, 0) || w != bmesh.segments(s, 1))
      throw std::invalid_argument("trace_restriction: boundary mesh does not match");
  }
  TraceOperator op;
  op.volume_dof = space.boundary_dofs;
  return op;
}

}  // namespace febem
