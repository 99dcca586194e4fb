#include "febem/errors.hpp"

#include <Eigen/LU>

#include <cmath>
#include <limits>
#include <stdexcept>

#include "febem/panel.hpp"
#include "febem/quadrature.hpp"

namespace febem {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

template <typename Integrand>
double sum_over_triangles(const FeSpace& space, const std::vector<int>* subset,
                          int quad_degree, Integrand&& integrand) {
  const TriMesh& mesh = *space.mesh;
  const TriangleRule rule = triangle_rule(quad_degree);
  const int nd = space.dofs_per_element();
  int dofs[6];
  double acc = 0.0;
  const int count = subset ? static_cast<int>(subset->size()) : mesh.num_triangles();
  for (int idx = 0; idx < count; ++idx) {
    const int t = subset ? (*subset)[idx] : idx;
    space.element_dofs(t, dofs);
    const Eigen::Vector2d p0 = mesh.vertices.row(mesh.triangles(t, 0));
    const Eigen::Vector2d p1 = mesh.vertices.row(mesh.triangles(t, 1));
    const Eigen::Vector2d p2 = mesh.vertices.row(mesh.triangles(t, 2));
    Eigen::Matrix2d jac;
    jac.col(0) = p1 - p0;
    jac.col(1) = p2 - p0;
    const double detj = jac.determinant();
    const Eigen::Matrix2d jinv_t = jac.inverse().transpose();
    for (int q = 0; q < rule.size(); ++q) {
      const double xi = rule.points(q, 0);
      const double eta = rule.points(q, 1);
      const Eigen::Vector2d x = p0 + jac * Eigen::Vector2d(xi, eta);
      acc += rule.weights[q] * detj * integrand(x, xi, eta, dofs, nd, jinv_t);
    }
  }
  return acc;
}

}  // namespace

double error_h1_semi(const FeSpace& space, const Eigen::VectorXd& u_h,
                     const GradField& exact_grad, int quad_degree) {
  const int degree = space.degree;
  const double sq = sum_over_triangles(
      space, nullptr, quad_degree,
      [&](const Eigen::Vector2d& x, double xi, double eta, const int* dofs, int nd,
          const Eigen::Matrix2d& jinv_t) {
        const Eigen::MatrixXd grads = jinv_t * fe_shape_gradients(degree, xi, eta);
        Eigen::Vector2d gh = Eigen::Vector2d::Zero();
        for (int i = 0; i < nd; ++i) gh += u_h[dofs[i]] * grads.col(i);
        return (exact_grad(x) - gh).squaredNorm();
      });
  return std::sqrt(sq);
}

double error_l2(const FeSpace& space, const Eigen::VectorXd& u_h,
                const ScalarField& exact, int quad_degree) {
  const int degree = space.degree;
  const double sq = sum_over_triangles(
      space, nullptr, quad_degree,
      [&](const Eigen::Vector2d& x, double xi, double eta, const int* dofs, int nd,
          const Eigen::Matrix2d&) {
        const Eigen::VectorXd shapes = fe_shape_values(degree, xi, eta);
        double uh = 0.0;
        for (int i = 0; i < nd; ++i) uh += u_h[dofs[i]] * shapes[i];
        const double e = exact(x) - uh;
        return e * e;
      });
  return std::sqrt(sq);
}

double error_l2_strip(const FeSpace& space, const Eigen::VectorXd& u_h,
                      const ScalarField& exact, const ElementSet& strip,
                      int quad_degree) {
  const int degree = space.degree;
  const double sq = sum_over_triangles(
      space, &strip.elements, quad_degree,
      [&](const Eigen::Vector2d& x, double xi, double eta, const int* dofs, int nd,
          const Eigen::Matrix2d&) {
        const Eigen::VectorXd shapes = fe_shape_values(degree, xi, eta);
        double uh = 0.0;
        for (int i = 0; i < nd; ++i) uh += u_h[dofs[i]] * shapes[i];
        const double e = exact(x) - uh;
        return e * e;
      });
  return std::sqrt(sq);
}

double error_flux_weighted(const BoundaryMesh& bmesh, const BemSpace& space,
                           const Eigen::VectorXd& phi_h, const FluxFn& exact_flux,
                           double h, int quad_order) {
  const QuadratureRule1D& rule = cached_gauss(quad_order);
  const Eigen::MatrixXd c = space.shape_coefficients();
  const int nl = static_cast<int>(c.rows());
  double sq = 0.0;
  for (int s = 0; s < bmesh.num_segments(); ++s) {
    const Eigen::Vector2d a = bmesh.a.row(s);
    const Eigen::Vector2d d = Eigen::Vector2d(bmesh.b.row(s)) - a;
    const Eigen::Vector2d nrm = bmesh.normals.row(s);
    for (int q = 0; q < rule.size(); ++q) {
      const double u = rule.points[q];
      double ph = 0.0;
      for (int l = 0; l < nl; ++l) {
        double shape = 0.0;
        double um = 1.0;
        for (int p = 0; p < c.cols(); ++p, um *= u) shape += c(l, p) * um;
        ph += phi_h[space.dof(s, l)] * shape;
      }
      const double e = exact_flux(a + u * d, nrm) - ph;
      sq += rule.weights[q] * bmesh.length[s] * e * e;
    }
  }
  return std::sqrt(h * sq);
}

EocTable eoc(const std::vector<ErrorReport>& reports) {
  if (reports.size() < 2)
    throw std::invalid_argument("eoc: need at least two levels");
  EocTable table;
  auto order = [](double e0, double e1, double h0, double h1) {
    if (!(e0 > 0.0) || !(e1 > 0.0)) return kNaN;
    return std::log(e0 / e1) / std::log(h0 / h1);
  };
  for (size_t i = 0; i + 1 < reports.size(); ++i) {
    const ErrorReport& r0 = reports[i];
    const ErrorReport& r1 = reports[i + 1];
    EocRow row;
    row.level_from = r0.level;
    row.level_to = r1.level;
    row.eoc_h1 = order(r0.err_h1, r1.err_h1, r0.h, r1.h);
    row.eoc_l2 = order(r0.err_l2, r1.err_l2, r0.h, r1.h);
    row.eoc_strip = order(r0.err_strip, r1.err_strip, r0.h, r1.h);
    row.eoc_flux = order(r0.err_flux, r1.err_flux, r0.h, r1.h);
    table.rows.push_back(row);
  }
  return table;
}

double volume_seminorm(const TriMesh& mesh, const ScalarField& density_sq,
                       int quad_degree) {
  const TriangleRule rule = triangle_rule(quad_degree);
  double acc = 0.0;
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
      acc += rule.weights[q] * detj * density_sq(x);
    }
  }
  return std::sqrt(acc);
}

double boundary_h1_seminorm(
    const BoundaryMesh& bmesh,
    const std::function<double(const Eigen::Vector2d&, const Eigen::Vector2d&,
                               const Eigen::Vector2d&)>& dphi_ds,
    int quad_order) {
  const QuadratureRule1D& rule = cached_gauss(quad_order);
  double acc = 0.0;
  for (int s = 0; s < bmesh.num_segments(); ++s) {
    const Eigen::Vector2d a = bmesh.a.row(s);
    const Eigen::Vector2d d = Eigen::Vector2d(bmesh.b.row(s)) - a;
    const Eigen::Vector2d tau = d / bmesh.length[s];
    const Eigen::Vector2d nrm = bmesh.normals.row(s);
    for (int q = 0; q < rule.size(); ++q) {
      const double v = dphi_ds(a + rule.points[q] * d, tau, nrm);
      acc += rule.weights[q] * bmesh.length[s] * v * v;
    }
  }
  return std::sqrt(acc);
}

}  // namespace febem
