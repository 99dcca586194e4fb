#include "febem/bem.hpp"

#include <Eigen/Cholesky>
#include <cmath>
#include <stdexcept>

#include "febem/quadrature.hpp"

namespace febem {

namespace {

// segment mass moments int_0^1 u^(m+n) du * L contracted with shape coeffs
Eigen::MatrixXd segment_mass(const Eigen::MatrixXd& rows, const Eigen::MatrixXd& cols,
                             double length) {
  const int p = static_cast<int>(rows.cols());
  const int q = static_cast<int>(cols.cols());
  Eigen::MatrixXd mono(p, q);
  for (int m = 0; m < p; ++m)
    for (int n = 0; n < q; ++n) mono(m, n) = 1.0 / (m + n + 1.0);
  return length * rows * mono * cols.transpose();
}

void check_scaling(const BoundaryMesh& bmesh) {
  const double diam = polygon_diameter(bmesh);
  if (diam >= 1.0)
    throw std::domain_error(
        "slp_matrix: diam(Omega) = " + std::to_string(diam) +
        " >= 1; the 2D single layer operator is not elliptic at this scale "
        "(rescale the geometry)");
}

}  // namespace

Eigen::MatrixXd TraceSpace::shape_coefficients() const {
  if (degree == 1) {
    Eigen::MatrixXd c(2, 2);
    c << 1, -1, 0, 1;
    return c;
  }
  Eigen::MatrixXd c(3, 3);  // Lagrange nodes 0, 1/2, 1
  c << 1, -3, 2, 0, 4, -4, 0, -1, 2;
  return c;
}

Eigen::MatrixXd BemSpace::shape_coefficients() const {
  if (degree == 0) {
    return Eigen::MatrixXd::Ones(1, 1);
  }
  Eigen::MatrixXd c(2, 2);  // endpoint Lagrange
  c << 1, -1, 0, 1;
  return c;
}

TraceSpace make_trace_space(const BoundaryMesh& bmesh, int k) {
  if (k != 1 && k != 2) throw std::invalid_argument("make_trace_space: k in {1,2}");
  TraceSpace t;
  t.degree = k;
  t.num_segments = bmesh.num_segments();
  t.num_dofs = k * t.num_segments;
  return t;
}

BemSpace make_bem_space(const BoundaryMesh& bmesh, int k) {
  if (k != 1 && k != 2) throw std::invalid_argument("make_bem_space: k in {1,2}");
  BemSpace m;
  m.degree = k - 1;
  m.num_segments = bmesh.num_segments();
  m.num_dofs = k * m.num_segments;
  return m;
}

Eigen::MatrixXd slp_matrix(const BoundaryMesh& bmesh, const BemSpace& space,
                           int outer_order) {
  check_scaling(bmesh);
  const int ns = bmesh.num_segments();
  const Eigen::MatrixXd coeffs = space.shape_coefficients();
  const int nl = static_cast<int>(coeffs.rows());
  Eigen::MatrixXd mat = Eigen::MatrixXd::Zero(space.num_dofs, space.num_dofs);
  for (int i = 0; i < ns; ++i) {
    for (int j = 0; j < ns; ++j) {
      const PanelPair pair = pair_from_boundary(bmesh, i, j);
      const Eigen::MatrixXd mom =
          slp_panel_moments(pair, space.degree, space.degree, outer_order);
      const Eigen::MatrixXd block = coeffs * mom * coeffs.transpose();
      for (int a = 0; a < nl; ++a)
        for (int b = 0; b < nl; ++b)
          mat(space.dof(i, a), space.dof(j, b)) += block(a, b);
    }
  }
  return mat;
}

Eigen::MatrixXd dlp_matrix(const BoundaryMesh& bmesh, const TraceSpace& trace,
                           const BemSpace& flux, int outer_order) {
  const int ns = bmesh.num_segments();
  const Eigen::MatrixXd ct = trace.shape_coefficients();
  const Eigen::MatrixXd cm = flux.shape_coefficients();
  const int nt = static_cast<int>(ct.rows());
  const int nm = static_cast<int>(cm.rows());

  // raw double layer part <Ktilde u, psi> (principal value Galerkin integral)
  Eigen::MatrixXd kpart = Eigen::MatrixXd::Zero(flux.num_dofs, trace.num_dofs);
  for (int i = 0; i < ns; ++i) {    // target: test function psi
    for (int j = 0; j < ns; ++j) {  // source: trial function u
      const PanelPair pair = pair_from_boundary(bmesh, i, j);
      const Eigen::MatrixXd mom =
          dlp_panel_moments(pair, flux.degree, trace.degree, outer_order);
      const Eigen::MatrixXd block = cm * mom * ct.transpose();
      for (int a = 0; a < nm; ++a)
        for (int b = 0; b < nt; ++b)
          kpart(flux.dof(i, a), trace.dof(j, b)) += block(a, b);
    }
  }
  // b(u, psi) = <(1/2 - K) u, psi> = (1/2) <u, psi> - <Ktilde u, psi>
  return 0.5 * mixed_mass_matrix(bmesh, trace, flux) - kpart;
}

Eigen::MatrixXd derivative_matrix(const BoundaryMesh& bmesh, const TraceSpace& trace) {
  const int ns = bmesh.num_segments();
  const int k = trace.degree;
  Eigen::MatrixXd dmap(k, k + 1);
  if (k == 1) {
    dmap << -1, 1;
  } else {
    // derivatives of the quadratic Lagrange shapes in the endpoint P1 basis
    dmap << -3, 4, -1, 1, -4, 3;
  }
  BemSpace flux;
  flux.degree = k - 1;
  flux.num_segments = ns;
  flux.num_dofs = k * ns;
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(flux.num_dofs, trace.num_dofs);
  for (int s = 0; s < ns; ++s) {
    for (int a = 0; a < k; ++a)
      for (int b = 0; b <= k; ++b)
        g(flux.dof(s, a), trace.dof(s, b)) += dmap(a, b) / bmesh.length[s];
  }
  return g;
}

Eigen::MatrixXd hypersingular_from_slp(const BoundaryMesh& bmesh,
                                       const TraceSpace& trace,
                                       const Eigen::MatrixXd& slp) {
  const Eigen::MatrixXd g = derivative_matrix(bmesh, trace);
  return g.transpose() * slp * g;
}

Eigen::MatrixXd hypersingular_matrix(const BoundaryMesh& bmesh,
                                     const TraceSpace& trace, int outer_order) {
  BemSpace flux = make_bem_space(bmesh, trace.degree);
  return hypersingular_from_slp(bmesh, trace, slp_matrix(bmesh, flux, outer_order));
}

Eigen::MatrixXd trace_mass_matrix(const BoundaryMesh& bmesh, const TraceSpace& t) {
  const Eigen::MatrixXd c = t.shape_coefficients();
  const int nl = static_cast<int>(c.rows());
  Eigen::MatrixXd mat = Eigen::MatrixXd::Zero(t.num_dofs, t.num_dofs);
  for (int s = 0; s < bmesh.num_segments(); ++s) {
    const Eigen::MatrixXd block = segment_mass(c, c, bmesh.length[s]);
    for (int a = 0; a < nl; ++a)
      for (int b = 0; b < nl; ++b) mat(t.dof(s, a), t.dof(s, b)) += block(a, b);
  }
  return mat;
}

Eigen::MatrixXd flux_mass_matrix(const BoundaryMesh& bmesh, const BemSpace& m) {
  const Eigen::MatrixXd c = m.shape_coefficients();
  const int nl = static_cast<int>(c.rows());
  Eigen::MatrixXd mat = Eigen::MatrixXd::Zero(m.num_dofs, m.num_dofs);
  for (int s = 0; s < bmesh.num_segments(); ++s) {
    const Eigen::MatrixXd block = segment_mass(c, c, bmesh.length[s]);
    for (int a = 0; a < nl; ++a)
      for (int b = 0; b < nl; ++b) mat(m.dof(s, a), m.dof(s, b)) += block(a, b);
  }
  return mat;
}

Eigen::MatrixXd mixed_mass_matrix(const BoundaryMesh& bmesh, const TraceSpace& t,
                                  const BemSpace& m) {
  const Eigen::MatrixXd ct = t.shape_coefficients();
  const Eigen::MatrixXd cm = m.shape_coefficients();
  Eigen::MatrixXd mat = Eigen::MatrixXd::Zero(m.num_dofs, t.num_dofs);
  for (int s = 0; s < bmesh.num_segments(); ++s) {
    const Eigen::MatrixXd block = segment_mass(cm, ct, bmesh.length[s]);
    for (int a = 0; a < block.rows(); ++a)
      for (int b = 0; b < block.cols(); ++b)
        mat(m.dof(s, a), t.dof(s, b)) += block(a, b);
  }
  return mat;
}

Eigen::VectorXd l2_project_trace(const BoundaryFn& g, const BoundaryMesh& bmesh,
                                 const TraceSpace& space, int quad_order) {
  const QuadratureRule1D& rule = cached_gauss(quad_order);
  const Eigen::MatrixXd c = space.shape_coefficients();
  const int nl = static_cast<int>(c.rows());
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(space.num_dofs);
  for (int s = 0; s < bmesh.num_segments(); ++s) {
    const Eigen::Vector2d a = bmesh.a.row(s);
    const Eigen::Vector2d d = bmesh.b.row(s) - bmesh.a.row(s);
    for (int q = 0; q < rule.size(); ++q) {
      const double u = rule.points[q];
      const double gv = g(a + u * d) * rule.weights[q] * bmesh.length[s];
      for (int l = 0; l < nl; ++l) {
        double shape = 0.0;
        double um = 1.0;
        for (int p = 0; p < c.cols(); ++p, um *= u) shape += c(l, p) * um;
        rhs[space.dof(s, l)] += gv * shape;
      }
    }
  }
  const Eigen::MatrixXd mass = trace_mass_matrix(bmesh, space);
  Eigen::LLT<Eigen::MatrixXd> llt(mass);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error("l2_project_trace: singular boundary mass matrix");
  return llt.solve(rhs);
}

Eigen::VectorXd l2_project_flux(const FluxFn& g, const BoundaryMesh& bmesh,
                                const BemSpace& space, int quad_order) {
  const QuadratureRule1D& rule = cached_gauss(quad_order);
  const Eigen::MatrixXd c = space.shape_coefficients();
  const int nl = static_cast<int>(c.rows());
  Eigen::VectorXd out(space.num_dofs);
  for (int s = 0; s < bmesh.num_segments(); ++s) {
    const Eigen::Vector2d a = bmesh.a.row(s);
    const Eigen::Vector2d d = bmesh.b.row(s) - bmesh.a.row(s);
    const Eigen::Vector2d nrm = bmesh.normals.row(s);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(nl);
    for (int q = 0; q < rule.size(); ++q) {
      const double u = rule.points[q];
      const double gv = g(a + u * d, nrm) * rule.weights[q] * bmesh.length[s];
      for (int l = 0; l < nl; ++l) {
        double shape = 0.0;
        double um = 1.0;
        for (int p = 0; p < c.cols(); ++p, um *= u) shape += c(l, p) * um;
        rhs[l] += gv * shape;
      }
    }
    const Eigen::MatrixXd block = segment_mass(c, c, bmesh.length[s]);
    const Eigen::VectorXd local = block.llt().solve(rhs);
    for (int l = 0; l < nl; ++l) out[space.dof(s, l)] = local[l];
  }
  return out;
}

Eigen::VectorXd trace_load(const FluxFn& g, const BoundaryMesh& bmesh,
                           const TraceSpace& space, int quad_order) {
  const QuadratureRule1D& rule = cached_gauss(quad_order);
  const Eigen::MatrixXd c = space.shape_coefficients();
  const int nl = static_cast<int>(c.rows());
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(space.num_dofs);
  for (int s = 0; s < bmesh.num_segments(); ++s) {
    const Eigen::Vector2d a = bmesh.a.row(s);
    const Eigen::Vector2d d = bmesh.b.row(s) - bmesh.a.row(s);
    const Eigen::Vector2d nrm = bmesh.normals.row(s);
    for (int q = 0; q < rule.size(); ++q) {
      const double u = rule.points[q];
      const double gv = g(a + u * d, nrm) * rule.weights[q] * bmesh.length[s];
      for (int l = 0; l < nl; ++l) {
        double shape = 0.0;
        double um = 1.0;
        for (int p = 0; p < c.cols(); ++p, um *= u) shape += c(l, p) * um;
        rhs[space.dof(s, l)] += gv * shape;
      }
    }
  }
  return rhs;
}

double eval_exterior_representation(const BoundaryMesh& bmesh,
                                    const TraceSpace& trace, const BemSpace& flux,
                                    const Eigen::VectorXd& u_trace,
                                    const Eigen::VectorXd& u0h,
                                    const Eigen::VectorXd& phi,
                                    const Eigen::Vector2d& x) {
  // reject points on or inside Gamma: distance check plus the winding of
  // the double layer potential of 1 (-1 inside, 0 outside)
  double winding = 0.0;
  for (int s = 0; s < bmesh.num_segments(); ++s) {
    const Panel panel = Panel::from_points(bmesh.a.row(s), bmesh.b.row(s));
    PanelPair probe;
    probe.source = panel;
    probe.target = panel;
    probe.relation = PanelRelation::disjoint;
    const Eigen::Vector2d pa = bmesh.a.row(s);
    const Eigen::Vector2d pb = bmesh.b.row(s);
    const Eigen::Vector2d d = pb - pa;
    const double t = std::clamp((x - pa).dot(d) / d.squaredNorm(), 0.0, 1.0);
    if ((pa + t * d - x).norm() < 1e-12)
      throw std::domain_error("eval_exterior_representation: x on Gamma");
    winding += dlp_potential_moments(panel, x, 0)[0];
  }
  if (winding < -0.5)
    throw std::domain_error("eval_exterior_representation: x inside Omega");

  const Eigen::MatrixXd ct = trace.shape_coefficients();
  const Eigen::MatrixXd cm = flux.shape_coefficients();
  double value = 0.0;
  for (int s = 0; s < bmesh.num_segments(); ++s) {
    const Panel panel = Panel::from_points(bmesh.a.row(s), bmesh.b.row(s));
    const Eigen::VectorXd dmom = dlp_potential_moments(panel, x, trace.degree);
    const Eigen::VectorXd smom = slp_potential_moments(panel, x, flux.degree);
    for (int l = 0; l <= trace.degree; ++l) {
      const int i = trace.dof(s, l);
      value += (u_trace[i] - u0h[i]) * ct.row(l).dot(dmom);
    }
    for (int l = 0; l <= flux.degree; ++l)
      value -= phi[flux.dof(s, l)] * cm.row(l).dot(smom);
  }
  return value;
}

double calderon_residual(const BoundaryMesh& bmesh, const TraceSpace& trace,
                         const BemSpace& flux, const BoundaryFn& gamma_u,
                         const FluxFn& phi, int quad_order) {
  const Eigen::VectorXd pu = l2_project_trace(gamma_u, bmesh, trace, quad_order);
  const Eigen::VectorXd pphi = l2_project_flux(phi, bmesh, flux, quad_order);
  const Eigen::MatrixXd v = slp_matrix(bmesh, flux);
  const Eigen::MatrixXd b = dlp_matrix(bmesh, trace, flux);
  const Eigen::VectorXd r = v * pphi + b * pu;
  // Riesz lift into the flux space, then its L2 norm
  const Eigen::MatrixXd mass = flux_mass_matrix(bmesh, flux);
  const Eigen::VectorXd lifted = mass.llt().solve(r);
  return std::sqrt(lifted.dot(r));
}

}  // namespace febem
