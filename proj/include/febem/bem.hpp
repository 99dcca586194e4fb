#pragma once

#include <Eigen/Core>
#include <functional>

#include "febem/mesh.hpp"
#include "febem/panel.hpp"

namespace febem {

/// Scalar field on Gamma.
using BoundaryFn = std::function<double(const Eigen::Vector2d&)>;
/// Scalar field on Gamma that depends on the segment normal (flux data).
using FluxFn = std::function<double(const Eigen::Vector2d&, const Eigen::Vector2d&)>;

/// Continuous closed-loop space S^{k,1}(T_Gamma), k in {1,2}.
/// Dof order walks the loop: start vertex of segment s, then (k=2) its
/// midpoint, so dof(s,0..k) = {k*s, ..., (k*s+k) mod num_dofs}.
struct TraceSpace {
  int degree = 1;  // k
  int num_segments = 0;
  int num_dofs = 0;

  int dof(int seg, int local) const {
    return (degree * seg + local) % num_dofs;
  }
  /// Local shapes on a segment as monomial coefficients in the panel
  /// parameter u in [0,1]; row = shape, col = monomial power.
  Eigen::MatrixXd shape_coefficients() const;
};

/// Discontinuous space S^{k-1,0}(T_Gamma): k dofs per segment, no coupling
/// across segments. Contains the constant function.
struct BemSpace {
  int degree = 0;  // polynomial degree k-1
  int num_segments = 0;
  int num_dofs = 0;

  int dof(int seg, int local) const { return (degree + 1) * seg + local; }
  Eigen::MatrixXd shape_coefficients() const;
};

TraceSpace make_trace_space(const BoundaryMesh& bmesh, int k);
BemSpace make_bem_space(const BoundaryMesh& bmesh, int k);

/// Galerkin matrix of c(phi,psi) = <V phi, psi>_Gamma. Symmetric positive
/// definite. Throws std::domain_error when diam(Omega) >= 1 (the single
/// layer operator loses ellipticity).
Eigen::MatrixXd slp_matrix(const BoundaryMesh& bmesh, const BemSpace& space,
                           int outer_order = 16);

/// Galerkin matrix B of b(u,psi) = <(1/2 - K)u, psi>_Gamma, shape
/// num_dofs(M) x num_dofs(T). The adjoint double layer operator K' is never
/// assembled separately: it enters the coupled formulation and the Calderon
/// checks only through transposes of this matrix.
Eigen::MatrixXd dlp_matrix(const BoundaryMesh& bmesh, const TraceSpace& trace,
                           const BemSpace& flux, int outer_order = 16);

/// Galerkin matrix of <D u, v>_Gamma through the integration-by-parts
/// identity <D u, v> = <V u', v'> with segment-wise arclength derivatives
/// (which live exactly in the degree-(k-1) discontinuous space).
Eigen::MatrixXd hypersingular_matrix(const BoundaryMesh& bmesh,
                                     const TraceSpace& trace,
                                     int outer_order = 16);
/// Same, reusing an already assembled single layer matrix on the matching
/// flux space.
Eigen::MatrixXd hypersingular_from_slp(const BoundaryMesh& bmesh,
                                       const TraceSpace& trace,
                                       const Eigen::MatrixXd& slp);

/// Arclength derivative map from trace dofs into flux-space coefficients.
Eigen::MatrixXd derivative_matrix(const BoundaryMesh& bmesh,
                                  const TraceSpace& trace);

Eigen::MatrixXd trace_mass_matrix(const BoundaryMesh& bmesh, const TraceSpace& t);
Eigen::MatrixXd flux_mass_matrix(const BoundaryMesh& bmesh, const BemSpace& m);
/// <u_j, psi_i>, shape num_dofs(M) x num_dofs(T).
Eigen::MatrixXd mixed_mass_matrix(const BoundaryMesh& bmesh, const TraceSpace& t,
                                  const BemSpace& m);

/// L2(Gamma)-orthogonal projection onto the trace space.
Eigen::VectorXd l2_project_trace(const BoundaryFn& g, const BoundaryMesh& bmesh,
                                 const TraceSpace& space, int quad_order = 16);

/// Segment-local L2 projection onto the flux space.
Eigen::VectorXd l2_project_flux(const FluxFn& g, const BoundaryMesh& bmesh,
                                const BemSpace& space, int quad_order = 16);

/// Load vector <g, v_i> against the trace basis (Gauss per segment).
Eigen::VectorXd trace_load(const FluxFn& g, const BoundaryMesh& bmesh,
                           const TraceSpace& space, int quad_order = 16);

/// Discrete representation formula u_ext(x) = Ktilde(u - u0) - Vtilde(phi)
/// at a point x strictly outside the closed domain. Throws
/// std::domain_error for x on Gamma or inside.
double eval_exterior_representation(const BoundaryMesh& bmesh,
                                    const TraceSpace& trace, const BemSpace& flux,
                                    const Eigen::VectorXd& u_trace,
                                    const Eigen::VectorXd& u0h,
                                    const Eigen::VectorXd& phi,
                                    const Eigen::Vector2d& x);

/// Residual of the exterior Calderon identity V(Pi phi) + (1/2-K)(Pi gamma_u)
/// measured in the discrete L2(Gamma) norm. Vanishes under refinement when
/// (gamma_u, phi) are the traces of a decaying exterior harmonic function.
double calderon_residual(const BoundaryMesh& bmesh, const TraceSpace& trace,
                         const BemSpace& flux, const BoundaryFn& gamma_u,
                         const FluxFn& phi, int quad_order = 16);

}  // namespace febem
