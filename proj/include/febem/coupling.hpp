#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>
#include <iosfwd>

#include "febem/bem.hpp"
#include "febem/fe_space.hpp"
#include "febem/manufactured.hpp"

namespace febem {

/// How the jump data enters the right-hand side.
///   project_u0:   u0 -> Pi_h u0 (trace L2 projection); <phi0, v> by Gauss
///                 quadrature. This is the default protocol.
///   project_both: additionally phi0 -> Pi_h^{k-1} phi0 (flux projection).
/// u0 always enters through its projection: the hypersingular and (1/2-K)
/// applications on the right-hand side reuse the assembled operator
/// matrices, which act on discrete functions only.
enum class DataMode { project_u0, project_both };

/// Blocks of the coupled formulation
///   a~(u,v) - b(v,phi) = L1(v),   b(u,psi) + c(phi,psi) = L2(psi).
struct CoupledSystem {
  Eigen::SparseMatrix<double> a_tilde;  // stiffness + D on trace dofs
  Eigen::MatrixXd b;                    // num_dofs(M) x num_dofs(T)
  Eigen::MatrixXd c;                    // single layer, SPD
  Eigen::MatrixXd d;                    // hypersingular block on trace dofs
  Eigen::VectorXd rhs1;                 // length num_dofs(V)
  Eigen::VectorXd rhs2;                 // length num_dofs(M)
  TraceOperator trace;
  int n_fem = 0;
  int n_bem = 0;
};

/// Assembles all operator blocks (right-hand sides stay zero).
CoupledSystem assemble_system(const FeSpace& fe, const TraceOperator& trace,
                              const TraceSpace& t, const BemSpace& m,
                              const Coefficient& coeff, const BoundaryMesh& bmesh,
                              int quad_boundary = 16);

/// Fills rhs1 = <f,v> + <phi0,v> + <D Pi_h u0, v> and
/// rhs2 = <psi, (1/2-K) Pi_h u0> for the given data.
void assemble_rhs(CoupledSystem& sys, const FeSpace& fe, const TraceSpace& t,
                  const BemSpace& m, const BoundaryMesh& bmesh,
                  const std::function<double(const Eigen::Vector2d&)>& f,
                  const BoundaryFn& u0, const FluxFn& phi0, DataMode mode,
                  int quad_volume = 10, int quad_boundary = 16);

struct CoupledSolution {
  Eigen::VectorXd u;       // FeSpace coefficients
  Eigen::VectorXd phi;     // BemSpace coefficients
  double residual = 0.0;   // relative algebraic residual
};

/// Direct sparse factorization of the full block matrix
/// [A~, -B^T; B, C] with the dense boundary blocks embedded as sparse
/// entries. Throws std::runtime_error on factorization failure.
CoupledSolution solve(const CoupledSystem& sys);

/// Quadrature value of <f,1>_Omega + <phi0,1>_Gamma (the 2D compatibility
/// functional; the caller decides whether the value is acceptable).
/// The boundary part uses adaptive quadrature so that corner singularities
/// of the data do not pollute the check.
double check_compatibility(const std::function<double(const Eigen::Vector2d&)>& f,
                           const FluxFn& phi0, const FeSpace& fe,
                           const BoundaryMesh& bmesh, int quad_volume = 10);

/// Coordinate-format dump "row col value" of the assembled block matrix.
void write_system_matrix(const CoupledSystem& sys, std::ostream& out);

}  // namespace febem
