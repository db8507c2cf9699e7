#pragma once

#include "rmm/fespace.hpp"
#include "rmm/model.hpp"
#include "rmm/sparse.hpp"

#include <Eigen/Dense>

#include <vector>

namespace rmm {

// Body force f and moment M; empty functions mean zero.
struct Loads {
  VectorField f;
  TensorField M;
};

// Loads of a manufactured case for the given L_c.
Loads case_loads(CaseName c, const MaterialParams& params);

// Which bilinear form the element kernel integrates.
enum class ElementKind {
  primal,
  mixed,         // D and q blocks; K_DD scaled by 1/(mu_macro L_c^2)
  mixed_limit,   // L_c = inf: K_DD dropped
  cauchy,        // classical elasticity with Cmacro on the u block only
};

struct ElementSystem {
  Eigen::MatrixXd k_local;
  Eigen::VectorXd f_local;
  std::vector<int> scatter;
};

// Element matrix and load vector in the local layout of DofMap
// (u nodes, Nedelec functions, RT faces, q). The scatter is left empty; the
// global routines fill it from the dof map.
ElementSystem element_system(const ElementGeometry& geom, Sequence sequence, ElementKind kind,
                             const MaterialParams& params, const Loads& loads);

ElementSystem element_primal(const ElementGeometry& geom, Sequence sequence, const MaterialParams& params,
                             const Loads& loads);
ElementSystem element_mixed(const ElementGeometry& geom, Sequence sequence, const MaterialParams& params,
                            const Loads& loads);

ElementKind element_kind(Formulation f, const MaterialParams& params);

// ------------------------------------------------------------- Dirichlet data

// How prescribed tangential traces of P are turned into edge dofs.
enum class PTrace {
  consistent,   // from the displacement data (p = D(Pi_g u~) along the edge)
  interpolate,  // canonical edge dofs of a given tensor field
};

struct DirichletSpec {
  SideMask region = kAllSides;
  VectorField u;           // zero when empty
  PTrace p_mode = PTrace::consistent;
  TensorField P;           // used with PTrace::interpolate
  bool fix_p_all = false;  // constrain every P dof to 0 (Cauchy solves)
};

struct BoundaryData {
  std::vector<int> dofs;  // ascending
  std::vector<double> values;
  SideMask region = 0;
};

// Edge dofs of D(Pi_g u) for one edge a -> b from nodal values of a single
// component: linear uses {u(a), u(b)}, quadratic {u(a), u(mid), u(b)}.
std::array<double, 2> consistent_coupling_values(Sequence sequence, std::span<const double> u_samples);

// Constrains u and P on edges/vertices of Gamma_D. In the L_c = inf mode D
// normal dofs on Gamma_D faces are also fixed to zero, which removes the
// kernel of the curl constraint on the boundary.
BoundaryData make_boundary_data(const Mesh& mesh, const DofMap& dm, const DirichletSpec& spec,
                                bool fix_d_on_boundary);

// ----------------------------------------------------------------- assembly

struct AssemblyOptions {
  bool keep_unconstrained = false;  // store K and f before elimination
  int threads = 0;                  // 0: hardware concurrency
};

struct GlobalSystem {
  CsrMatrix K;  // Dirichlet rows/cols eliminated, unit diagonal
  Eigen::VectorXd rhs;
  CsrMatrix K_full;  // only with keep_unconstrained
  Eigen::VectorXd f_full;
};

GlobalSystem assemble_global(const Mesh& mesh, const DofMap& dm, ElementKind kind, const MaterialParams& params,
                             const Loads& loads, const BoundaryData& bc, const AssemblyOptions& opt = {});

// Worker count for element loops.
int resolve_threads(int requested);

}  // namespace rmm
