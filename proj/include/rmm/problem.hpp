#pragma once

#include "rmm/assembly.hpp"
#include "rmm/solver.hpp"

namespace rmm {

enum class SolverKind {
  automatic,  // LU when small; block CG (primal) or iterated penalty (mixed) above the limits
  direct,
  block_cg,          // primal with mu_c > 0
  iterated_penalty,  // mixed: augmented Lagrangian on D with a factored primal matrix
};

struct ProblemSetup {
  Sequence sequence = Sequence::quadratic;
  Formulation formulation = Formulation::primal;
  MaterialParams params;
  Loads loads;
  DirichletSpec dirichlet;
  bool keep_unconstrained = false;
  int threads = 0;
  SolverKind solver = SolverKind::automatic;
};

// Sizes above which SolverKind::automatic leaves sparse LU. Mixed systems fill
// in far more than primal ones of the same size.
inline constexpr int kDirectSolveLimit = 150000;
inline constexpr int kDirectMixedLimit = 40000;

struct ProblemResult {
  DofMap dofmap;
  Eigen::VectorXd x;
  SolveStats stats;
  CsrMatrix K_full;  // only with keep_unconstrained
  Eigen::VectorXd f_full;

  Solution solution(const Mesh& mesh) const { return {&mesh, &dofmap, x}; }
};

ProblemResult solve_problem(const Mesh& mesh, const ProblemSetup& setup);

// Classical elasticity with Cmacro on the u space of `sequence`; the P block
// is present in the dof map but fixed to zero.
ProblemResult solve_cauchy(const Mesh& mesh, Sequence sequence, const MaterialParams& params, const Loads& loads,
                           const DirichletSpec& dirichlet, bool keep_unconstrained = false);

// Manufactured case on [-1,1]^3 with Gamma_D = whole boundary, u~ and the
// tangential trace of P~ prescribed. Material from case_params.
ProblemSetup case_setup(CaseName c, Sequence sequence, Formulation formulation, double L_c);

struct CaseErrors {
  double u_error = 0.0, P_error = 0.0;
  double u_norm = 0.0, P_norm = 0.0;
  double u_relative() const { return u_norm > 0.0 ? u_error / u_norm : u_error; }
  double P_relative() const { return P_norm > 0.0 ? P_error / P_norm : P_error; }
};

CaseErrors case_errors(const Mesh& mesh, const ProblemResult& r, CaseName c, double L_c);

}  // namespace rmm
