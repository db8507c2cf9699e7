#include "rmm/problem.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <tuple>

namespace rmm {

namespace {

// Penalty weight of the factored primal matrix, relative to mu_macro.
// Large enough for fast multiplier convergence, small enough to keep the
// primal matrix well conditioned.
constexpr double kPenaltyWeight = 1e4;

std::unique_ptr<Factorization> factor_spd(const CsrMatrix& K) {
  try {
    return std::make_unique<CholeskyFactor>(K);
  } catch (const NumericalError&) {
    return std::make_unique<LuFactor>(K);
  }
}

// Augmented Lagrangian iteration for the mixed system. Each step solves the
// primal system with curl weight tau gamma, then updates the multiplier
// d = tau (gamma Curl x + d) with tau = kappa/(kappa+gamma), kappa =
// mu_macro L_c^2. Its fixed point is d = kappa Curl x (finite L_c) or
// Curl x = 0 (L_c = inf), i.e. the mixed solution; q vanishes there.
Eigen::VectorXd iterated_penalty(const Mesh& mesh, const ProblemSetup& s, const DofMap& dm, const BoundaryData& bc,
                                 const GlobalSystem& mixed, SolveStats* stats) {
  const double mu = s.params.mu_macro;
  const double gamma = kPenaltyWeight * mu;
  const double kappa = s.params.lc_infinite() ? kInf : mu * s.params.L_c * s.params.L_c;
  const double tau = s.params.lc_infinite() ? 1.0 : kappa / (kappa + gamma);

  MaterialParams pp = s.params;
  pp.L_c = std::sqrt(tau * gamma / mu);
  const DofMap dp = build_dofmap(mesh, s.sequence, Formulation::primal);
  const BoundaryData bc_p = make_boundary_data(mesh, dp, s.dirichlet, false);
  AssemblyOptions opt;
  opt.threads = s.threads;
  const GlobalSystem primal = assemble_global(mesh, dp, ElementKind::primal, pp, s.loads, bc_p, opt);
  const auto factor = factor_spd(primal.K);
  const int n1 = dp.total;

  std::vector<int> fixed_d;
  for (int i : bc.dofs)
    if (i >= dm.off_d && i < dm.off_d + dm.n_d) fixed_d.push_back(i);
  auto curl = [&](const Eigen::VectorXd& x) {
    Eigen::VectorXd full = Eigen::VectorXd::Zero(dm.total), c;
    full.head(n1) = x;
    discrete_curl(mesh, dm, full, c);
    for (int i : fixed_d) c[i] = 0.0;
    return Eigen::VectorXd(c.segment(dm.off_d, dm.n_d));
  };

  // x converges geometrically until it reaches the roundoff floor of the
  // factored matrix; stop once it stagnates there.
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n1), d = Eigen::VectorXd::Zero(dm.n_d), d_prev = d;
  Eigen::VectorXd xm = Eigen::VectorXd::Zero(dm.total);
  constexpr int kMaxIter = 100;
  int it = 0;
  double dx_prev = kInf;
  bool converged = false;
  while (it < kMaxIter && !converged) {
    xm.setZero();
    xm.segment(dm.off_d, dm.n_d) = d;
    const Eigen::VectorXd rhs = primal.rhs - tau * mixed.K.multiply(xm).head(n1);
    Eigen::VectorXd xn = factor->solve(rhs);
    xn += factor->solve(rhs - primal.K.multiply(xn));
    const double dx = (xn - x).lpNorm<Eigen::Infinity>() / std::max(xn.lpNorm<Eigen::Infinity>(), 1e-300);
    converged = dx <= 1e-14 || (dx <= 1e-8 && dx > 0.25 * dx_prev);
    dx_prev = dx;
    x = xn;
    d_prev = d;
    d = tau * (gamma * curl(x) + d);
    ++it;
  }
  if (!converged) throw NumericalError("iterated penalty did not converge");
  xm.setZero();
  xm.head(n1) = x;
  xm.segment(dm.off_d, dm.n_d) = d;
  // Residual of the displacement and microdistortion rows; the D rows carry
  // kappa-sized entries whose roundoff does not feed back into x.
  if (stats) {
    const Eigen::VectorXd r = (mixed.rhs - mixed.K.multiply(xm)).head(n1);
    const double bn = std::max(mixed.rhs.head(n1).lpNorm<Eigen::Infinity>(), std::numeric_limits<double>::min());
    stats->residual = r.lpNorm<Eigen::Infinity>() / bn;
    stats->iterations = it;
  }
  // D modes invisible to the free P rows (boundary harmonic fields) only decay
  // like tau^k; with x fixed the sequence is geometric, so extrapolate. The
  // step amplifies roundoff by kappa/gamma, which only affects D.
  if (tau < 1.0) xm.segment(dm.off_d, dm.n_d) += (tau / (1.0 - tau)) * (d - d_prev);
  return xm;
}

}  // namespace

ProblemResult solve_problem(const Mesh& mesh, const ProblemSetup& s) {
  validate(s.params);
  const ElementKind kind = element_kind(s.formulation, s.params);
  ProblemResult r;
  r.dofmap = build_dofmap(mesh, s.sequence, s.formulation);
  const BoundaryData bc = make_boundary_data(mesh, r.dofmap, s.dirichlet, kind == ElementKind::mixed_limit);
  AssemblyOptions opt;
  opt.keep_unconstrained = s.keep_unconstrained;
  opt.threads = s.threads;
  GlobalSystem sys = assemble_global(mesh, r.dofmap, kind, s.params, s.loads, bc, opt);
  const bool cg_ok = kind == ElementKind::primal && s.params.mu_c > 0.0;
  const bool penalty_ok = kind == ElementKind::mixed || kind == ElementKind::mixed_limit;
  SolverKind solver = s.solver;
  if (solver == SolverKind::block_cg && !cg_ok) throw InputError("block CG needs the primal formulation with mu_c > 0");
  if (solver == SolverKind::iterated_penalty && !penalty_ok)
    throw InputError("the iterated penalty solver needs the mixed formulation");
  if (solver == SolverKind::automatic) {
    solver = SolverKind::direct;
    if (cg_ok && r.dofmap.total > kDirectSolveLimit) solver = SolverKind::block_cg;
    if (penalty_ok && r.dofmap.total > kDirectMixedLimit) solver = SolverKind::iterated_penalty;
  }
  if (solver == SolverKind::iterated_penalty) {
    r.x = iterated_penalty(mesh, s, r.dofmap, bc, sys, &r.stats);
  } else if (solver == SolverKind::block_cg) {
    // Eliminating P pointwise turns the energy into Cauchy elasticity with
    // the homogenized macro tensor, a spectrally close Schur complement.
    MaterialParams hom = s.params;
    std::tie(hom.lambda_macro, hom.mu_macro) = macro_from_meso_micro(s.params);
    DirichletSpec d = s.dirichlet;
    d.fix_p_all = true;
    const BoundaryData bc_s = make_boundary_data(mesh, r.dofmap, d, false);
    AssemblyOptions sopt;
    sopt.threads = s.threads;
    const GlobalSystem schur = assemble_global(mesh, r.dofmap, ElementKind::cauchy, hom, {}, bc_s, sopt);
    r.x = block_pcg_solve(sys.K, sys.rhs, r.dofmap.n_u, schur.K, 1e-13, &r.stats);
  } else {
    r.x = factor_solve(sys.K, sys.rhs, &r.stats);
  }
  r.K_full = std::move(sys.K_full);
  r.f_full = std::move(sys.f_full);
  return r;
}

ProblemResult solve_cauchy(const Mesh& mesh, Sequence sequence, const MaterialParams& params, const Loads& loads,
                           const DirichletSpec& dirichlet, bool keep_unconstrained) {
  if (!(params.mu_macro > 0.0) || !(2.0 * params.mu_macro + 3.0 * params.lambda_macro > 0.0))
    throw InputError("macro moduli are not positive definite");
  ProblemResult r;
  r.dofmap = build_dofmap(mesh, sequence, Formulation::primal);
  DirichletSpec d = dirichlet;
  d.fix_p_all = true;
  const BoundaryData bc = make_boundary_data(mesh, r.dofmap, d, false);
  AssemblyOptions opt;
  opt.keep_unconstrained = keep_unconstrained;
  GlobalSystem sys = assemble_global(mesh, r.dofmap, ElementKind::cauchy, params, loads, bc, opt);
  r.x = factor_solve(sys.K, sys.rhs, &r.stats);
  r.K_full = std::move(sys.K_full);
  r.f_full = std::move(sys.f_full);
  return r;
}

ProblemSetup case_setup(CaseName c, Sequence sequence, Formulation formulation, double L_c) {
  ProblemSetup s;
  s.sequence = sequence;
  s.formulation = formulation;
  s.params = case_params(c, L_c);
  s.loads = case_loads(c, s.params);
  const MaterialParams p = s.params;
  s.dirichlet.region = kAllSides;
  s.dirichlet.u = [c, p](const Vec3& x) { return evaluate_case(c, p, x).u; };
  s.dirichlet.p_mode = PTrace::interpolate;
  s.dirichlet.P = [c, p](const Vec3& x) { return evaluate_case(c, p, x).P; };
  return s;
}

CaseErrors case_errors(const Mesh& mesh, const ProblemResult& r, CaseName c, double L_c) {
  const MaterialParams p = case_params(c, L_c);
  const VectorField u = [&](const Vec3& x) { return evaluate_case(c, p, x).u; };
  const TensorField P = [&](const Vec3& x) { return evaluate_case(c, p, x).P; };
  const Solution sol = r.solution(mesh);
  CaseErrors e;
  e.u_error = l2_error(sol, Field::u, u);
  e.P_error = l2_error(sol, Field::P, P);
  e.u_norm = l2_norm(mesh, u);
  e.P_norm = l2_norm(mesh, P);
  return e;
}

}  // namespace rmm
