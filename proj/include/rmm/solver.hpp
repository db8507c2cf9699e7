#pragma once

#include "rmm/assembly.hpp"
#include "rmm/fespace.hpp"
#include "rmm/model.hpp"
#include "rmm/sparse.hpp"

#include <memory>
#include <utility>
#include <vector>

namespace rmm {

struct SingularMatrixError : NumericalError {
  SingularMatrixError(const std::string& what, int pivot) : NumericalError(what), pivot(pivot) {}
  int pivot;  // row of the first zero pivot, or -1 when unknown
};

struct SolveStats {
  double residual = 0.0;  // ||Kx - b||_inf / ||b||_inf
  double rcond = 0.0;     // reciprocal condition estimate (direct solves)
  int iterations = 0;     // refinement steps or CG iterations
};

// Reusable factorizations. solve() applies the inverse once, without
// refinement.
class Factorization {
 public:
  virtual ~Factorization() = default;
  virtual Eigen::VectorXd solve(const Eigen::VectorXd& b) const = 0;
};

// Sparse LU (UMFPACK, nested-dissection ordering). Throws
// SingularMatrixError on a zero pivot.
class LuFactor final : public Factorization {
 public:
  explicit LuFactor(const CsrMatrix& K);
  ~LuFactor() override;
  LuFactor(const LuFactor&) = delete;
  LuFactor& operator=(const LuFactor&) = delete;
  Eigen::VectorXd solve(const Eigen::VectorXd& b) const override;
  double rcond() const { return rcond_; }

 private:
  const CsrMatrix& K_;
  void* numeric_ = nullptr;
  double rcond_ = 0.0;
};

// Supernodal Cholesky (CHOLMOD) of a symmetric matrix; only the upper
// triangle is read. Throws NumericalError when K is not positive definite.
class CholeskyFactor final : public Factorization {
 public:
  explicit CholeskyFactor(const CsrMatrix& K);
  ~CholeskyFactor() override;
  CholeskyFactor(const CholeskyFactor&) = delete;
  CholeskyFactor& operator=(const CholeskyFactor&) = delete;
  Eigen::VectorXd solve(const Eigen::VectorXd& b) const override;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Sparse LU with partial pivoting and a nested-dissection ordering, followed
// by iterative refinement (one step, up to three while the residual exceeds
// 1e-10 ||b||). Throws SingularMatrixError on a zero pivot.
Eigen::VectorXd factor_solve(const CsrMatrix& K, const Eigen::VectorXd& b, SolveStats* stats = nullptr);

// Conjugate gradients for a symmetric positive definite system ordered as
// [A B; B^T C] with A the leading n_first rows. The preconditioner is the
// symmetric block factorization with S (an SPD approximation of the Schur
// complement A - B C^-1 B^T, factored by sparse Cholesky) and an incomplete
// Cholesky factor of C. Throws NumericalError when CG stalls.
Eigen::VectorXd block_pcg_solve(const CsrMatrix& K, const Eigen::VectorXd& b, int n_first, const CsrMatrix& S,
                                double tol = 1e-13, SolveStats* stats = nullptr);

// -------------------------------------------------------------- solutions

struct Solution {
  const Mesh* mesh = nullptr;
  const DofMap* dofmap = nullptr;
  Eigen::VectorXd x;

  Vec3 u(int tet, const Vec3& ref) const;
  Mat3 P(int tet, const Vec3& ref) const;
  Mat3 curl_P(int tet, const Vec3& ref) const;
  Mat3 D(int tet, const Vec3& ref) const;
  Vec3 q(int tet) const;
};

enum class Field { u, P, D };

// sqrt(sum_e int ||exact - discrete||^2) with a degree-8 rule. An empty
// exact field measures the norm of the discrete one.
double l2_error(const Solution& sol, Field field, const VectorField& exact_u);
double l2_error(const Solution& sol, Field field, const TensorField& exact_P);
double l2_norm(const Mesh& mesh, const VectorField& f);
double l2_norm(const Mesh& mesh, const TensorField& f);

enum class EnergyKind { relaxed, cauchy };

// Stored energy 1/2 a(x, x). relaxed: meso, micro and curvature parts with
// the primal curl term (also for mixed solutions). cauchy: Cmacro acting on
// sym Du.
double energy(const Solution& sol, const MaterialParams& params, EnergyKind which);

// r = <K x - f, v> where v is 1 in `direction` on every u node of `region`
// and zero elsewhere; K and f are the unconstrained system.
double reaction_force(const CsrMatrix& K_full, const Eigen::VectorXd& f_full, const Eigen::VectorXd& x,
                      const Mesh& mesh, const DofMap& dm, SideMask region, int direction);

// Traction [Ce sym E + Cc skw E] nu integrated over the faces of `region`.
double boundary_traction(const Solution& sol, const MaterialParams& params, SideMask region, int direction);

// Least-squares slope of log e against log h.
double convergence_rate(const std::vector<std::pair<double, double>>& h_e);

}  // namespace rmm
