#include "rmm/solver.hpp"

#include <umfpack.h>

#include <algorithm>
#include <limits>

namespace rmm {

namespace {

// Row of the first exactly zero pivot of the factors, in original numbering.
int zero_pivot_row(void* numeric, int n) {
  std::vector<double> udiag(n);
  std::vector<int> p(n), q(n);
  int lnz, unz, nr, nc, nzud;
  if (umfpack_di_get_lunz(&lnz, &unz, &nr, &nc, &nzud, numeric) != UMFPACK_OK) return -1;
  std::vector<int> lp(n + 1), lj(std::max(lnz, 1)), up(n + 1), ui(std::max(unz, 1));
  std::vector<double> lx(std::max(lnz, 1)), ux(std::max(unz, 1));
  int do_recip = 0;
  if (umfpack_di_get_numeric(lp.data(), lj.data(), lx.data(), up.data(), ui.data(), ux.data(), p.data(), q.data(),
                             udiag.data(), &do_recip, nullptr, numeric) != UMFPACK_OK)
    return -1;
  for (int k = 0; k < n; ++k)
    if (udiag[k] == 0.0) return q[k];
  return -1;
}

}  // namespace

LuFactor::LuFactor(const CsrMatrix& K) : K_(K) {
  const int n = K.n;
  double control[UMFPACK_CONTROL], info[UMFPACK_INFO];
  umfpack_di_defaults(control);
  control[UMFPACK_STRATEGY] = UMFPACK_STRATEGY_SYMMETRIC;
  control[UMFPACK_ORDERING] = UMFPACK_ORDERING_METIS;

  // The CSR arrays of K are the CSC arrays of K^T; solve with UMFPACK_At.
  const int* ap = K.row_ptr.data();
  const int* ai = K.col_idx.data();
  const double* ax = K.values.data();
  void* symbolic = nullptr;
  int status = umfpack_di_symbolic(n, n, ap, ai, ax, &symbolic, control, info);
  if (status != UMFPACK_OK) throw NumericalError("symbolic factorization failed (status " + std::to_string(status) + ")");
  status = umfpack_di_numeric(ap, ai, ax, symbolic, &numeric_, control, info);
  umfpack_di_free_symbolic(&symbolic);
  if (status == UMFPACK_WARNING_singular_matrix) {
    // The factors describe K^T; its zero column q[k] is row q[k] of K.
    const int pivot = zero_pivot_row(numeric_, n);
    umfpack_di_free_numeric(&numeric_);
    throw SingularMatrixError("singular pivot at row " + std::to_string(pivot), pivot);
  }
  if (status != UMFPACK_OK) {
    if (numeric_) umfpack_di_free_numeric(&numeric_);
    throw NumericalError("numeric factorization failed (status " + std::to_string(status) + ")");
  }
  rcond_ = info[UMFPACK_RCOND];
}

LuFactor::~LuFactor() {
  if (numeric_) umfpack_di_free_numeric(&numeric_);
}

Eigen::VectorXd LuFactor::solve(const Eigen::VectorXd& b) const {
  double control[UMFPACK_CONTROL], info[UMFPACK_INFO];
  umfpack_di_defaults(control);
  // Refinement is left to the caller.
  control[UMFPACK_IRSTEP] = 0;
  Eigen::VectorXd x(K_.n);
  const int s = umfpack_di_solve(UMFPACK_At, K_.row_ptr.data(), K_.col_idx.data(), K_.values.data(), x.data(),
                                 b.data(), numeric_, control, info);
  if (s != UMFPACK_OK) throw NumericalError("triangular solve failed (status " + std::to_string(s) + ")");
  return x;
}

Eigen::VectorXd factor_solve(const CsrMatrix& K, const Eigen::VectorXd& b, SolveStats* stats) {
  const int n = K.n;
  if (b.size() != n) throw InputError("right-hand side size mismatch");
  if (n == 0) return {};
  const LuFactor lu(K);

  Eigen::VectorXd x = lu.solve(b);
  const double bn = std::max(b.lpNorm<Eigen::Infinity>(), std::numeric_limits<double>::min());
  Eigen::VectorXd r = b - K.multiply(x);
  int steps = 0;
  do {
    x += lu.solve(r);
    r = b - K.multiply(x);
    ++steps;
  } while (steps < 3 && r.lpNorm<Eigen::Infinity>() > 1e-10 * bn);
  if (!x.allFinite()) throw SingularMatrixError("solution is not finite", -1);
  if (stats) {
    stats->residual = r.lpNorm<Eigen::Infinity>() / bn;
    stats->rcond = lu.rcond();
    stats->iterations = steps;
  }
  return x;
}

}  // namespace rmm
