#include "rmm/solver.hpp"

#include <cholmod.h>

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/Sparse>

#include <cmath>
#include <limits>

namespace rmm {

namespace {

using RowSparse = Eigen::SparseMatrix<double, Eigen::RowMajor>;

RowSparse block(const CsrMatrix& K, int r0, int c0, int rows, int cols) {
  std::vector<Eigen::Triplet<double>> trip;
  for (int i = r0; i < r0 + rows; ++i)
    for (int k = K.row_ptr[i]; k < K.row_ptr[i + 1]; ++k) {
      const int j = K.col_idx[k];
      if (j >= c0 && j < c0 + cols && K.values[k] != 0.0) trip.emplace_back(i - r0, j - c0, K.values[k]);
    }
  RowSparse m(rows, cols);
  m.setFromTriplets(trip.begin(), trip.end());
  return m;
}

CsrMatrix to_csr(const RowSparse& a) {
  CsrMatrix m;
  m.n = static_cast<int>(a.rows());
  m.row_ptr.assign(a.outerIndexPtr(), a.outerIndexPtr() + a.rows() + 1);
  m.col_idx.assign(a.innerIndexPtr(), a.innerIndexPtr() + a.nonZeros());
  m.values.assign(a.valuePtr(), a.valuePtr() + a.nonZeros());
  return m;
}

}  // namespace

struct CholeskyFactor::Impl {
  int n = 0;
  mutable cholmod_common common;
  cholmod_factor* factor = nullptr;
};

CholeskyFactor::CholeskyFactor(const CsrMatrix& K) : impl_(std::make_unique<Impl>()) {
  Impl& m = *impl_;
  m.n = K.n;
  cholmod_start(&m.common);
  // Simplicial LDL^T would accept negative pivots; LL^T rejects them.
  m.common.supernodal = CHOLMOD_SUPERNODAL;
  // CSR of a symmetric matrix is its own CSC; stype = 1 reads the upper
  // triangle.
  cholmod_sparse s{};
  s.nrow = s.ncol = K.n;
  s.nzmax = K.values.size();
  s.p = const_cast<int*>(K.row_ptr.data());
  s.i = const_cast<int*>(K.col_idx.data());
  s.x = const_cast<double*>(K.values.data());
  s.stype = 1;
  s.itype = CHOLMOD_INT;
  s.xtype = CHOLMOD_REAL;
  s.dtype = CHOLMOD_DOUBLE;
  s.sorted = 1;
  s.packed = 1;
  m.factor = cholmod_analyze(&s, &m.common);
  const bool ok = m.factor && cholmod_factorize(&s, m.factor, &m.common) && m.common.status == CHOLMOD_OK &&
                  m.factor->minor == m.factor->n;
  if (!ok) {
    if (m.factor) cholmod_free_factor(&m.factor, &m.common);
    cholmod_finish(&m.common);
    throw NumericalError("matrix is not positive definite");
  }
}

CholeskyFactor::~CholeskyFactor() {
  cholmod_free_factor(&impl_->factor, &impl_->common);
  cholmod_finish(&impl_->common);
}

Eigen::VectorXd CholeskyFactor::solve(const Eigen::VectorXd& b) const {
  Impl& m = *impl_;
  cholmod_dense* rhs = cholmod_zeros(m.n, 1, CHOLMOD_REAL, &m.common);
  Eigen::Map<Eigen::VectorXd>(static_cast<double*>(rhs->x), m.n) = b;
  cholmod_dense* x = cholmod_solve(CHOLMOD_A, m.factor, rhs, &m.common);
  Eigen::VectorXd out = Eigen::Map<Eigen::VectorXd>(static_cast<double*>(x->x), m.n);
  cholmod_free_dense(&x, &m.common);
  cholmod_free_dense(&rhs, &m.common);
  return out;
}

Eigen::VectorXd block_pcg_solve(const CsrMatrix& K, const Eigen::VectorXd& b, int n_first, const CsrMatrix& S,
                                double tol, SolveStats* stats) {
  const int n = K.n, n2 = K.n - n_first;
  if (b.size() != n || S.n < n_first || n_first <= 0 || n2 <= 0) throw InputError("block solve: size mismatch");

  const RowSparse Kb = block(K, 0, 0, n, n);
  const RowSparse B = block(K, 0, n_first, n_first, n2);
  const CsrMatrix s_block = to_csr(block(S, 0, 0, n_first, n_first));
  const CholeskyFactor schur(s_block);
  Eigen::IncompleteCholesky<double, Eigen::Lower, Eigen::AMDOrdering<int>> ic;
  ic.compute(Eigen::SparseMatrix<double>(block(K, n_first, n_first, n2, n2)));
  if (ic.info() != Eigen::Success) throw NumericalError("incomplete Cholesky of the second block failed");

  // Symmetric block factorization with approximate inverses of C and S.
  auto precondition = [&](const Eigen::VectorXd& r) {
    const Eigen::VectorXd y = ic.solve(r.tail(n2));
    Eigen::VectorXd z(n);
    z.head(n_first) = schur.solve(r.head(n_first) - B * y);
    z.tail(n2) = ic.solve(r.tail(n2) - B.transpose() * z.head(n_first));
    return z;
  };

  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd r = b;
  const double bnorm = b.norm();
  if (bnorm == 0.0) return x;
  Eigen::VectorXd z = precondition(r), p = z;
  double rz = r.dot(z);
  int it = 0;
  const int max_iter = 5000;
  for (; it < max_iter && r.norm() > tol * bnorm; ++it) {
    const Eigen::VectorXd Ap = Kb * p;
    const double pap = p.dot(Ap);
    if (!(pap > 0.0)) throw NumericalError("block CG: matrix is not positive definite");
    const double alpha = rz / pap;
    x += alpha * p;
    r -= alpha * Ap;
    z = precondition(r);
    const double rz_new = r.dot(z);
    p = z + (rz_new / rz) * p;
    rz = rz_new;
  }
  if (it == max_iter) throw NumericalError("block CG did not converge");
  if (stats) {
    const double bi = std::max(b.lpNorm<Eigen::Infinity>(), std::numeric_limits<double>::min());
    stats->residual = (b - Kb * x).lpNorm<Eigen::Infinity>() / bi;
    stats->iterations = it;
  }
  return x;
}

}  // namespace rmm
