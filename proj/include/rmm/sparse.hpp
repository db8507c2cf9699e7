#pragma once

#include <Eigen/Dense>

#include <vector>

namespace rmm {

// Compressed sparse row storage with sorted, unique column indices.
struct CsrMatrix {
  int n = 0;
  std::vector<int> row_ptr{0};
  std::vector<int> col_idx;
  std::vector<double> values;

  int nnz() const { return static_cast<int>(col_idx.size()); }
  // Index into values of (i, j), or -1 when not stored.
  int find(int i, int j) const;
  double at(int i, int j) const;
  Eigen::VectorXd multiply(const Eigen::VectorXd& x) const;
  double max_abs() const;
  // max |K_ij - K_ji| over stored entries (missing mirror counts as 0).
  double asymmetry() const;
  Eigen::MatrixXd to_dense() const;

  static CsrMatrix from_dense(const Eigen::MatrixXd& a, double drop = 0.0);
  static CsrMatrix identity(int n);
};

}  // namespace rmm
