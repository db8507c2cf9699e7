#include "rmm/fespace.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <map>
#include <mutex>

namespace rmm {

namespace {

// Golub-Welsch for the Jacobi weight (1-x)^alpha on [-1,1] (beta = 0), mapped
// to [0,1] with weight (1-t)^alpha.
LineRule gauss_jacobi01(int n, double alpha) {
  const double beta = 0.0;
  Eigen::MatrixXd T = Eigen::MatrixXd::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    const double s = 2.0 * k + alpha + beta;
    T(k, k) = (k == 0) ? (beta - alpha) / (alpha + beta + 2.0)
                       : (beta * beta - alpha * alpha) / (s * (s + 2.0));
    if (k + 1 < n) {
      const double kk = k + 1.0;
      const double s1 = 2.0 * kk + alpha + beta;
      const double num = 4.0 * kk * (kk + alpha) * (kk + beta) * (kk + alpha + beta);
      const double den = s1 * s1 * (s1 + 1.0) * (s1 - 1.0);
      T(k, k + 1) = T(k + 1, k) = std::sqrt(num / den);
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
  // mu0 = int_{-1}^{1} (1-x)^alpha dx = 2^(alpha+1)/(alpha+1); the map to
  // [0,1] contributes 2^-(alpha+1), leaving 1/(alpha+1).
  const double mu0 = 1.0 / (alpha + 1.0);
  LineRule r;
  for (int k = 0; k < n; ++k) {
    const double x = es.eigenvalues()[k];
    const double v0 = es.eigenvectors()(0, k);
    r.points.push_back(0.5 * (x + 1.0));
    r.weights.push_back(mu0 * v0 * v0);
  }
  return r;
}

std::mutex cache_mutex;

}  // namespace

const LineRule& gauss_line(int npoints) {
  static std::map<int, LineRule> cache;
  std::lock_guard<std::mutex> lock(cache_mutex);
  auto it = cache.find(npoints);
  if (it == cache.end()) it = cache.emplace(npoints, gauss_jacobi01(npoints, 0.0)).first;
  return it->second;
}

const TriangleRule& triangle_rule(int degree) {
  static std::map<int, TriangleRule> cache;
  std::lock_guard<std::mutex> lock(cache_mutex);
  auto it = cache.find(degree);
  if (it != cache.end()) return it->second;
  const int m = (degree + 2) / 2;
  const LineRule a = gauss_jacobi01(m, 1.0);
  const LineRule b = gauss_jacobi01(m, 0.0);
  TriangleRule r;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      const double t = a.points[i];
      const double s = (1.0 - t) * b.points[j];
      r.points.push_back({s, t});
      r.weights.push_back(a.weights[i] * b.weights[j]);
    }
  return cache.emplace(degree, std::move(r)).first->second;
}

const QuadratureRule& quadrature(int degree) {
  if (degree < 1 || degree > 20) throw InputError("unsupported quadrature degree " + std::to_string(degree));
  static std::map<int, QuadratureRule> cache;
  std::lock_guard<std::mutex> lock(cache_mutex);
  auto it = cache.find(degree);
  if (it != cache.end()) return it->second;

  // zeta = t1, eta = (1-t1) t2, xi = (1-t1)(1-t2) t3 with Jacobian
  // (1-t1)^2 (1-t2) absorbed into the Jacobi weights.
  const int m = (degree + 2) / 2;
  const LineRule r1 = gauss_jacobi01(m, 2.0);
  const LineRule r2 = gauss_jacobi01(m, 1.0);
  const LineRule r3 = gauss_jacobi01(m, 0.0);
  QuadratureRule q;
  q.degree = degree;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k) {
        const double t1 = r1.points[i], t2 = r2.points[j], t3 = r3.points[k];
        const double zeta = t1;
        const double eta = (1.0 - t1) * t2;
        const double xi = (1.0 - t1) * (1.0 - t2) * t3;
        q.points.emplace_back(xi, eta, zeta);
        q.weights.push_back(r1.weights[i] * r2.weights[j] * r3.weights[k]);
      }
  return cache.emplace(degree, std::move(q)).first->second;
}

}  // namespace rmm
