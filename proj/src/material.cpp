#include "rmm/model.hpp"

#include <array>
#include <cmath>

namespace rmm {

void validate(const MaterialParams& p) {
  auto definite = [](double lambda, double mu, const char* name) {
    if (!(mu > 0.0) || !(2.0 * mu + 3.0 * lambda > 0.0))
      throw InputError(std::string("material pair '") + name + "' is not positive definite");
  };
  definite(p.lambda_e, p.mu_e, "e");
  definite(p.lambda_micro, p.mu_micro, "micro");
  if (!(p.mu_macro > 0.0)) throw InputError("mu_macro must be positive");
  if (!(p.mu_c >= 0.0)) throw InputError("mu_c must be non-negative");
  if (!(p.L_c >= 0.0)) throw InputError("L_c must be non-negative");
}

Mat3 apply_material_tensor(Tensor which, const MaterialParams& p, const Mat3& t) {
  auto iso = [&](double lambda, double mu) -> Mat3 {
    return 2.0 * mu * sym(t) + lambda * t.trace() * Mat3::Identity();
  };
  switch (which) {
    case Tensor::Ce: return iso(p.lambda_e, p.mu_e);
    case Tensor::Cmicro: return iso(p.lambda_micro, p.mu_micro);
    case Tensor::Cmacro: return iso(p.lambda_macro, p.mu_macro);
    case Tensor::Cc: return 2.0 * p.mu_c * skw(t);
  }
  return Mat3::Zero();
}

std::pair<double, double> meso_from_micro_macro(const MaterialParams& p) {
  const double bulk_mi = 2.0 * p.mu_micro + 3.0 * p.lambda_micro;
  const double bulk_ma = 2.0 * p.mu_macro + 3.0 * p.lambda_macro;
  if (!(p.mu_micro - p.mu_macro > 0.0) || !(bulk_mi - bulk_ma > 0.0))
    throw InputError("micro not stiffer than macro");
  const double mu_e = p.mu_micro * p.mu_macro / (p.mu_micro - p.mu_macro);
  const double bulk_e = bulk_mi * bulk_ma / (bulk_mi - bulk_ma);
  return {(bulk_e - 2.0 * mu_e) / 3.0, mu_e};
}

std::pair<double, double> macro_from_meso_micro(const MaterialParams& p) {
  const double bulk_e = 2.0 * p.mu_e + 3.0 * p.lambda_e;
  const double bulk_mi = 2.0 * p.mu_micro + 3.0 * p.lambda_micro;
  if (!(p.mu_e > 0.0) || !(p.mu_micro > 0.0) || !(bulk_e > 0.0) || !(bulk_mi > 0.0))
    throw InputError("meso and micro moduli must be positive");
  const double mu = p.mu_e * p.mu_micro / (p.mu_e + p.mu_micro);
  const double bulk = bulk_e * bulk_mi / (bulk_e + bulk_mi);
  return {(bulk - 2.0 * mu) / 3.0, mu};
}

Mat3 homogenized_macro(const MaterialParams& p, const Mat3& t) {
  // Orthonormal basis of Sym(3); tensors become 6x6 matrices on it.
  std::array<Mat3, 6> basis;
  const double s = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < 3; ++i) {
    basis[i].setZero();
    basis[i](i, i) = 1.0;
  }
  const int pairs[3][2] = {{1, 2}, {0, 2}, {0, 1}};
  for (int k = 0; k < 3; ++k) {
    basis[3 + k].setZero();
    basis[3 + k](pairs[k][0], pairs[k][1]) = basis[3 + k](pairs[k][1], pairs[k][0]) = s;
  }
  auto matrix = [&](Tensor which) {
    Eigen::Matrix<double, 6, 6> m;
    for (int j = 0; j < 6; ++j) {
      const Mat3 img = apply_material_tensor(which, p, basis[j]);
      for (int i = 0; i < 6; ++i) m(i, j) = (basis[i].array() * img.array()).sum();
    }
    return m;
  };
  const Eigen::Matrix<double, 6, 6> ce = matrix(Tensor::Ce), cm = matrix(Tensor::Cmicro);
  const Eigen::Matrix<double, 6, 6> macro = cm * (ce + cm).partialPivLu().solve(ce);
  Eigen::Matrix<double, 6, 1> v;
  const Mat3 ts = sym(t);
  for (int i = 0; i < 6; ++i) v[i] = (basis[i].array() * ts.array()).sum();
  const Eigen::Matrix<double, 6, 1> w = macro * v;
  Mat3 out = Mat3::Zero();
  for (int i = 0; i < 6; ++i) out += w[i] * basis[i];
  return out;
}

MaterialParams beam_params() {
  MaterialParams p;
  p.lambda_macro = 115.4;
  p.mu_macro = 76.9;
  p.lambda_micro = 1154.0;
  p.mu_micro = 769.0;
  p.lambda_e = 128.2;
  p.mu_e = 85.4;
  p.mu_c = p.mu_e;
  return p;
}

}  // namespace rmm
