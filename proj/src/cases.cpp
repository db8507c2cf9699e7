#include "rmm/model.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace rmm {

std::string to_string(CaseName c) {
  switch (c) {
    case CaseName::conv_muc1: return "conv_muc1";
    case CaseName::conv_muc0: return "conv_muc0";
    case CaseName::robustness: return "robustness";
    case CaseName::limit_inf: return "limit_inf";
    case CaseName::none: return "none";
  }
  return "none";
}

CaseName parse_case(const std::string& s) {
  for (CaseName c : {CaseName::conv_muc1, CaseName::conv_muc0, CaseName::robustness, CaseName::limit_inf,
                     CaseName::none})
    if (to_string(c) == s) return c;
  throw InputError("unknown case '" + s + "'");
}

MaterialParams case_params(CaseName c, double L_c) {
  MaterialParams p;
  p.mu_c = c == CaseName::conv_muc1 ? 1.0 : 0.0;
  p.L_c = L_c;
  return p;
}

namespace {

template <class T>
using V3 = Eigen::Matrix<T, 3, 1>;
template <class T>
using M3 = Eigen::Matrix<T, 3, 3>;

// Displacement and microdistortion, templated so the difference oracle can
// run in extended precision.
template <class T>
void exact_fields(CaseName c, T lc, const V3<T>& p, V3<T>& u, M3<T>& P) {
  const T x = p[0], y = p[1], z = p[2];
  u.setZero();
  P.setZero();
  switch (c) {
    case CaseName::conv_muc1:
    case CaseName::conv_muc0: {
      u[2] = (1 - x) * (1 - x) * (1 + x) * (1 + x);
      const T s = (1 - x) * (1 + x);
      for (int r = 0; r < 3; ++r) {
        P(r, 0) = s * (-y - z);
        P(r, 1) = s * x;
        P(r, 2) = s * x;
      }
      return;
    }
    case CaseName::robustness:
    case CaseName::limit_inf: {
      u[2] = (1 - x) * (1 - x) * (1 + x);
      P << x * (y * y - 1), y * (x * x - 1), 0,  //
          0, y * (z * z - 1), z * (y * y - 1),    //
          x * (z * z - 1), 0, z * (x * x - 1);
      if (c == CaseName::robustness && !std::isinf(static_cast<double>(lc))) {
        M3<T> w;
        w << -y, x, 0, 0, -z, y, z, 0, -x;
        P += (10 / (lc * lc)) * (1 - x) * (1 - y) * (1 - z) * w;
      }
      return;
    }
    case CaseName::none: return;
  }
}

}  // namespace

CaseValues evaluate_case(CaseName c, const MaterialParams& params, const Vec3& pos) {
  CaseValues v;
  if (c == CaseName::none) return v;
  const double L = params.L_c;
  if (c == CaseName::robustness && !(L > 0.0)) throw InputError("robustness case needs L_c > 0");
  if ((c == CaseName::conv_muc1 || c == CaseName::conv_muc0) && std::isinf(L))
    throw InputError("convergence cases need finite L_c");
  exact_fields<double>(c, L, pos, v.u, v.P);

  const double x = pos[0], y = pos[1], z = pos[2];
  const double x2 = x * x, y2 = y * y, z2 = z * z;
  const double q = (x - 1) * (x + 1);
  switch (c) {
    case CaseName::conv_muc1: {
      v.f = {-6 * x2 + 6 * x * y + 6 * x * z + 2, x2 + 4 * x * y + 4 * x * z - 1,
             -23 * x2 + 4 * x * y + 4 * x * z + 7};
      v.M << q * (-4 * x + 6 * y + 6 * z), q * (-3 * x + y + z), q * (-3 * x + y + z),  //
          q * (-x + 3 * y + 3 * z), q * (-8 * x + 2 * y + 2 * z), 4 * x * (1 - x2),      //
          -9 * x2 * x + 3 * x2 * y + 3 * x2 * z + 9 * x - 3 * y - 3 * z, 4 * x * (1 - x2),
          q * (-8 * x + 2 * y + 2 * z);
      break;
    }
    case CaseName::conv_muc0: {
      const double c13 = -6 * x2 * x + 2 * x2 * y + 2 * x2 * z + 6 * x - 2 * y - 2 * z;
      v.f = {x * (-4 * x + 6 * y + 6 * z), 2 * x * (-x + y + z), -14 * x2 + 2 * x * y + 2 * x * z + 4};
      v.M << q * (-4 * x + 6 * y + 6 * z), 2 * q * (-x + y + z), c13,  //
          2 * q * (-x + y + z), q * (-8 * x + 2 * y + 2 * z), 4 * x * (1 - x2),  //
          c13, 4 * x * (1 - x2), q * (-8 * x + 2 * y + 2 * z);
      break;
    }
    case CaseName::robustness:
    case CaseName::limit_inf: {
      // The tabulated polynomials were derived for u_3 = (1-x)^2 (1+x)^2; the
      // added x-only terms switch f_3 and M_13 = M_31 to u_3 = (1-x)^2 (1+x).
      v.f = {x2 + 4 * x * z + 3 * y2 - 4, 4 * x * y + y2 + 3 * z2 - 4, -9 * x2 + 4 * y * z + z2};
      v.f[2] += 12 * x2 - 6 * x - 2;
      v.M << x2 * z + 3 * x * y2 + y * z2, x2 * y, -2 * x2 * x + x * z2,  //
          x2 * y, x2 * z + x * y2 + 3 * y * z2, y2 * z,                   //
          -2 * x2 * x + x * z2, y2 * z, 3 * x2 * z + x * y2 + y * z2;
      Mat3 m2;
      m2 << -20 * x * z + 17 * x - y + 14 * z - 15, 20 * y * z - 21 * y - 15 * z + 15,
          -5 * x2 + 6 * x + 5 * y2 - 5 * y,  //
          -5 * y2 + 4 * y + 5 * z2 - 5 * z, -20 * x * y + 14 * x + 17 * y - z - 15,
          20 * x * z - 15 * x - 21 * z + 15,  //
          20 * x * y - 19 * x - 15 * y + 15, 5 * x2 - 5 * x - 5 * z2 + 4 * z, -x - 20 * y * z + 14 * y + 17 * z - 15;
      v.M = 2.0 * (v.M + m2);
      const double du = 4 * x2 * x - 3 * x2 - 2 * x + 1;
      v.M(0, 2) += du;
      v.M(2, 0) += du;
      if (c == CaseName::limit_inf) {
        v.D << x * (1 - x) * (1 - y), y * (1 - x) * (1 - y), -(z - 1) * (4 * x * y - 3 * x - 3 * y + 2),  //
            -(x - 1) * (4 * y * z - 3 * y - 3 * z + 2), y * (1 - y) * (1 - z), z * (1 - y) * (1 - z),   //
            x * (1 - x) * (1 - z), -(y - 1) * (4 * x * z - 3 * x - 3 * z + 2), z * (1 - x) * (1 - z);
        v.D *= 10.0;
      } else if (!std::isinf(L)) {
        const double il2 = 1.0 / (L * L);
        v.f += il2 * Vec3(-10 * x2 * z + 10 * x2 - 10 * x * y + 10 * x * z + 30 * y2 * z - 30 * y2 +
                              10 * y * z2 - 30 * y * z + 30 * y - 10 * z2,
                          10 * x2 * z - 10 * x2 - 10 * x * y2 + 10 * x * y + 30 * x * z2 - 30 * x * z +
                              10 * y2 - 10 * y * z - 30 * z2 + 30 * z,
                          30 * x2 * y - 30 * x2 + 10 * x * y2 - 30 * x * y - 10 * x * z + 30 * x - 10 * y2 -
                              10 * y * z2 + 10 * y * z + 10 * z2);
        Mat3 m3;
        m3 << 20 * (x + 3 * y + z), -20 * x, -20 * z,  //
            -20 * x, 20 * (x + y + 3 * z), -20 * y,    //
            -20 * z, -20 * y, 20 * (3 * x + y + z);
        v.M += il2 * (x - 1) * (y - 1) * (z - 1) * m3;
      }
      return v;
    }
    case CaseName::none: break;
  }
  // Curl-curl contribution of the convergence cases.
  const double l2 = L * L;
  for (int r = 0; r < 3; ++r) {
    v.M(r, 1) += l2 * 8 * x;
    v.M(r, 2) += l2 * 8 * x;
  }
  return v;
}

namespace {

using LD = long double;

template <class F>
auto central_diff(const F& g, const V3<LD>& x, int axis, LD h) {
  V3<LD> e = V3<LD>::Zero();
  e[axis] = h;
  return (-g(x + 2 * e) + 8 * g(x + e) - 8 * g(x - e) + g(x - 2 * e)) / (12 * h);
}

M3<LD> curl_rows(const std::function<M3<LD>(const V3<LD>&)>& P, const V3<LD>& x, LD h) {
  M3<LD> d[3];
  for (int a = 0; a < 3; ++a) d[a] = central_diff(P, x, a, h);  // d[a](r,s) = dP_rs/dx_a
  M3<LD> c;
  for (int r = 0; r < 3; ++r) {
    c(r, 0) = d[1](r, 2) - d[2](r, 1);
    c(r, 1) = d[2](r, 0) - d[0](r, 2);
    c(r, 2) = d[0](r, 1) - d[1](r, 0);
  }
  return c;
}

}  // namespace

StrongResidual strong_form_residual_oracle(CaseName c, const MaterialParams& params, const Vec3& xd, double hd) {
  StrongResidual res;
  if (c == CaseName::none) return res;
  const LD h = hd;
  const LD lc = params.L_c;
  const V3<LD> x = xd.cast<LD>();

  auto u_of = [&](const V3<LD>& p) {
    V3<LD> u;
    M3<LD> P;
    exact_fields<LD>(c, lc, p, u, P);
    return u;
  };
  std::function<M3<LD>(const V3<LD>&)> P_of = [&](const V3<LD>& p) {
    V3<LD> u;
    M3<LD> P;
    exact_fields<LD>(c, lc, p, u, P);
    return P;
  };
  auto grad_u = [&](const V3<LD>& p) {
    M3<LD> g;
    for (int a = 0; a < 3; ++a) g.col(a) = central_diff(u_of, p, a, h);
    return g;
  };
  auto iso = [](const M3<LD>& t, LD lambda, LD mu) -> M3<LD> {
    return mu * (t + t.transpose()) + lambda * t.trace() * M3<LD>::Identity();
  };
  const LD le = params.lambda_e, me = params.mu_e, mc = params.mu_c;
  auto stress = [&](const V3<LD>& p) -> M3<LD> {
    const M3<LD> e = grad_u(p) - P_of(p);
    return iso(e, le, me) + mc * (e - e.transpose());
  };

  V3<LD> div = V3<LD>::Zero();
  for (int a = 0; a < 3; ++a) div += central_diff(stress, x, a, h).col(a);

  const CaseValues exact = evaluate_case(c, params, xd);
  const V3<LD> f = exact.f.cast<LD>();
  const V3<LD> force = -div - f;

  const M3<LD> s = stress(x);
  const M3<LD> P = P_of(x);
  const M3<LD> micro = iso(P, params.lambda_micro, params.mu_micro);
  std::function<M3<LD>(const V3<LD>&)> curlP = [&](const V3<LD>& p) { return curl_rows(P_of, p, h); };
  // The limit case carries the hyperstress D as its own field: Curl D replaces
  // mu_macro L_c^2 Curl Curl P, whose factor is undefined there.
  std::function<M3<LD>(const V3<LD>&)> D_of = [&](const V3<LD>& p) {
    return M3<LD>(evaluate_case(c, params, p.cast<double>()).D.cast<LD>());
  };
  const M3<LD> curlcurl = c == CaseName::limit_inf ? curl_rows(D_of, x, h)
                                                   : M3<LD>(lc * lc * LD(params.mu_macro) * curl_rows(curlP, x, h));
  const M3<LD> M = exact.M.cast<LD>();
  const M3<LD> moment = -s + micro + curlcurl - M;

  // Report residuals relative to the largest term of each equation (at
  // least 1) so large L_c does not hide cancellation noise.
  const LD fscale = std::max<LD>({LD(1), div.norm(), f.norm()});
  const LD mscale = std::max<LD>({LD(1), s.norm(), micro.norm(), curlcurl.norm(), M.norm()});
  res.force = static_cast<double>(force.norm() / fscale);
  res.moment = static_cast<double>(moment.norm() / mscale);
  return res;
}

}  // namespace rmm
