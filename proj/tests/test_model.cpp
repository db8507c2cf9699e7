#include "rmm/model.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <tuple>

using namespace rmm;

namespace {

Mat3 random_sym(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Mat3 a;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) a(i, j) = u(rng);
  return sym(a);
}

Vec3 random_interior(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-0.95, 0.95);
  return {u(rng), u(rng), u(rng)};
}

// Beam set with meso moduli recomputed from macro and micro ones.
MaterialParams consistent_beam() {
  MaterialParams p = beam_params();
  std::tie(p.lambda_e, p.mu_e) = meso_from_micro_macro(p);
  return p;
}

}  // namespace

TEST_SUITE("model") {
  TEST_CASE("isotropic tensors on simple arguments") {
    MaterialParams p;
    p.mu_e = 1.0;
    p.lambda_e = 0.0;
    CHECK((apply_material_tensor(Tensor::Ce, p, Mat3::Identity()) - 2.0 * Mat3::Identity()).norm() < 1e-15);

    std::mt19937_64 rng(1);
    p.mu_c = 3.0;
    CHECK(apply_material_tensor(Tensor::Cc, p, random_sym(rng)).norm() < 1e-15);
    Mat3 w;
    w << 0, 1, -2, -1, 0, 3, 2, -3, 0;
    CHECK((apply_material_tensor(Tensor::Cc, p, w) - 6.0 * w).norm() < 1e-14);

    p.mu_e = 85.4;
    p.lambda_e = 128.2;
    CHECK((apply_material_tensor(Tensor::Ce, p, Mat3::Identity()) - 555.4 * Mat3::Identity()).norm() < 1e-12);
  }

  TEST_CASE("tensors are symmetric bilinear forms") {
    const MaterialParams p = beam_params();
    std::mt19937_64 rng(2);
    for (Tensor t : {Tensor::Ce, Tensor::Cmicro, Tensor::Cmacro}) {
      const Mat3 a = random_sym(rng), b = random_sym(rng);
      const double ab = (apply_material_tensor(t, p, a).array() * b.array()).sum();
      const double ba = (apply_material_tensor(t, p, b).array() * a.array()).sum();
      CHECK(ab == doctest::Approx(ba).epsilon(1e-13));
      CHECK((apply_material_tensor(t, p, a).array() * a.array()).sum() > 0.0);
    }
  }

  TEST_CASE("meso moduli of the beam set") {
    MaterialParams p;
    p.lambda_macro = 115.4;
    p.mu_macro = 76.9;
    p.lambda_micro = 1154.0;
    p.mu_micro = 769.0;
    const auto [lambda_e, mu_e] = meso_from_micro_macro(p);
    // Published to three significant digits.
    CHECK(std::round(mu_e * 10) / 10 == doctest::Approx(85.4));
    CHECK(std::round(lambda_e * 10) / 10 == doctest::Approx(128.2));

    p.mu_micro = 1e12;
    p.lambda_micro = 1e12;
    CHECK(std::abs(meso_from_micro_macro(p).second - p.mu_macro) < 1e-10 * p.mu_macro);
  }

  TEST_CASE("macro from meso and micro") {
    MaterialParams p;
    p.mu_e = p.mu_micro = 2.0;
    p.lambda_e = p.lambda_micro = 0.0;
    CHECK(macro_from_meso_micro(p).second == doctest::Approx(1.0));

    p.mu_e = 85.4;
    p.mu_micro = 769.0;
    p.lambda_e = 128.2;
    p.lambda_micro = 1154.0;
    const auto [lambda_m, mu_m] = macro_from_meso_micro(p);
    CHECK(mu_m == doctest::Approx(76.87).epsilon(1e-4));
    // 2 * 76.9 + 3 * 115.4 = 500
    CHECK(2 * mu_m + 3 * lambda_m == doctest::Approx(500.0).epsilon(1e-3));
  }

  TEST_CASE("meso and macro conversions invert each other") {
    MaterialParams p;
    p.lambda_macro = 115.4;
    p.mu_macro = 76.9;
    p.lambda_micro = 1154.0;
    p.mu_micro = 769.0;
    std::tie(p.lambda_e, p.mu_e) = meso_from_micro_macro(p);
    const auto [lm, mm] = macro_from_meso_micro(p);
    CHECK(std::abs(lm - p.lambda_macro) < 1e-12 * p.lambda_macro);
    CHECK(std::abs(mm - p.mu_macro) < 1e-12 * p.mu_macro);
  }

  TEST_CASE("homogenization identity on random symmetric matrices") {
    const MaterialParams p = consistent_beam();
    std::mt19937_64 rng(10);
    for (int k = 0; k < 10; ++k) {
      const Mat3 s = random_sym(rng);
      const Mat3 direct = apply_material_tensor(Tensor::Cmacro, p, s);
      CHECK((homogenized_macro(p, s) - direct).norm() < 1e-9 * direct.norm());
    }
  }

  TEST_CASE("validation") {
    CHECK_NOTHROW(validate(beam_params()));
    MaterialParams p;
    p.mu_e = 0.0;
    CHECK_THROWS_AS(validate(p), InputError);
    p = {};
    p.lambda_micro = -1.0;  // 2 mu + 3 lambda = -1
    CHECK_THROWS_AS(validate(p), InputError);
    p = {};
    p.mu_c = -1.0;
    CHECK_THROWS_AS(validate(p), InputError);
    p = {};
    p.L_c = -2.0;
    CHECK_THROWS_AS(validate(p), InputError);
    p = {};
    p.L_c = kInf;
    CHECK_NOTHROW(validate(p));
  }

  TEST_CASE("manufactured data at named points") {
    const CaseValues c1 = evaluate_case(CaseName::conv_muc1, case_params(CaseName::conv_muc1, 1.0), Vec3::Zero());
    CHECK((c1.f - Vec3(2, -1, 7)).norm() < 1e-13);
    CHECK((c1.u - Vec3(0, 0, 1)).norm() < 1e-15);
    const CaseValues c0 = evaluate_case(CaseName::conv_muc0, case_params(CaseName::conv_muc0, 1.0), Vec3::Zero());
    CHECK((c0.f - Vec3(0, 0, 4)).norm() < 1e-13);

    for (double y : {-0.3, 0.5})
      for (double lc : {0.1, 1.0}) {
        const CaseValues r = evaluate_case(CaseName::robustness, case_params(CaseName::robustness, lc), Vec3(1, y, 0.2));
        CHECK((r.P.row(0) - Eigen::RowVector3d(y * y - 1, 0, 0)).norm() < 1e-15);
      }
    CHECK(evaluate_case(CaseName::none, MaterialParams{}, Vec3(0.1, 0.2, 0.3)).u.norm() == 0.0);
    CHECK_THROWS_AS(evaluate_case(CaseName::conv_muc1, case_params(CaseName::conv_muc1, kInf), Vec3::Zero()),
                    InputError);
  }

  TEST_CASE("strong-form residuals of the manufactured data vanish") {
    std::mt19937_64 rng(4);
    for (int k = 0; k < 20; ++k) {
      const Vec3 x = random_interior(rng);
      const StrongResidual r1 = strong_form_residual_oracle(CaseName::conv_muc1, case_params(CaseName::conv_muc1, 1.0), x);
      CHECK(r1.force < 1e-7);
      CHECK(r1.moment < 1e-7);
      const StrongResidual r2 =
          strong_form_residual_oracle(CaseName::robustness, case_params(CaseName::robustness, 10.0), x);
      CHECK(r2.force < 1e-6);
      CHECK(r2.moment < 1e-6);
    }
    const StrongResidual z = strong_form_residual_oracle(CaseName::none, MaterialParams{}, Vec3(0.1, 0.2, 0.3));
    CHECK(z.force == 0.0);
    CHECK(z.moment == 0.0);
  }

  TEST_CASE("limit fields: D is the scaled curl and the robustness case tends to them") {
    const MaterialParams p = case_params(CaseName::limit_inf, kInf);
    const Vec3 x(0.2, -0.4, 0.6);
    const CaseValues lim = evaluate_case(CaseName::limit_inf, p, x);
    const CaseValues far = evaluate_case(CaseName::robustness, case_params(CaseName::robustness, 1e6), x);
    CHECK((far.P - lim.P).norm() < 1e-10);
    CHECK((far.u - lim.u).norm() == 0.0);
  }

  TEST_CASE("parameter files and L_c strings") {
    CHECK(std::isinf(parse_lc("inf")));
    CHECK(parse_lc("1e-3") == 1e-3);
    CHECK_THROWS_AS(parse_lc("-1"), InputError);
    CHECK_THROWS_AS(parse_lc("abc"), InputError);
    CHECK(format_lc(kInf) == "inf");
    CHECK(format_lc(0.001) == "0.001");

    const std::string path = "test_model_params.txt";
    {
      std::ofstream f(path);
      f << "# beam set\nmu_e = 85.4\nlambda_e=128.2  # meso\n\nL_c = inf\n";
    }
    const MaterialParams p = read_params_file(path);
    CHECK(p.mu_e == 85.4);
    CHECK(p.lambda_e == 128.2);
    CHECK(p.lc_infinite());
    CHECK(p.mu_micro == 1.0);
    {
      std::ofstream f(path);
      f << "nu = 0.3\n";
    }
    CHECK_THROWS_AS(read_params_file(path), InputError);
    {
      std::ofstream f(path);
      f << "mu_e 3\n";
    }
    CHECK_THROWS_AS(read_params_file(path), InputError);
    std::remove(path.c_str());
    CHECK_THROWS_AS(read_params_file("/nonexistent/params.txt"), IoError);
  }
}
