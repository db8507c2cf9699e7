#pragma once

#include "rmm/types.hpp"

#include <limits>
#include <string>
#include <utility>

namespace rmm {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct MaterialParams {
  double lambda_e = 1.0, mu_e = 1.0, mu_c = 1.0;
  double lambda_micro = 1.0, mu_micro = 1.0;
  double lambda_macro = 1.0, mu_macro = 1.0;
  double L_c = 1.0;  // may be kInf (mixed formulation only)

  bool lc_infinite() const { return L_c == kInf; }
};

// Throws InputError on non-positive shear moduli, indefinite pairs or
// negative mu_c / L_c.
void validate(const MaterialParams& p);

enum class Tensor { Ce, Cmicro, Cc, Cmacro };

Mat3 apply_material_tensor(Tensor which, const MaterialParams& p, const Mat3& t);

inline Mat3 sym(const Mat3& a) { return 0.5 * (a + a.transpose()); }
inline Mat3 skw(const Mat3& a) { return 0.5 * (a - a.transpose()); }

// Meso moduli implied by micro and macro ones (lambda_e, mu_e).
std::pair<double, double> meso_from_micro_macro(const MaterialParams& p);
// Macro moduli implied by meso and micro ones (lambda_macro, mu_macro).
std::pair<double, double> macro_from_meso_micro(const MaterialParams& p);

// Macro tensor evaluated through the homogenization formula
// Cmicro (Ce + Cmicro)^-1 Ce, using the meso and micro moduli of p.
Mat3 homogenized_macro(const MaterialParams& p, const Mat3& t);

// Parameter set of the beam and bounded-stiffness examples.
MaterialParams beam_params();

// --------------------------------------------------------- manufactured data

enum class CaseName { conv_muc1, conv_muc0, robustness, limit_inf, none };

std::string to_string(CaseName c);
CaseName parse_case(const std::string& s);

struct CaseValues {
  Vec3 u = Vec3::Zero();
  Mat3 P = Mat3::Zero();
  Mat3 D = Mat3::Zero();  // limit_inf only
  Vec3 f = Vec3::Zero();
  Mat3 M = Mat3::Zero();
};

// Material set each closed form was derived for (all moduli 1, with mu_c = 1
// for conv_muc1 and 0 otherwise).
MaterialParams case_params(CaseName c, double L_c);

// Closed-form fields on [-1,1]^3. Only params.L_c is read: the forces are
// valid for case_params(c, L_c).
CaseValues evaluate_case(CaseName c, const MaterialParams& params, const Vec3& x);

struct StrongResidual {
  double force = 0.0;   // |-Div(Ce sym E + Cc skw E) - f|, E = Du - P
  double moment = 0.0;  // |-(Ce sym E + Cc skw E) + Cmicro sym P + mu_macro L_c^2 Curl Curl P - M|,
                        // with Curl D in place of the curl-curl term for limit_inf
};

// Strong-form residual with fourth-order central differences (step h)
// applied to the exact fields.
StrongResidual strong_form_residual_oracle(CaseName c, const MaterialParams& params, const Vec3& x,
                                           double h = 1e-3);

// ------------------------------------------------------------ params file

// key=value lines; '#' starts a comment. Keys are the MaterialParams field
// names; L_c accepts "inf". Unknown keys are an InputError.
MaterialParams read_params_file(const std::string& path, MaterialParams base = {});
void apply_param(MaterialParams& p, const std::string& key, const std::string& value);
double parse_lc(const std::string& s);
std::string format_lc(double lc);

}  // namespace rmm
