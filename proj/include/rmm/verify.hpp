#pragma once

#include "rmm/fespace.hpp"
#include "rmm/model.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace rmm {

struct CheckResult {
  std::string name;
  double error = 0.0;  // worst observed deviation
  double tolerance = 0.0;
  bool passed = false;
  std::string detail;
};

using NedelecEvaluator = std::function<VectorBasis(NedelecKind, const Vec3&)>;

struct VerifyOptions {
  std::uint64_t seed = 1;
  int mesh_n = 2;
  // Basis used by the basis-level checks; tests swap in a faulty one to make
  // sure the suite notices.
  NedelecEvaluator nedelec = eval_nedelec;
};

// Reference element and quadrature.
CheckResult check_partition_of_unity(const VerifyOptions& o);
CheckResult check_quadrature_exactness(const VerifyOptions& o);
CheckResult check_dof_duality(const VerifyOptions& o);
CheckResult check_curl_consistency(const VerifyOptions& o);

// Global spaces on the mesh_n cube.
CheckResult check_mesh_volume(const VerifyOptions& o);
CheckResult check_tangential_continuity(const VerifyOptions& o);
CheckResult check_normal_continuity(const VerifyOptions& o);
CheckResult check_discrete_exactness(const VerifyOptions& o);
// Curl(Pi_c P) = Pi_d(Curl P) for random cubic P, coefficient-wise and as
// fields evaluated through the bases.
CheckResult check_commuting_diagram(const VerifyOptions& o);

// Material and manufactured data.
CheckResult check_material_symmetry(const VerifyOptions& o);
CheckResult check_homogenization(const VerifyOptions& o);
CheckResult check_manufactured_residuals(const VerifyOptions& o);
CheckResult check_limit_fields(const VerifyOptions& o);

// Assembly.
CheckResult check_matrix_symmetry(const VerifyOptions& o);
CheckResult check_consistent_coupling(const VerifyOptions& o);
CheckResult check_patch_test(const VerifyOptions& o);
CheckResult check_primal_mixed_agreement(const VerifyOptions& o);

std::vector<CheckResult> run_verification(const VerifyOptions& o);

}  // namespace rmm
