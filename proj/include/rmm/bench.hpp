#pragma once

#include "rmm/problem.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace rmm {

enum class Experiment {
  conv_lc_zero_muc1,
  conv_lc_zero_muc0,
  robustness_lc,
  limit_lc_inf,
  cauchy_compare,
  bounded_stiffness,
};

std::string to_string(Experiment e);
Experiment parse_experiment(const std::string& s);
const std::vector<Experiment>& all_experiments();

struct ExperimentSpec {
  Experiment experiment = Experiment::robustness_lc;
  Sequence sequence = Sequence::quadratic;
  Formulation formulation = Formulation::mixed;
  std::vector<int> mesh_ns;
  std::vector<double> lc_values;  // may contain kInf
  MaterialParams params;          // used by cauchy_compare and bounded_stiffness
  std::string output;             // CSV path; the JSON sidecar sits next to it
  bool record_time = true;        // false writes 0 seconds for byte-stable output
  int threads = 0;
};

// Defaults reproducing the corresponding study.
ExperimentSpec default_spec(Experiment e);

// Throws InputError for incompatible combinations (L_c = inf needs mixed,
// L_c = 0 needs primal, empty lists, non-positive n).
void validate_spec(const ExperimentSpec& spec);

struct ResultRow {
  std::string experiment;
  int n = 0;
  int dofs = 0;
  double lc = 0.0;
  std::string field;
  double value = 0.0;
  std::optional<double> rate;
  double seconds = 0.0;
};

std::vector<ResultRow> run_conv_lc_zero(const ExperimentSpec& spec);
std::vector<ResultRow> run_robustness_lc(const ExperimentSpec& spec);
std::vector<ResultRow> run_limit_lc_inf(const ExperimentSpec& spec);
std::vector<ResultRow> run_cauchy_compare(const ExperimentSpec& spec);
std::vector<ResultRow> run_bounded_stiffness(const ExperimentSpec& spec);
std::vector<ResultRow> run_experiment(const ExperimentSpec& spec);

// Beam [-3,3] x [-1,1]^2 split into 3n x n x n cubes.
Mesh beam_mesh(int n);

void write_csv(std::ostream& out, const std::vector<ResultRow>& rows);
void write_spec_json(std::ostream& out, const ExperimentSpec& spec);
// Writes spec.output and its .json sidecar.
void write_results(const ExperimentSpec& spec, const std::vector<ResultRow>& rows);

}  // namespace rmm
