#include "rmm/bench.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

namespace rmm {

namespace {

struct ExperimentName {
  Experiment e;
  const char* name;
};

constexpr ExperimentName kNames[] = {
    {Experiment::conv_lc_zero_muc1, "conv_lc_zero_muc1"},
    {Experiment::conv_lc_zero_muc0, "conv_lc_zero_muc0"},
    {Experiment::robustness_lc, "robustness_lc"},
    {Experiment::limit_lc_inf, "limit_lc_inf"},
    {Experiment::cauchy_compare, "cauchy_compare"},
    {Experiment::bounded_stiffness, "bounded_stiffness"},
};

std::vector<double> decades(int lo, int hi) {
  std::vector<double> v;
  for (int k = hi; k >= lo; --k) v.push_back(std::pow(10.0, k));
  return v;
}

// Half-decade grid from 1e3 down to 1e-3 as plotted for the beam and cube.
std::vector<double> half_decades() {
  return {1e3, 1e2, 1e1, std::sqrt(10.0), 1.0, 1.0 / std::sqrt(10.0), 1e-1, 1e-1 / std::sqrt(10.0), 1e-2, 1e-3};
}

class Timer {
 public:
  explicit Timer(bool on) : on_(on), start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    if (!on_) return 0.0;
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  bool on_;
  std::chrono::steady_clock::time_point start_;
};

constexpr double kMicroReferenceLc = 1e9;

Mesh unit_cube(int n) { return generate_cube_mesh(n, Vec3(-1, -1, -1), Vec3(1, 1, 1)); }

ResultRow row(const ExperimentSpec& s, int n, int dofs, double lc, std::string field, double value, double secs) {
  ResultRow r;
  r.experiment = to_string(s.experiment);
  r.n = n;
  r.dofs = dofs;
  r.lc = lc;
  r.field = std::move(field);
  r.value = value;
  r.seconds = secs;
  return r;
}

// Rate between consecutive mesh sizes for the same (lc, field); h = 1/n.
void attach_rates(std::vector<ResultRow>& rows, const std::vector<std::string>& fields) {
  std::map<std::pair<double, std::string>, const ResultRow*> last;
  for (ResultRow& r : rows) {
    if (std::find(fields.begin(), fields.end(), r.field) == fields.end()) continue;
    const auto key = std::make_pair(r.lc, r.field);
    const auto it = last.find(key);
    if (it != last.end() && it->second->n < r.n && it->second->value > 0.0 && r.value > 0.0)
      r.rate = std::log(it->second->value / r.value) / std::log(static_cast<double>(r.n) / it->second->n);
    last[key] = &r;
  }
}

// Solves one manufactured cell and appends error rows; solver breakdowns
// become data rows instead of aborting the batch.
void manufactured_cell(const ExperimentSpec& s, CaseName c, const Mesh& mesh, int n, double lc,
                       bool relative, std::vector<ResultRow>& out) {
  const Timer timer(s.record_time);
  ProblemSetup setup = case_setup(c, s.sequence, s.formulation, lc);
  setup.threads = s.threads;
  const int dofs = build_dofmap(mesh, s.sequence, s.formulation).total;
  try {
    const ProblemResult r = solve_problem(mesh, setup);
    const CaseErrors e = case_errors(mesh, r, c, lc);
    const double t = timer.seconds();
    if (relative) {
      out.push_back(row(s, n, dofs, lc, "u_rel", e.u_relative(), t));
      out.push_back(row(s, n, dofs, lc, "P_rel", e.P_relative(), t));
    } else {
      out.push_back(row(s, n, dofs, lc, "u_error", e.u_error, t));
      out.push_back(row(s, n, dofs, lc, "P_error", e.P_error, t));
    }
  } catch (const SingularMatrixError& err) {
    out.push_back(row(s, n, dofs, lc, "singular", err.pivot, timer.seconds()));
  } catch (const NumericalError&) {
    out.push_back(row(s, n, dofs, lc, "failed", 1.0, timer.seconds()));
  }
}

std::vector<ResultRow> manufactured_sweep(const ExperimentSpec& s, CaseName c, bool relative) {
  validate_spec(s);
  std::vector<ResultRow> rows;
  for (int n : s.mesh_ns) {
    const Mesh mesh = unit_cube(n);
    for (double lc : s.lc_values) manufactured_cell(s, c, mesh, n, lc, relative, rows);
  }
  attach_rates(rows, relative ? std::vector<std::string>{"u_rel", "P_rel"}
                              : std::vector<std::string>{"u_error", "P_error"});
  return rows;
}

}  // namespace

std::string to_string(Experiment e) {
  for (const auto& n : kNames)
    if (n.e == e) return n.name;
  return "unknown";
}

Experiment parse_experiment(const std::string& s) {
  for (const auto& n : kNames)
    if (s == n.name) return n.e;
  throw InputError("unknown experiment '" + s + "'");
}

const std::vector<Experiment>& all_experiments() {
  static const std::vector<Experiment> all = [] {
    std::vector<Experiment> v;
    for (const auto& n : kNames) v.push_back(n.e);
    return v;
  }();
  return all;
}

ExperimentSpec default_spec(Experiment e) {
  ExperimentSpec s;
  s.experiment = e;
  s.sequence = Sequence::quadratic;
  s.output = to_string(e) + ".csv";
  switch (e) {
    case Experiment::conv_lc_zero_muc1:
      s.formulation = Formulation::primal;
      s.mesh_ns = {2, 4, 8, 16};
      s.lc_values = decades(-9, -6);
      s.params = case_params(CaseName::conv_muc1, 1e-6);
      break;
    case Experiment::conv_lc_zero_muc0:
      s.formulation = Formulation::primal;
      s.mesh_ns = {2, 4, 8};
      s.lc_values = decades(-10, -6);
      s.params = case_params(CaseName::conv_muc0, 1e-6);
      break;
    case Experiment::robustness_lc:
      s.formulation = Formulation::mixed;
      s.mesh_ns = {1, 2, 4, 8};
      s.lc_values = decades(0, 9);
      s.params = case_params(CaseName::robustness, 1.0);
      break;
    case Experiment::limit_lc_inf:
      s.formulation = Formulation::mixed;
      s.mesh_ns = {1, 2, 4, 8};
      s.lc_values = decades(0, 9);
      s.lc_values.insert(s.lc_values.begin(), kInf);
      s.params = case_params(CaseName::limit_inf, 1.0);
      break;
    case Experiment::cauchy_compare:
      s.formulation = Formulation::primal;
      s.mesh_ns = {4};
      s.lc_values = half_decades();
      s.params = beam_params();
      break;
    case Experiment::bounded_stiffness:
      s.formulation = Formulation::primal;
      s.mesh_ns = {8};
      s.lc_values = half_decades();
      s.params = beam_params();
      break;
  }
  return s;
}

void validate_spec(const ExperimentSpec& s) {
  if (s.mesh_ns.empty()) throw InputError("experiment needs at least one mesh size");
  if (s.lc_values.empty()) throw InputError("experiment needs at least one L_c value");
  for (int n : s.mesh_ns)
    if (n <= 0) throw InputError("mesh sizes must be positive");
  for (double lc : s.lc_values) {
    if (std::isnan(lc) || lc < 0.0) throw InputError("L_c values must be non-negative");
    if (lc == kInf && s.formulation != Formulation::mixed) throw InputError("L_c = inf needs the mixed formulation");
    if (lc == 0.0 && s.formulation != Formulation::primal) throw InputError("L_c = 0 needs the primal formulation");
  }
}

std::vector<ResultRow> run_conv_lc_zero(const ExperimentSpec& s) {
  if (s.experiment != Experiment::conv_lc_zero_muc1 && s.experiment != Experiment::conv_lc_zero_muc0)
    throw InputError("not a convergence experiment");
  const CaseName c = s.experiment == Experiment::conv_lc_zero_muc1 ? CaseName::conv_muc1 : CaseName::conv_muc0;
  return manufactured_sweep(s, c, false);
}

std::vector<ResultRow> run_robustness_lc(const ExperimentSpec& s) {
  return manufactured_sweep(s, CaseName::robustness, true);
}

std::vector<ResultRow> run_limit_lc_inf(const ExperimentSpec& s) {
  return manufactured_sweep(s, CaseName::limit_inf, true);
}

Mesh beam_mesh(int n) {
  if (n <= 0) throw InputError("beam subdivision must be positive");
  return generate_box_mesh(3 * n, n, n, Vec3(-3, -1, -1), Vec3(3, 1, 1));
}

std::vector<ResultRow> run_cauchy_compare(const ExperimentSpec& s) {
  validate_spec(s);
  Loads loads;
  loads.f = [](const Vec3&) { return Vec3(0, 0, -10); };
  DirichletSpec d;
  d.region = side_bit(Side::xmin) | side_bit(Side::xmax);
  d.p_mode = PTrace::consistent;

  std::vector<ResultRow> rows;
  for (int n : s.mesh_ns) {
    const Mesh mesh = beam_mesh(n);
    const Timer tc(s.record_time);
    const ProblemResult cauchy = solve_cauchy(mesh, s.sequence, s.params, loads, d);
    const Solution sc = cauchy.solution(mesh);
    const double u_norm = l2_error(sc, Field::u, VectorField{});
    const double i_cauchy = energy(sc, s.params, EnergyKind::cauchy);
    const double t_cauchy = tc.seconds();
    for (double lc : s.lc_values) {
      const Timer timer(s.record_time);
      ProblemSetup setup;
      setup.sequence = s.sequence;
      setup.formulation = s.formulation;
      setup.params = s.params;
      setup.params.L_c = lc;
      setup.loads = loads;
      setup.dirichlet = d;
      setup.threads = s.threads;
      const ProblemResult r = solve_problem(mesh, setup);
      // Same u layout in both systems, so the difference is a discrete field.
      Eigen::VectorXd diff = r.x;
      diff.head(r.dofmap.n_u) -= cauchy.x.head(cauchy.dofmap.n_u);
      const Solution sd{&mesh, &r.dofmap, diff};
      const double dev = l2_error(sd, Field::u, VectorField{}) / u_norm;
      const double i_relaxed = energy(r.solution(mesh), setup.params, EnergyKind::relaxed);
      const double t = timer.seconds() + t_cauchy;
      rows.push_back(row(s, n, r.dofmap.total, lc, "deviation", dev, t));
      rows.push_back(row(s, n, r.dofmap.total, lc, "energy_relaxed", i_relaxed, t));
      rows.push_back(row(s, n, r.dofmap.total, lc, "energy_cauchy", i_cauchy, t));
    }
  }
  return rows;
}

std::vector<ResultRow> run_bounded_stiffness(const ExperimentSpec& s) {
  validate_spec(s);
  DirichletSpec d;
  d.region = side_bit(Side::zmin) | side_bit(Side::zmax);
  d.u = [](const Vec3& x) { return Vec3(1.0 + x[2], 0, 0); };
  d.p_mode = PTrace::consistent;

  auto reaction = [&](const Mesh& mesh, Formulation f, double lc, ProblemResult* keep) {
    ProblemSetup setup;
    setup.sequence = s.sequence;
    setup.formulation = f;
    setup.params = s.params;
    setup.params.L_c = lc;
    setup.dirichlet = d;
    setup.keep_unconstrained = true;
    setup.threads = s.threads;
    ProblemResult r = solve_problem(mesh, setup);
    const double rx = reaction_force(r.K_full, r.f_full, r.x, mesh, r.dofmap, side_bit(Side::zmax), 0);
    if (keep) *keep = std::move(r);
    return rx;
  };

  std::vector<ResultRow> rows;
  for (int n : s.mesh_ns) {
    const Mesh mesh = unit_cube(n);
    for (double lc : s.lc_values) {
      const Timer timer(s.record_time);
      ProblemResult r;
      const double rx = reaction(mesh, s.formulation, lc, &r);
      rows.push_back(row(s, n, r.dofmap.total, lc, "r_x", rx, timer.seconds()));
    }
    // Stiffness bounds: Cmacro through L_c = 0 in the primal form, Cmicro
    // through the mixed form with a very large L_c.
    {
      const Timer timer(s.record_time);
      ProblemResult r;
      const double rx = reaction(mesh, Formulation::primal, 0.0, &r);
      rows.push_back(row(s, n, r.dofmap.total, 0.0, "r_x_macro", rx, timer.seconds()));
    }
    {
      const Timer timer(s.record_time);
      ProblemResult r;
      const double rx = reaction(mesh, Formulation::mixed, kMicroReferenceLc, &r);
      rows.push_back(row(s, n, r.dofmap.total, kMicroReferenceLc, "r_x_micro", rx, timer.seconds()));
    }
  }
  return rows;
}

std::vector<ResultRow> run_experiment(const ExperimentSpec& s) {
  switch (s.experiment) {
    case Experiment::conv_lc_zero_muc1:
    case Experiment::conv_lc_zero_muc0: return run_conv_lc_zero(s);
    case Experiment::robustness_lc: return run_robustness_lc(s);
    case Experiment::limit_lc_inf: return run_limit_lc_inf(s);
    case Experiment::cauchy_compare: return run_cauchy_compare(s);
    case Experiment::bounded_stiffness: return run_bounded_stiffness(s);
  }
  throw InputError("unknown experiment");
}

void write_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
  std::ostringstream buf;
  buf << "experiment,n,dofs,lc,field,value,rate,seconds\n";
  buf << std::setprecision(12);
  for (const ResultRow& r : rows) {
    buf << r.experiment << ',' << r.n << ',' << r.dofs << ',' << format_lc(r.lc) << ',' << r.field << ','
        << r.value << ',';
    if (r.rate) buf << *r.rate;
    buf << ',' << std::setprecision(4) << r.seconds << std::setprecision(12) << '\n';
  }
  out << buf.str();
}

void write_spec_json(std::ostream& out, const ExperimentSpec& s) {
  nlohmann::ordered_json j;
  j["experiment"] = to_string(s.experiment);
  j["sequence"] = to_string(s.sequence);
  j["formulation"] = to_string(s.formulation);
  j["mesh_ns"] = s.mesh_ns;
  std::vector<std::string> lcs;
  for (double lc : s.lc_values) lcs.push_back(format_lc(lc));
  j["lc_values"] = lcs;
  const MaterialParams& p = s.params;
  j["params"] = {{"lambda_e", p.lambda_e},         {"mu_e", p.mu_e},         {"mu_c", p.mu_c},
                 {"lambda_micro", p.lambda_micro}, {"mu_micro", p.mu_micro}, {"lambda_macro", p.lambda_macro},
                 {"mu_macro", p.mu_macro}};
  j["output"] = s.output;
  j["record_time"] = s.record_time;
  out << j.dump(2) << '\n';
}

void write_results(const ExperimentSpec& s, const std::vector<ResultRow>& rows) {
  if (s.output.empty()) throw InputError("no output path");
  std::ofstream csv(s.output);
  if (!csv) throw IoError("cannot write " + s.output);
  write_csv(csv, rows);
  std::string side = s.output;
  const auto dot = side.rfind('.');
  const auto slash = side.find_last_of("/\\");
  if (dot != std::string::npos && (slash == std::string::npos || dot > slash)) side.erase(dot);
  side += ".json";
  std::ofstream js(side);
  if (!js) throw IoError("cannot write " + side);
  write_spec_json(js, s);
  if (!csv || !js) throw IoError("write failed for " + s.output);
}

}  // namespace rmm
