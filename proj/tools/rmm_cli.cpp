#include "rmm/bench.hpp"
#include "rmm/problem.hpp"
#include "rmm/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace rmm;
using nlohmann::ordered_json;

enum ExitCode { kOk = 0, kUsage = 1, kNumerical = 2, kIo = 3 };

// Infinite L_c is not representable in JSON.
ordered_json lc_json(double lc) { return std::isinf(lc) ? ordered_json("inf") : ordered_json(lc); }

std::vector<double> parse_lcs(const std::vector<std::string>& raw) {
  std::vector<double> out;
  for (const auto& s : raw) out.push_back(parse_lc(s));
  return out;
}

void check_lc_formulation(const std::vector<double>& lcs, Formulation f) {
  for (double lc : lcs) {
    if (std::isinf(lc) && f != Formulation::mixed)
      throw InputError("--lc inf requires --formulation mixed");
    if (lc == 0.0 && f != Formulation::primal) throw InputError("--lc 0 requires --formulation primal");
  }
}

struct MeshArgs {
  int n = 2;
  std::string out;
};

int cmd_mesh(const MeshArgs& a) {
  if (a.n <= 0) throw InputError("--mesh-n must be positive");
  const Mesh mesh = generate_cube_mesh(a.n, Vec3(-1, -1, -1), Vec3(1, 1, 1));
  const std::string path = a.out.empty() ? "cube_n" + std::to_string(a.n) + ".mesh" : a.out;
  write_mesh_file(path, mesh);
  std::cout << "V=" << mesh.num_vertices() << " E=" << mesh.num_edges() << " F=" << mesh.num_faces()
            << " T=" << mesh.num_tets() << '\n';
  return kOk;
}

struct SolveArgs {
  int n = 2;
  std::string mesh_file;
  std::string sequence = "quadratic";
  std::string formulation = "primal";
  std::vector<std::string> lcs;  // empty: L_c from --params, else 1
  std::string params_file;
  std::string case_name = "conv_muc1";
  std::string solver = "auto";
  std::string out;
  int threads = 0;
};

SolverKind parse_solver(const std::string& s) {
  if (s == "auto") return SolverKind::automatic;
  if (s == "direct") return SolverKind::direct;
  if (s == "cg") return SolverKind::block_cg;
  if (s == "penalty") return SolverKind::iterated_penalty;
  throw InputError("unknown solver '" + s + "'");
}

// The manufactured loads are only valid for the case's own moduli, so a
// params file may restate them and set L_c but not change them.
std::optional<double> params_file_lc(CaseName c, const std::string& path) {
  const MaterialParams ref = case_params(c, 1.0);
  MaterialParams p = ref;
  p.L_c = -1.0;
  p = read_params_file(path, p);
  const bool same = p.lambda_e == ref.lambda_e && p.mu_e == ref.mu_e && p.mu_c == ref.mu_c &&
                    p.lambda_micro == ref.lambda_micro && p.mu_micro == ref.mu_micro &&
                    p.lambda_macro == ref.lambda_macro && p.mu_macro == ref.mu_macro;
  if (!same) throw InputError("case " + to_string(c) + " is defined for its own moduli; --params may only set L_c");
  if (p.L_c < 0.0) return std::nullopt;
  return p.L_c;
}

ProblemSetup solve_setup(CaseName c, const SolveArgs& a, Sequence seq, Formulation form, double lc) {
  ProblemSetup s = case_setup(c, seq, form, lc);
  s.threads = a.threads;
  s.solver = parse_solver(a.solver);
  return s;
}

int cmd_solve(const SolveArgs& a) {
  const Sequence seq = parse_sequence(a.sequence);
  const Formulation form = parse_formulation(a.formulation);
  const CaseName c = parse_case(a.case_name);
  if (c == CaseName::none) throw InputError("solve needs a manufactured --case");
  std::vector<double> lcs = parse_lcs(a.lcs);
  if (lcs.empty()) {
    const auto file_lc = a.params_file.empty() ? std::nullopt : params_file_lc(c, a.params_file);
    lcs.push_back(file_lc.value_or(1.0));
  } else if (!a.params_file.empty()) {
    params_file_lc(c, a.params_file);
  }
  check_lc_formulation(lcs, form);
  if (a.mesh_file.empty() && a.n <= 0) throw InputError("--mesh-n must be positive");
  parse_solver(a.solver);

  const Mesh mesh =
      a.mesh_file.empty() ? generate_cube_mesh(a.n, Vec3(-1, -1, -1), Vec3(1, 1, 1)) : read_mesh_file(a.mesh_file);

  ordered_json report;
  report["case"] = to_string(c);
  report["sequence"] = to_string(seq);
  report["formulation"] = to_string(form);
  report["elements"] = mesh.num_tets();
  report["results"] = ordered_json::array();
  for (double lc : lcs) {
    const ProblemSetup setup = solve_setup(c, a, seq, form, lc);
    ordered_json r;
    r["lc"] = lc_json(lc);
    try {
      const ProblemResult res = solve_problem(mesh, setup);
      const MaterialParams& p = setup.params;
      const VectorField u = [&](const Vec3& x) { return evaluate_case(c, p, x).u; };
      const TensorField P = [&](const Vec3& x) { return evaluate_case(c, p, x).P; };
      const Solution sol = res.solution(mesh);
      const double eu = l2_error(sol, Field::u, u), eP = l2_error(sol, Field::P, P);
      const double nu = l2_norm(mesh, u), nP = l2_norm(mesh, P);
      r["dofs"] = res.dofmap.total;
      r["u_error"] = eu;
      r["P_error"] = eP;
      r["u_rel"] = nu > 0 ? eu / nu : eu;
      r["P_rel"] = nP > 0 ? eP / nP : eP;
      r["energy"] = energy(sol, p, EnergyKind::relaxed);
      r["residual"] = res.stats.residual;
      r["iterations"] = res.stats.iterations;
    } catch (const SingularMatrixError& e) {
      ordered_json err{{"error", "singular pivot"}, {"pivot", e.pivot}, {"lc", lc_json(lc)}, {"detail", e.what()}};
      std::cout << err.dump(2) << '\n';
      return kNumerical;
    }
    report["results"].push_back(r);
  }

  const std::string text = report.dump(2);
  std::cout << text << '\n';
  if (!a.out.empty()) {
    std::ofstream f(a.out);
    if (!(f << text << '\n')) throw IoError("cannot write '" + a.out + "'");
  }
  return kOk;
}

struct BenchArgs {
  std::string experiment;
  std::vector<int> ns;
  std::string sequence, formulation;
  std::vector<std::string> lcs;
  std::string params_file;
  std::string out;
  int threads = 0;
  bool no_time = false;
};

ExperimentSpec bench_spec(Experiment e, const BenchArgs& a, const std::string& out) {
  ExperimentSpec s = default_spec(e);
  if (!a.ns.empty()) s.mesh_ns = a.ns;
  if (!a.sequence.empty()) s.sequence = parse_sequence(a.sequence);
  if (!a.formulation.empty()) s.formulation = parse_formulation(a.formulation);
  if (!a.lcs.empty()) s.lc_values = parse_lcs(a.lcs);
  if (!a.params_file.empty()) s.params = read_params_file(a.params_file, s.params);
  s.output = out;
  s.threads = a.threads;
  s.record_time = !a.no_time;
  validate_spec(s);
  return s;
}

int cmd_bench(const BenchArgs& a) {
  std::vector<ExperimentSpec> specs;
  if (a.experiment == "all") {
    // --out names a directory here.
    const std::filesystem::path dir = a.out.empty() ? "." : a.out;
    for (Experiment e : all_experiments())
      specs.push_back(bench_spec(e, a, (dir / (to_string(e) + ".csv")).string()));
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create '" + dir.string() + "': " + ec.message());
  } else {
    const Experiment e = parse_experiment(a.experiment);
    specs.push_back(bench_spec(e, a, a.out.empty() ? to_string(e) + ".csv" : a.out));
  }
  for (const auto& s : specs) {
    const auto rows = run_experiment(s);
    write_results(s, rows);
    std::cout << to_string(s.experiment) << ": " << rows.size() << " rows -> " << s.output << '\n';
  }
  return kOk;
}

struct VerifyArgs {
  std::uint64_t seed = 1;
  int n = 2;
};

int cmd_verify(const VerifyArgs& a) {
  if (a.n <= 0) throw InputError("--mesh-n must be positive");
  VerifyOptions o;
  o.seed = a.seed;
  o.mesh_n = a.n;
  const auto results = run_verification(o);
  int failed = 0;
  for (const auto& r : results) {
    std::cout << (r.passed ? "PASS " : "FAIL ") << std::left << std::setw(24) << r.name << std::right
              << " error " << std::scientific << std::setprecision(3) << r.error << " tol " << r.tolerance
              << std::defaultfloat;
    if (!r.detail.empty()) std::cout << "  " << r.detail;
    std::cout << '\n';
    failed += !r.passed;
  }
  std::cout << results.size() - failed << '/' << results.size() << " checks passed\n";
  return failed ? kNumerical : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Relaxed micromorphic finite elements"};
  app.require_subcommand(1);

  MeshArgs mesh_args;
  auto* mesh = app.add_subcommand("mesh", "Write a structured cube mesh and print entity counts");
  mesh->add_option("--mesh-n", mesh_args.n, "Cubes per direction")->required();
  mesh->add_option("--out", mesh_args.out, "Output mesh path");

  SolveArgs solve_args;
  auto* solve = app.add_subcommand("solve", "Solve a manufactured problem and report errors as JSON");
  auto* solve_n = solve->add_option("--mesh-n", solve_args.n, "Cubes per direction of [-1,1]^3");
  solve->add_option("--mesh", solve_args.mesh_file, "Read the mesh from a file instead")->excludes(solve_n);
  solve->add_option("--sequence", solve_args.sequence)->check(CLI::IsMember({"linear", "quadratic"}));
  solve->add_option("--formulation", solve_args.formulation)->check(CLI::IsMember({"primal", "mixed"}));
  solve->add_option("--lc", solve_args.lcs, "Characteristic length, repeatable, accepts inf");
  solve->add_option("--params", solve_args.params_file, "key=value material file");
  solve->add_option("--case", solve_args.case_name, "conv_muc1, conv_muc0, robustness or limit_inf");
  solve->add_option("--solver", solve_args.solver)->check(CLI::IsMember({"auto", "direct", "cg", "penalty"}));
  solve->add_option("--out", solve_args.out, "Also write the JSON report here");
  solve->add_option("--threads", solve_args.threads, "Assembly workers, 0 = all cores");

  BenchArgs bench_args;
  auto* bench = app.add_subcommand("bench", "Run an experiment and write CSV plus JSON");
  bench->add_option("--experiment", bench_args.experiment, "Experiment name or 'all'")->required();
  bench->add_option("--mesh-n", bench_args.ns, "Mesh sizes, repeatable");
  bench->add_option("--sequence", bench_args.sequence)->check(CLI::IsMember({"linear", "quadratic"}));
  bench->add_option("--formulation", bench_args.formulation)->check(CLI::IsMember({"primal", "mixed"}));
  bench->add_option("--lc", bench_args.lcs, "Characteristic lengths, repeatable, accepts inf");
  bench->add_option("--params", bench_args.params_file, "key=value material file");
  bench->add_option("--out", bench_args.out, "CSV path, or directory with --experiment all");
  bench->add_option("--threads", bench_args.threads, "Assembly workers, 0 = all cores");
  bench->add_flag("--no-time", bench_args.no_time, "Write 0 seconds for reproducible files");

  VerifyArgs verify_args;
  auto* verify = app.add_subcommand("verify", "Run the property checks");
  verify->add_option("--seed", verify_args.seed, "Seed for random sample points");
  verify->add_option("--mesh-n", verify_args.n, "Cubes per direction of the test mesh");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (mesh->parsed()) return cmd_mesh(mesh_args);
    if (solve->parsed()) return cmd_solve(solve_args);
    if (bench->parsed()) return cmd_bench(bench_args);
    if (verify->parsed()) return cmd_verify(verify_args);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIo;
  } catch (const SingularMatrixError& e) {
    std::cerr << "error: singular pivot: " << e.what() << '\n';
    return kNumerical;
  } catch (const NumericalError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNumerical;
  }
  return kUsage;
}
