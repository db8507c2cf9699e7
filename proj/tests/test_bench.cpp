#include "rmm/bench.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

using namespace rmm;

namespace {

double value_of(const std::vector<ResultRow>& rows, int n, double lc, const std::string& field) {
  for (const auto& r : rows)
    if (r.n == n && r.lc == lc && r.field == field) return r.value;
  FAIL("missing row " << field << " n=" << n << " lc=" << lc);
  return 0.0;
}

ExperimentSpec small(Experiment e, std::vector<int> ns, std::vector<double> lcs) {
  ExperimentSpec s = default_spec(e);
  s.mesh_ns = std::move(ns);
  s.lc_values = std::move(lcs);
  s.record_time = false;
  return s;
}

}  // namespace

TEST_SUITE("bench") {
  TEST_CASE("experiment names round trip") {
    CHECK(all_experiments().size() == 6);
    for (Experiment e : all_experiments()) CHECK(parse_experiment(to_string(e)) == e);
    CHECK_THROWS_AS(parse_experiment("nope"), InputError);
  }

  TEST_CASE("defaults follow the published studies") {
    const ExperimentSpec c1 = default_spec(Experiment::conv_lc_zero_muc1);
    CHECK(c1.formulation == Formulation::primal);
    CHECK(c1.mesh_ns == std::vector<int>{2, 4, 8, 16});
    CHECK(c1.lc_values == std::vector<double>{1e-6, 1e-7, 1e-8, 1e-9});
    const ExperimentSpec r = default_spec(Experiment::robustness_lc);
    CHECK(r.formulation == Formulation::mixed);
    CHECK(r.lc_values.size() == 10);
    const ExperimentSpec l = default_spec(Experiment::limit_lc_inf);
    CHECK(std::isinf(l.lc_values.front()));
    const ExperimentSpec b = default_spec(Experiment::bounded_stiffness);
    CHECK(b.mesh_ns == std::vector<int>{8});
    CHECK(b.params.mu_macro == 76.9);
    for (Experiment e : all_experiments()) {
      CHECK(default_spec(e).sequence == Sequence::quadratic);
      CHECK_NOTHROW(validate_spec(default_spec(e)));
    }
  }

  TEST_CASE("incompatible specs are rejected") {
    ExperimentSpec s = small(Experiment::limit_lc_inf, {1}, {kInf});
    s.formulation = Formulation::primal;
    CHECK_THROWS_AS(validate_spec(s), InputError);
    s = small(Experiment::robustness_lc, {1}, {0.0});
    CHECK_THROWS_AS(validate_spec(s), InputError);
    s = small(Experiment::robustness_lc, {}, {1.0});
    CHECK_THROWS_AS(validate_spec(s), InputError);
    s = small(Experiment::robustness_lc, {0}, {1.0});
    CHECK_THROWS_AS(validate_spec(s), InputError);
    s = small(Experiment::robustness_lc, {1}, {});
    CHECK_THROWS_AS(validate_spec(s), InputError);
  }

  TEST_CASE("convergence sweep: coincident curves and attached rates") {
    const auto rows = run_experiment(small(Experiment::conv_lc_zero_muc1, {1, 2}, {1e-6, 1e-9}));
    CHECK(rows.size() == 8);
    for (int n : {1, 2})
      for (const char* f : {"u_error", "P_error"}) {
        const double a = value_of(rows, n, 1e-6, f), b = value_of(rows, n, 1e-9, f);
        CHECK(std::abs(a - b) <= 1e-6 * a);
      }
    for (const auto& r : rows) {
      CHECK(r.seconds == 0.0);
      CHECK(r.rate.has_value() == (r.n == 2));
      if (r.rate)
        CHECK(*r.rate == doctest::Approx(std::log2(value_of(rows, 1, r.lc, r.field) / r.value)).epsilon(1e-12));
    }
  }

  TEST_CASE("mixed errors settle for large L_c and the six-element mesh is flat") {
    const auto rows = run_experiment(small(Experiment::robustness_lc, {1, 2}, {1e5, 1e9}));
    CHECK(std::abs(value_of(rows, 2, 1e5, "P_rel") / value_of(rows, 2, 1e9, "P_rel") - 1.0) < 1e-6);
    CHECK(std::abs(value_of(rows, 1, 1e5, "P_rel") / value_of(rows, 1, 1e9, "P_rel") - 1.0) < 1e-6);
  }

  TEST_CASE("the L_c = inf mode is the large-L_c limit") {
    const auto rows = run_experiment(small(Experiment::limit_lc_inf, {2}, {kInf, 1e9, 1.0, 10.0}));
    const double inf = value_of(rows, 2, kInf, "P_rel");
    CHECK(std::abs(value_of(rows, 2, 1e9, "P_rel") / inf - 1.0) < 1e-6);
    CHECK(value_of(rows, 2, 1.0, "P_rel") > value_of(rows, 2, 10.0, "P_rel"));
  }

  TEST_CASE("Cauchy comparison on a coarse beam") {
    const auto rows = run_experiment(small(Experiment::cauchy_compare, {1}, {1e2, 1.0, 1e-2}));
    CHECK(value_of(rows, 1, 1e2, "deviation") > value_of(rows, 1, 1.0, "deviation"));
    CHECK(value_of(rows, 1, 1.0, "deviation") > value_of(rows, 1, 1e-2, "deviation"));
    const double ic = value_of(rows, 1, 1.0, "energy_cauchy");
    CHECK(value_of(rows, 1, 1e2, "energy_cauchy") == ic);
    CHECK(value_of(rows, 1, 1e-2, "energy_relaxed") < ic);
    CHECK(value_of(rows, 1, 1e-2, "energy_relaxed") > value_of(rows, 1, 1e2, "energy_relaxed"));
    CHECK(beam_mesh(1).num_tets() == 18);
  }

  TEST_CASE("bounded stiffness is monotone and bracketed") {
    const auto rows = run_experiment(small(Experiment::bounded_stiffness, {1}, {1e2, 1.0, 1e-2}));
    const double hi = value_of(rows, 1, 1e2, "r_x"), mid = value_of(rows, 1, 1.0, "r_x"),
                 lo = value_of(rows, 1, 1e-2, "r_x");
    CHECK(hi > mid);
    CHECK(mid > lo);
    double macro = 0.0, micro = 0.0;
    for (const auto& r : rows) {
      if (r.field == "r_x_macro") macro = r.value;
      if (r.field == "r_x_micro") micro = r.value;
    }
    CHECK(macro <= lo * (1 + 1e-9));
    CHECK(micro >= hi * (1 - 1e-9));
  }

  TEST_CASE("CSV layout and the JSON sidecar") {
    std::vector<ResultRow> rows(2);
    rows[0] = {"robustness_lc", 2, 1470, 1e4, "P_rel", 0.25, std::nullopt, 0.0};
    rows[1] = {"robustness_lc", 4, 9558, kInf, "P_rel", 0.0625, 2.0, 1.5};
    std::ostringstream os;
    write_csv(os, rows);
    std::istringstream is(os.str());
    std::string header, l1, l2;
    std::getline(is, header);
    std::getline(is, l1);
    std::getline(is, l2);
    CHECK(header == "experiment,n,dofs,lc,field,value,rate,seconds");
    CHECK(l1 == "robustness_lc,2,1470,10000,P_rel,0.25,,0");
    CHECK(l2 == "robustness_lc,4,9558,inf,P_rel,0.0625,2,1.5");

    ExperimentSpec s = small(Experiment::robustness_lc, {1}, {1.0});
    s.output = "test_bench_out.csv";
    write_results(s, rows);
    std::ifstream js("test_bench_out.json");
    REQUIRE(js.good());
    const auto j = nlohmann::json::parse(js);
    CHECK(j["experiment"] == "robustness_lc");
    CHECK(j["formulation"] == "mixed");
    std::remove("test_bench_out.csv");
    std::remove("test_bench_out.json");
    s.output = "/nonexistent/dir/out.csv";
    CHECK_THROWS_AS(write_results(s, rows), IoError);
  }

  TEST_CASE("runs are reproducible without timings") {
    const ExperimentSpec s = small(Experiment::robustness_lc, {1}, {10.0});
    std::ostringstream a, b;
    write_csv(a, run_experiment(s));
    write_csv(b, run_experiment(s));
    CHECK(a.str() == b.str());
  }
}
