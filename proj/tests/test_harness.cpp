#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "chebcap/harness.hpp"
#include "chebcap/serialize.hpp"
#include "test_util.hpp"

using namespace chebcap;
using namespace chebcap::testing;

namespace {

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("chebcap_test_" + name);
}

PipelineConfig config(const std::string& problem, double alpha, int N, bool stability,
                      MethodPref method = MethodPref::automatic) {
  PipelineConfig c;
  c.problem = problem;
  c.alpha = alpha;
  c.N = N;
  c.stability = stability;
  c.method = method;
  return c;
}

const RunRecord& toy_run() {
  static const RunRecord r = run_pipeline(config("toy", 1.0, 30, true));
  return r;
}

const RunRecord& ks1_run() {
  static const RunRecord r = run_pipeline(config("ks", 1.0, 200, true));
  return r;
}

nlohmann::json without_timings(nlohmann::json j) {
  j.erase("timings");
  return j;
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST_CASE("toy problem at alpha = 0 is the identity map") {
  const Problem p = build_problem(register_toy(0.0, 20));
  Rng g(71);
  const CoeffSeq u = random_seq(g, 21);
  CHECK(seq_overlap(eval_F(u, p), u));
}

TEST_CASE("problem spec round-trips through JSON") {
  for (const ProblemSpec& s : {register_toy(1.0, 30), register_ks(100.0, 200)}) {
    const ProblemSpec back = problemspec_from_json(to_json(s));
    CHECK(to_json(back) == to_json(s));
    CHECK(back.m == s.m);
    CHECK(back.parity == s.parity);
    CHECK(back.N == s.N);
  }
}

TEST_CASE("KS F preserves odd parity") {
  const Problem p = build_problem(register_ks(1.0, 60));
  Rng g(73);
  for (int s = 0; s < 10; ++s) {
    const CoeffSeq f = eval_F(random_seq(g, 61, 1.0, Parity::odd), p);
    CHECK(f.parity == Parity::odd);
    CHECK(f.parity_consistent());
  }
}

TEST_CASE("KS inverse through the factored Laplacian equals the generic path") {
  const Problem p = build_problem(register_ks(1.0, 60));
  CoeffSeq e3 = basis_Ek(3, 1.0);
  e3.parity = Parity::odd;
  const CoeffSeq sq = special_inverse_apply(SpecialInverse::neumann_odd, special_inverse_apply(SpecialInverse::neumann_odd, e3));
  CHECK(seq_overlap(p.K[0].apply(e3), Interval(-1.0) * sq));
  CHECK(seq_overlap(p.K[2].apply(e3), Interval(-1.0) * special_inverse_apply(SpecialInverse::neumann_odd, e3)));
}

TEST_CASE("toy pipeline certifies a stable steady state") {
  const RunRecord& r = toy_run();
  INFO(r.diagnostics);
  REQUIRE(r.success);
  CHECK(r.stage == "done");
  CHECK(r.stability.n_unstable == 0);
}

TEST_CASE("KS alpha = 1 pipeline finds one unstable direction") {
  const RunRecord& r = ks1_run();
  INFO(r.diagnostics);
  REQUIRE(r.success);
  CHECK(r.existence.r.hi <= 1e-11);
  CHECK(r.stability.method == StabilityMethod::gershgorin);
  CHECK(r.stability.n_unstable == 1);
}

TEST_CASE("KS alpha = 100 generalized pipeline finds two unstable directions") {
  const RunRecord r = run_pipeline(config("ks", 100.0, 200, true, MethodPref::generalized));
  INFO(r.diagnostics);
  REQUIRE(r.success);
  CHECK(r.stability.method == StabilityMethod::generalized);
  CHECK(r.stability.n_unstable == 2);
}

TEST_CASE("plot data") {
  const RunRecord& t = toy_run();
  const auto rows = lines(emit_plot_data(t, 201));
  REQUIRE(rows.size() == 202);
  CHECK(rows[0] == "x,v,half_width");
  auto parse = [](const std::string& row) {
    double x = 0, v = 0, w = 0;
    REQUIRE(std::sscanf(row.c_str(), "%lf,%lf,%lf", &x, &v, &w) == 3);
    return std::array<double, 3>{x, v, w};
  };
  const auto first = parse(rows[1]);
  const auto last = parse(rows[201]);
  CHECK(first[0] == -1.0);
  CHECK(last[0] == 1.0);
  CHECK(std::fabs(first[1]) <= first[2]);
  CHECK(std::fabs(last[1]) <= last[2]);
  CHECK(first[2] <= 1e-12);

  const auto ks = lines(emit_plot_data(ks1_run(), 201));
  REQUIRE(ks.size() == 202);
  for (int i = 1; i <= 201; ++i) {
    const auto a = parse(ks[static_cast<size_t>(i)]);
    const auto b = parse(ks[static_cast<size_t>(202 - i)]);
    CHECK(std::fabs(a[0] + b[0]) <= 1e-15);
    CHECK(std::fabs(a[1] + b[1]) <= a[2] + b[2] + 1e-12);
  }
}

TEST_CASE("verify accepts fresh certificates and rejects tampered ones") {
  const nlohmann::json toy = record_to_json(toy_run());
  CHECK(verify_certificate_json(toy).ok);
  const nlohmann::json ks = record_to_json(ks1_run());
  const VerifyResult good = verify_certificate_json(ks);
  const std::string last = good.messages.empty() ? std::string() : good.messages.back();
  INFO(last);
  CHECK(good.ok);

  for (const nlohmann::json* src : {&toy, &ks}) {
    nlohmann::json bad = *src;
    const Interval r = interval_from_json(bad["existence"]["r"]);
    bad["existence"]["r"] = to_json(Interval(r.lo * 1e6, r.hi * 1e6));
    CHECK_FALSE(verify_certificate_json(bad).ok);
  }

  nlohmann::json y = toy;
  y["existence"]["Y"] = to_json(Interval(1.0));
  CHECK_FALSE(verify_certificate_json(y).ok);

  nlohmann::json n = ks;
  n["stability"]["n_unstable"] = 0;
  CHECK_FALSE(verify_certificate_json(n).ok);
}

TEST_CASE("verify reports a parse error on a truncated file") {
  const auto path = temp_file("truncated.json");
  const std::string text = record_to_json(toy_run()).dump();
  std::ofstream(path) << text.substr(0, text.size() / 2);
  const VerifyResult v = verify_certificate(path.string());
  CHECK_FALSE(v.ok);
  REQUIRE_FALSE(v.messages.empty());
  CHECK(v.messages.back().find("parse error") != std::string::npos);
  std::filesystem::remove(path);
}

TEST_CASE("saved certificates verify from disk") {
  const auto path = temp_file("toy.json");
  save_record(toy_run(), path.string());
  CHECK(verify_certificate(path.string()).ok);
  std::filesystem::remove(path);
}

TEST_CASE("runs are deterministic") {
  const RunRecord a = run_pipeline(config("toy", 1.0, 30, true));
  const RunRecord b = run_pipeline(config("toy", 1.0, 30, true));
  CHECK(without_timings(record_to_json(a)) == without_timings(record_to_json(b)));
}

TEST_CASE("approximation files round-trip and reproduce the certificate") {
  const auto path = temp_file("ubar.json");
  save_ubar(path.string(), "toy", 1.0, toy_run().ubar);
  const std::vector<double> back = load_ubar(path.string());
  REQUIRE(back.size() == toy_run().ubar.size());
  for (size_t i = 0; i < back.size(); ++i) CHECK(back[i] == toy_run().ubar[i]);
  PipelineConfig c = config("toy", 1.0, 30, true);
  c.ubar_in = path.string();
  const RunRecord r = run_pipeline(c);
  REQUIRE(r.success);
  CHECK(without_timings(record_to_json(r))["existence"] == without_timings(record_to_json(toy_run()))["existence"]);
  std::filesystem::remove(path);
}

TEST_CASE("Y dominates a residual lower bound") {
  for (const RunRecord* r : {&toy_run(), &ks1_run()}) {
    const CoeffSeq F = eval_F(r->existence.Ubar, r->problem);
    const Interval tail = norm_ell1nu(project(F, r->existence.N, Side::gt));
    CHECK(r->existence.Y.hi >= tail.lo);
  }
}

TEST_CASE("failed stages are reported, not thrown") {
  PipelineConfig c = config("toy", 1.0, 30, false);
  c.ubar_in = temp_file("missing.json").string();
  const RunRecord r = run_pipeline(c);
  CHECK_FALSE(r.success);
  CHECK(r.stage == "approximate");
  CHECK_FALSE(r.diagnostics.empty());
}
