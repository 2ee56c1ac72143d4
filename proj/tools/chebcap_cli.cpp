#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "chebcap/harness.hpp"

using namespace chebcap;

namespace {

struct Options {
  std::string problem = "toy";
  double alpha = 1.0;
  int N = -1;
  double nu = 1.0;
  std::string method = "auto";
  std::string out;
  std::string ubar;
  std::optional<double> mu;
  int samples = 201;
  std::string cert;
  std::string save_ubar_path;
};

void add_problem_flags(CLI::App* sub, Options& o) {
  sub->add_option("--problem", o.problem, "toy or ks")->check(CLI::IsMember({"toy", "ks"}));
  sub->add_option("--alpha", o.alpha, "parameter alpha");
  sub->add_option("--N", o.N, "truncation order (default: 30 for toy, 200 for ks)")->check(CLI::PositiveNumber);
  sub->add_option("--nu", o.nu, "weight nu >= 1")->check(CLI::Range(1.0, 1e6));
  sub->add_option("--ubar", o.ubar, "approximate solution coefficient file");
  sub->add_option("--save-ubar", o.save_ubar_path, "write the approximate solution coefficients");
  sub->add_option("--out", o.out, "certificate output path");
}

PipelineConfig make_config(const Options& o, bool stability) {
  PipelineConfig c;
  c.problem = o.problem;
  c.alpha = o.alpha;
  c.N = o.N > 0 ? o.N : (o.problem == "ks" ? 200 : 30);
  c.nu = o.nu;
  c.stability = stability;
  c.method = method_from_name(o.method);
  c.mu = o.mu;
  c.ubar_in = o.ubar;
  return c;
}

void print_existence(const ExistenceCertificate& c) {
  std::printf("existence: %s\n", c.status.c_str());
  std::printf("  Y  = %.6e\n  Z1 = %.6e  (Z10 %.3e, Z11 %.3e, Z12 %.3e, Z13 %.3e)\n  Z2 = %.6e\n  r  = %.6e\n",
              c.Y.hi, c.Z1.hi, c.parts.Z10.hi, c.parts.Z11.hi, c.parts.Z12.hi, c.parts.Z13.hi, c.Z2.hi, c.r.hi);
}

void print_stability(const StabilityCertificate& s, const AprioriBound& ab) {
  std::printf("stability (%s): %s\n", method_name(s.method), s.status.c_str());
  std::printf("  lambda_max = %.6e (a priori, %s)\n", ab.lambda_max.hi, ab.source.c_str());
  if (s.lambda_max.hi < ab.lambda_max.hi) std::printf("  lambda_max refined = %.6e\n", s.lambda_max.hi);
  if (s.n_unstable >= 0) std::printf("  n_u = %d\n", s.n_unstable);
  for (const auto& d : s.unstable_enclosures)
    std::printf("  lambda in B(%.6f %+.6fi, %.3e)\n", d.center.re.mid(), d.center.im.mid(), d.radius.hi);
  if (s.stable_bound_ok) std::printf("  stable spectrum: Re lambda <= %.6e\n", s.stable_bound.hi);
  if (!s.delta_history.empty()) {
    std::printf("  delta:");
    for (double d : s.delta_history) std::printf(" %.3e", d);
    std::printf("\n");
  }
}

int run(const Options& o, bool stability) {
  PipelineConfig cfg = make_config(o, stability);
  RunRecord rec = run_pipeline(cfg);
  if (!o.save_ubar_path.empty() && !rec.ubar.empty()) save_ubar(o.save_ubar_path, o.problem, o.alpha, rec.ubar);
  if (rec.stage != "setup" && rec.stage != "approximate") print_existence(rec.existence);
  if (rec.has_stability) print_stability(rec.stability, rec.apriori);
  if (!rec.diagnostics.empty()) std::printf("diagnostics: %s\n", rec.diagnostics.c_str());
  if (!o.out.empty()) {
    save_record(rec, o.out);
    std::printf("certificate written to %s\n", o.out.c_str());
  }
  return rec.success ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Validated steady states and unstable-eigenvalue counts for parabolic PDEs"};
  app.require_subcommand(1);
  Options o;

  auto* steady = app.add_subcommand("prove-steady", "prove existence of a steady state near a numerical approximation");
  add_problem_flags(steady, o);

  auto* stab = app.add_subcommand("prove-stability", "prove existence and count unstable eigenvalues");
  add_problem_flags(stab, o);
  stab->add_option("--method", o.method, "auto, gershgorin or generalized")
      ->check(CLI::IsMember({"auto", "gershgorin", "generalized"}));
  stab->add_option("--mu", o.mu, "a priori parameter mu");

  auto* verify = app.add_subcommand("verify", "re-check the inequalities stored in a certificate");
  verify->add_option("certificate", o.cert, "certificate JSON")->required();

  auto* plot = app.add_subcommand("plot-data", "CSV of the validated steady state with error band");
  add_problem_flags(plot, o);
  plot->add_option("--samples", o.samples, "number of grid points")->check(CLI::Range(2, 1000000));

  CLI11_PARSE(app, argc, argv);

  try {
    if (*steady) return run(o, false);
    if (*stab) return run(o, true);
    if (*verify) {
      const VerifyResult vr = verify_certificate(o.cert);
      for (const auto& m : vr.messages) std::printf("%s\n", m.c_str());
      std::printf("%s\n", vr.ok ? "certificate verified" : "certificate REJECTED");
      return vr.ok ? 0 : 1;
    }
    if (*plot) {
      PipelineConfig cfg = make_config(o, false);
      RunRecord rec = run_pipeline(cfg);
      if (!rec.success) {
        std::fprintf(stderr, "no certified steady state: %s\n", rec.diagnostics.c_str());
        return 1;
      }
      const std::string csv = emit_plot_data(rec, o.samples);
      if (o.out.empty()) {
        std::cout << csv;
      } else {
        std::ofstream(o.out) << csv;
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 1;
}
