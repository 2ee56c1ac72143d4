#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "chebcap/apriori.hpp"
#include "chebcap/serialize.hpp"
#include "chebcap/stability.hpp"
#include "chebcap/validate.hpp"

namespace chebcap {

// ∂ₜv = ∂ₓ²v + α(v² + 1), v(±1) = 0.
ProblemSpec register_toy(double alpha, int N = 30, double nu = 1.0);
// ∂ₜv = −∂ₓ⁴v − α∂ₓ²v − αv∂ₓv, odd, ∂ₓv(1) = ∂ₓ³v(1) = 0.
ProblemSpec register_ks(double alpha, int N = 200, double nu = 1.0);
ProblemSpec register_problem(const std::string& id, double alpha, int N, double nu);

enum class MethodPref { automatic, gershgorin, generalized };
MethodPref method_from_name(const std::string& s);
const char* method_pref_name(MethodPref m);

struct PipelineConfig {
  std::string problem = "toy";
  double alpha = 1.0;
  int N = 30;
  double nu = 1.0;
  bool stability = false;
  MethodPref method = MethodPref::automatic;
  std::optional<double> mu;       // a priori parameter; per-problem default when absent
  std::string ubar_in;            // optional Ū coefficient file
  std::string out;                // optional certificate output path
  int continuation_steps = 10;
  unsigned seed = 0;              // used only by randomized test matrices
};

double default_mu(const std::string& problem, double alpha);

struct RunRecord {
  PipelineConfig config;
  Problem problem;
  std::vector<double> ubar;
  ExistenceCertificate existence;
  bool has_stability = false;
  StabilityCertificate stability;
  AprioriBound apriori;
  std::map<std::string, double> timings;  // seconds per stage
  std::string stage;                       // last stage reached
  std::string diagnostics;
  bool success = false;
};

// Approximate zero of π^{≤N}F: continuation from α = 0 for the toy problem, a sine-shaped
// Newton seed for the KS problem.
std::vector<double> compute_ubar(const Problem& p, int continuation_steps = 10);

RunRecord run_pipeline(const PipelineConfig& cfg);

// Stability stage on an existing existence run.
StabilityCertificate prove_stability(const Problem& p, const ExistenceRun& run, MethodPref method, double mu,
                                     AprioriBound* apriori_out = nullptr);

// CSV rows "x,v,half_width" for v̄ = ℒ⁻¹Ū on a uniform grid of [-1, 1]; half_width also covers ‖ℒ⁻¹‖r.
std::string emit_plot_data(const Problem& p, const ExistenceCertificate& c, int samples);
std::string emit_plot_data(const RunRecord& rec, int samples);

nlohmann::json record_to_json(const RunRecord& rec);
void save_record(const RunRecord& rec, const std::string& path);

// Ū coefficient files: {"problem", "alpha", "N", "coeffs": [...]}.
void save_ubar(const std::string& path, const std::string& problem, double alpha, const std::vector<double>& u);
std::vector<double> load_ubar(const std::string& path);

struct VerifyResult {
  bool ok = false;
  std::vector<std::string> messages;
};

// Re-checks the serialized inequalities without recomputing any bound.
VerifyResult verify_certificate_json(const nlohmann::json& j);
VerifyResult verify_certificate(const std::string& path);

}  // namespace chebcap
