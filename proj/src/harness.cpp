#include "chebcap/harness.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "chebcap/numerics.hpp"

namespace chebcap {

using nlohmann::json;

ProblemSpec register_toy(double alpha, int N, double nu) {
  ProblemSpec s;
  s.id = "toy";
  s.m = 1;
  s.boundary = BoundarySpec::dirichlet();
  s.parity = Parity::none;
  s.monomials.push_back({Interval(alpha), {2, 0}});
  s.psi = CoeffSeq(1, nu);
  s.psi[0] = Interval(alpha);
  s.alpha = Interval(alpha);
  s.N = N;
  s.nu = nu;
  s.sharp = SharpBounds::dirichlet;
  return s;
}

ProblemSpec register_ks(double alpha, int N, double nu) {
  ProblemSpec s;
  s.id = "ks";
  s.m = 2;
  s.boundary = BoundarySpec::neumann_odd_biharmonic();
  s.parity = Parity::odd;
  s.monomials.push_back({Interval(-alpha), {1, 1, 0, 0}});
  s.linear.push_back({Interval(-alpha), 2});
  s.psi = CoeffSeq(1, nu, Parity::odd);
  s.alpha = Interval(alpha);
  s.N = N;
  s.nu = nu;
  s.sharp = SharpBounds::neumann_odd_fourth;
  return s;
}

ProblemSpec register_problem(const std::string& id, double alpha, int N, double nu) {
  if (id == "toy") return register_toy(alpha, N, nu);
  if (id == "ks") return register_ks(alpha, N, nu);
  throw std::invalid_argument("unknown problem '" + id + "' (expected toy or ks)");
}

MethodPref method_from_name(const std::string& s) {
  if (s == "auto") return MethodPref::automatic;
  if (s == "gershgorin") return MethodPref::gershgorin;
  if (s == "generalized") return MethodPref::generalized;
  throw std::invalid_argument("unknown method '" + s + "' (expected auto, gershgorin or generalized)");
}

const char* method_pref_name(MethodPref m) {
  switch (m) {
    case MethodPref::automatic: return "auto";
    case MethodPref::gershgorin: return "gershgorin";
    case MethodPref::generalized: return "generalized";
  }
  return "auto";
}

double default_mu(const std::string& problem, double alpha) {
  if (problem != "ks") return 0.0;
  if (alpha == 1.0) return 463.1;
  if (alpha == 100.0) return 377.0;
  return 400.0;
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::vector<double> to_std(const Eigen::VectorXd& x) { return {x.data(), x.data() + x.size()}; }

}  // namespace

std::vector<double> compute_ubar(const Problem& p, int continuation_steps) {
  const ProblemSpec& s = p.spec;
  const int N = s.N;
  const auto kmats = point_kmats(p, N);
  if (s.id == "toy") {
    const double alpha = s.alpha.mid();
    FamilyFn family = [&](double a) {
      const PointModel pm = make_point_model(register_toy(a, N, s.nu), kmats, N);
      return std::make_pair(ResidualFn([pm](const Eigen::VectorXd& x) { return pm.residual(x); }),
                            JacobianFn([pm](const Eigen::VectorXd& x) { return pm.jacobian(x); }));
    };
    return to_std(continuation(family, Eigen::VectorXd::Zero(N + 1), 0.0, alpha, continuation_steps));
  }
  if (s.id == "ks") {
    const PointModel pm = make_point_model(s, kmats, N);
    const double alpha = s.alpha.mid();
    // Seed: multiple of ∂ₓ⁴ sin(πx/2); the sign selects the branch.
    std::vector<double> seeds;
    if (alpha == 1.0) {
      seeds = {-5.0};
    } else if (alpha == 100.0) {
      seeds = {4.0};
    } else {
      seeds = {-5.0, 4.0};
    }
    const double a = std::numbers::pi / 2;
    std::string last_error = "no seed";
    for (double c0 : seeds) {
      const Eigen::VectorXd x0 = -c0 * std::pow(a, 4) * chebyshev_sine(a, N);
      try {
        NewtonResult r = newton_solve([&](const Eigen::VectorXd& x) { return pm.residual(x); },
                                      [&](const Eigen::VectorXd& x) { return pm.jacobian(x); }, x0, 1e-11, 60);
        if (r.x.lpNorm<Eigen::Infinity>() < 1e-8) {
          last_error = "Newton converged to the trivial solution";
          continue;
        }
        std::vector<double> u = to_std(r.x);
        for (int n = 0; n <= N; n += 2) u[static_cast<size_t>(n)] = 0.0;
        return u;
      } catch (const std::runtime_error& e) {
        last_error = e.what();
      }
    }
    throw std::runtime_error("compute_ubar: " + last_error);
  }
  throw std::invalid_argument("compute_ubar: no initial guess strategy for '" + s.id + "'");
}

StabilityCertificate prove_stability(const Problem& p, const ExistenceRun& run, MethodPref method, double mu,
                                     AprioriBound* apriori_out) {
  const AprioriBound ab = apriori_lambda_max(p, run.cert, mu);
  if (apriori_out) *apriori_out = ab;
  StabilityCertificate sc;
  if (method != MethodPref::generalized) {
    const GershgorinData g = gershgorin_prepare(p, run);
    std::vector<DiskEnclosure> disks;
    for (int n = 0; n <= g.N; ++n) disks.push_back(gershgorin_finite(g, n));
    const int m = p.spec.m;
    if (g.N + 1 - 2 * m > 4 * m) {
      disks.push_back(gershgorin_tail(g, g.N + 1));
      sc = count_unstable_gershgorin(disks, ab.lambda_max);
      sc.quantities["tail_radius"] = disks.back().radius;
    } else {
      sc.method = StabilityMethod::gershgorin;
      sc.disks = disks;
      sc.lambda_max = ab.lambda_max;
      sc.status = "inconclusive: tail estimate needs N >= 6m";
    }
    sc.quantities["theta"] = g.pd.theta;
    sc.quantities["Pinv_norm"] = g.pd.Pinv_norm;
    sc.quantities["P_norm"] = g.pd.P_norm;
    sc.quantities["contraction"] = g.contraction;
    sc.quantities["Z2r"] = g.Z2r;
    if (sc.success || method == MethodPref::gershgorin) {
      assign_stable_bound(sc, ab);
      return sc;
    }
  }
  const std::string first = sc.status;
  const GeneralizedData gd = generalized_prepare(p, run);
  sc = generalized_with_refinement(gd, ab.lambda_max, 2);
  if (!first.empty()) sc.status += " (gershgorin: " + first + ")";
  assign_stable_bound(sc, ab);
  return sc;
}

RunRecord run_pipeline(const PipelineConfig& cfg) {
  RunRecord rec;
  rec.config = cfg;
  const auto t_all = Clock::now();
  try {
    rec.stage = "setup";
    auto t0 = Clock::now();
    rec.problem = build_problem(register_problem(cfg.problem, cfg.alpha, cfg.N, cfg.nu));
    rec.timings["setup"] = seconds_since(t0);

    rec.stage = "approximate";
    t0 = Clock::now();
    if (!cfg.ubar_in.empty()) {
      rec.ubar = load_ubar(cfg.ubar_in);
      rec.ubar.resize(static_cast<size_t>(cfg.N + 1), 0.0);
    } else {
      rec.ubar = compute_ubar(rec.problem, cfg.continuation_steps);
    }
    rec.timings["approximate"] = seconds_since(t0);

    rec.stage = "existence";
    t0 = Clock::now();
    const ExistenceRun run =
        prove_existence(rec.problem, CoeffSeq::from_points(rec.ubar, cfg.nu, rec.problem.spec.parity));
    rec.existence = run.cert;
    rec.timings["existence"] = seconds_since(t0);
    if (!run.cert.success) {
      rec.diagnostics = "existence " + run.cert.status;
      return rec;
    }
    if (cfg.stability) {
      if (cfg.nu != 1.0) throw std::invalid_argument("stability requires nu = 1");
      rec.stage = "stability";
      t0 = Clock::now();
      const double mu = cfg.mu.value_or(default_mu(cfg.problem, cfg.alpha));
      rec.stability = prove_stability(rec.problem, run, cfg.method, mu, &rec.apriori);
      rec.has_stability = true;
      rec.timings["stability"] = seconds_since(t0);
      if (!rec.stability.success) {
        rec.diagnostics = "stability " + rec.stability.status;
        return rec;
      }
    }
    rec.stage = "done";
    rec.success = true;
  } catch (const std::exception& e) {
    rec.diagnostics = "stage " + rec.stage + " failed: " + e.what();
  }
  rec.timings["total"] = seconds_since(t_all);
  return rec;
}

std::string emit_plot_data(const Problem& p, const ExistenceCertificate& c, int samples) {
  if (samples < 2) throw std::invalid_argument("emit_plot_data: samples >= 2 required");
  const KOperator& K0 = p.K[0];
  const CoeffSeq v = K0.apply(c.Ubar);
  const Interval err = K0.norm(c.N) * c.r;
  std::ostringstream os;
  os << "x,v,half_width\n";
  char buf[128];
  for (int k = 0; k < samples; ++k) {
    const double x = (k == samples - 1) ? 1.0 : -1.0 + 2.0 * k / (samples - 1);
    const Interval val = evaluate_series(v, Interval(x));
    const double hw = rnd::add_up(val.rad_up(), err.hi);
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", x, val.mid(), hw);
    os << buf;
  }
  return os.str();
}

std::string emit_plot_data(const RunRecord& rec, int samples) {
  if (!rec.existence.success) throw std::invalid_argument("emit_plot_data: no certified steady state in record");
  return emit_plot_data(rec.problem, rec.existence, samples);
}

json record_to_json(const RunRecord& rec) {
  const PipelineConfig& c = rec.config;
  json cfg = {{"problem", c.problem},
              {"alpha", c.alpha},
              {"N", c.N},
              {"nu", c.nu},
              {"stability", c.stability},
              {"method", method_pref_name(c.method)},
              {"continuation_steps", c.continuation_steps},
              {"seed", c.seed}};
  if (c.mu) cfg["mu"] = *c.mu;
  json j = {{"schema_version", kSchemaVersion},
            {"config", cfg},
            {"problem_spec", to_json(rec.problem.spec)},
            {"existence", to_json(rec.existence)},
            {"timings", rec.timings},
            {"stage", rec.stage},
            {"diagnostics", rec.diagnostics},
            {"success", rec.success}};
  if (rec.has_stability) {
    j["stability"] = to_json(rec.stability);
    j["apriori"] = to_json(rec.apriori);
  }
  return j;
}

void save_record(const RunRecord& rec, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("save_record: cannot open " + path);
  f << record_to_json(rec).dump(1) << '\n';
}

void save_ubar(const std::string& path, const std::string& problem, double alpha, const std::vector<double>& u) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("save_ubar: cannot open " + path);
  json hex = json::array();
  for (double x : u) hex.push_back(to_hex(x));
  f << json{{"problem", problem}, {"alpha", alpha}, {"N", static_cast<int>(u.size()) - 1}, {"coeffs", hex}}.dump(1)
    << '\n';
}

std::vector<double> load_ubar(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("load_ubar: cannot open " + path);
  const json j = json::parse(f);
  std::vector<double> u;
  for (const auto& e : j.at("coeffs")) u.push_back(e.is_string() ? from_hex(e.get<std::string>()) : e.get<double>());
  return u;
}

namespace {

void check(VerifyResult& vr, bool cond, const std::string& what) {
  vr.messages.push_back(std::string(cond ? "pass: " : "FAIL: ") + what);
  if (!cond) vr.ok = false;
}

void verify_existence(VerifyResult& vr, const ExistenceCertificate& c) {
  check(vr, c.success, "existence certificate marked successful");
  const Interval z1 = max(c.parts.Z10 + c.parts.Z11, c.parts.Z12 + c.parts.Z13);
  check(vr, z1.hi <= c.Z1.hi, "Z1 dominates max(Z10 + Z11, Z12 + Z13)");
  check(vr, (c.A_norm * c.Z2raw).hi <= c.Z2.hi, "Z2 dominates max(||A0||, 1) Z2raw");
  check(vr, c.A_norm.lo >= 1.0, "A_norm >= 1");
  const Interval poly = Interval(0.5) * c.Z2 * sqr(c.r) - (Interval(1.0) - c.Z1) * c.r + c.Y;
  check(vr, c.r.lo > 0 && poly.hi < 0, "first radii condition Z2 r^2 / 2 - (1 - Z1) r + Y < 0");
  check(vr, (c.Z1 + c.Z2 * c.r).hi < 1.0, "second radii condition Z1 + Z2 r < 1");
}

void verify_stability(VerifyResult& vr, const StabilityCertificate& s, const ExistenceCertificate& c,
                      const AprioriBound& ab) {
  check(vr, s.success, "stability certificate marked successful");
  check(vr, ab.lambda_max.hi <= s.lambda_max.hi || s.method == StabilityMethod::generalized,
        "lambda_max matches the a priori bound");
  if (s.method == StabilityMethod::gershgorin) {
    const auto it = s.quantities.find("contraction");
    check(vr, it != s.quantities.end() && it->second.lo > 0 &&
                  it->second.hi <= (Interval(1.0) - (c.Z1 + c.Z2 * c.r)).hi,
          "contraction 1 - (Z1 + Z2 r) consistent with the existence bounds");
    const auto z2r = s.quantities.find("Z2r");
    check(vr, z2r != s.quantities.end() && z2r->second.hi >= (c.Z2 * c.r).hi, "disks use Z2 r for the stored r");
    const StabilityCertificate re = count_unstable_gershgorin(s.disks, s.lambda_max);
    check(vr, re.success && re.n_unstable == s.n_unstable, "disk classification reproduces n_u");
  } else {
    const auto& q = s.quantities;
    const auto l1 = q.find("lambda_max_pass1");
    const auto eb = q.find("eps_base");
    const auto gm = q.find("gamma_2m");
    if (l1 == q.end() || eb == q.end() || gm == q.end()) {
      check(vr, false, "generalized certificate carries its quantities");
      return;
    }
    check(vr, eb->second.hi >= c.parts.Z12.hi, "epsilon base covers Z12");
    const auto z2r = q.find("Z2gtNr");
    check(vr, z2r != q.end() && z2r->second.hi >= (c.Z2raw * c.r).hi, "disks use Z2 r for the stored r");
    check(vr, ab.lambda_max.hi <= l1->second.hi, "first-pass lambda_max matches the a priori bound");
    // Rebuild both passes from the stored centers.
    auto rebuild = [&](const Interval& lm) {
      GeneralizedDisks gd = generalized_delta(q, eb->second, gm->second, lm);
      for (const auto& d0 : s.disks) {
        DiskEnclosure d = d0;
        if (d.active) d.radius = Interval((gd.delta * cabs(d.center)).hi);
        gd.disks.push_back(d);
      }
      return gd;
    };
    const GeneralizedDisks g1 = rebuild(l1->second);
    const StabilityCertificate c1 = count_unstable_generalized(g1, l1->second);
    check(vr, c1.success && c1.n_unstable == s.n_unstable, "first pass reproduces n_u");
    double nl = 0.0;
    for (const auto& d : c1.unstable_enclosures) nl = std::fmax(nl, disk_abs_max(d));
    check(vr, c1.n_unstable == 0 || s.lambda_max.hi >= nl || s.lambda_max.hi >= l1->second.hi,
          "refined lambda_max covers the unstable group");
    const GeneralizedDisks g2 = rebuild(s.lambda_max);
    bool radii_ok = true;
    for (size_t k = 0; k < s.disks.size(); ++k)
      if (s.disks[k].active && s.disks[k].radius.hi < g2.disks[k].radius.hi) radii_ok = false;
    check(vr, g2.ok && radii_ok, "stored disk radii dominate delta |lambda_j|");
    const StabilityCertificate c2 = count_unstable_generalized(g2, s.lambda_max);
    check(vr, c2.success && c2.n_unstable == s.n_unstable, "final pass reproduces n_u");
  }
  if (s.stable_bound_ok) {
    StabilityCertificate t = s;
    assign_stable_bound(t, ab);
    check(vr, t.stable_bound_ok && t.stable_bound.hi <= s.stable_bound.hi, "stable spectrum bound reproduces");
  }
}

}  // namespace

VerifyResult verify_certificate_json(const json& j) {
  VerifyResult vr;
  vr.ok = true;
  try {
    check(vr, j.at("schema_version").get<int>() == kSchemaVersion, "schema version");
    const ExistenceCertificate c = existence_from_json(j.at("existence"));
    verify_existence(vr, c);
    if (j.contains("stability")) {
      const StabilityCertificate s = stability_from_json(j.at("stability"));
      const AprioriBound ab = apriori_from_json(j.at("apriori"));
      verify_stability(vr, s, c, ab);
    }
  } catch (const std::exception& e) {
    vr.ok = false;
    vr.messages.push_back(std::string("FAIL: malformed certificate: ") + e.what());
  }
  return vr;
}

VerifyResult verify_certificate(const std::string& path) {
  std::ifstream f(path);
  if (!f) return {false, {"FAIL: cannot open " + path}};
  json j;
  try {
    j = json::parse(f);
  } catch (const json::parse_error& e) {
    return {false, {std::string("FAIL: parse error: ") + e.what()}};
  }
  return verify_certificate_json(j);
}

}  // namespace chebcap
