#include "chebcap/serialize.hpp"

#include <stdexcept>

namespace chebcap {

using nlohmann::json;

json to_json(const Interval& x) { return json::array({to_hex(x.lo), to_hex(x.hi)}); }

Interval interval_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) throw std::invalid_argument("interval: expected [lo, hi]");
  auto endpoint = [](const json& e) { return e.is_string() ? from_hex(e.get<std::string>()) : e.get<double>(); };
  return Interval(endpoint(j[0]), endpoint(j[1]));
}

namespace {

json intervals(const std::vector<Interval>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

std::vector<Interval> intervals_from(const json& j) {
  std::vector<Interval> v;
  for (const auto& e : j) v.push_back(interval_from_json(e));
  return v;
}

json quantities(const std::map<std::string, Interval>& q) {
  json o = json::object();
  for (const auto& [k, v] : q) o[k] = to_json(v);
  return o;
}

std::map<std::string, Interval> quantities_from(const json& j) {
  std::map<std::string, Interval> q;
  for (auto it = j.begin(); it != j.end(); ++it) q[it.key()] = interval_from_json(it.value());
  return q;
}

const char* sharp_name(SharpBounds s) {
  switch (s) {
    case SharpBounds::none: return "none";
    case SharpBounds::dirichlet: return "dirichlet";
    case SharpBounds::neumann_odd_fourth: return "neumann_odd_fourth";
  }
  return "none";
}

SharpBounds sharp_from(const std::string& s) {
  if (s == "none") return SharpBounds::none;
  if (s == "dirichlet") return SharpBounds::dirichlet;
  if (s == "neumann_odd_fourth") return SharpBounds::neumann_odd_fourth;
  throw std::invalid_argument("unknown sharp bound set '" + s + "'");
}

DiskKind kind_from(const std::string& s) {
  if (s == "gershgorin_finite") return DiskKind::gershgorin_finite;
  if (s == "gershgorin_tail") return DiskKind::gershgorin_tail;
  if (s == "generalized") return DiskKind::generalized;
  throw std::invalid_argument("unknown disk kind '" + s + "'");
}

}  // namespace

json to_json(const CoeffSeq& u) {
  return {{"nu", u.nu}, {"parity", parity_name(u.parity)}, {"order", u.basis_order}, {"coeffs", intervals(u.coeffs)}};
}

CoeffSeq coeffseq_from_json(const json& j) {
  CoeffSeq u;
  u.nu = j.at("nu").get<double>();
  u.parity = parity_from_name(j.at("parity").get<std::string>());
  u.basis_order = j.at("order").get<int>();
  u.coeffs = intervals_from(j.at("coeffs"));
  return u;
}

json to_json(const ProblemSpec& s) {
  json mono = json::array();
  for (const auto& m : s.monomials) mono.push_back({{"coef", to_json(m.coef)}, {"exps", m.exps}});
  json lin = json::array();
  for (const auto& l : s.linear) lin.push_back({{"coef", to_json(l.coef)}, {"i", l.i}});
  return {{"id", s.id},
          {"m", s.m},
          {"boundary", {{"m", s.boundary.m}, {"left", s.boundary.left}, {"right", s.boundary.right}}},
          {"parity", parity_name(s.parity)},
          {"monomials", mono},
          {"linear", lin},
          {"psi", to_json(s.psi)},
          {"alpha", to_json(s.alpha)},
          {"N", s.N},
          {"nu", s.nu},
          {"sharp", sharp_name(s.sharp)}};
}

ProblemSpec problemspec_from_json(const json& j) {
  ProblemSpec s;
  s.id = j.at("id").get<std::string>();
  s.m = j.at("m").get<int>();
  s.boundary.m = j.at("boundary").at("m").get<int>();
  s.boundary.left = j.at("boundary").at("left").get<std::vector<std::vector<double>>>();
  s.boundary.right = j.at("boundary").at("right").get<std::vector<std::vector<double>>>();
  s.parity = parity_from_name(j.at("parity").get<std::string>());
  for (const auto& m : j.at("monomials"))
    s.monomials.push_back({interval_from_json(m.at("coef")), m.at("exps").get<std::vector<int>>()});
  for (const auto& l : j.at("linear")) s.linear.push_back({interval_from_json(l.at("coef")), l.at("i").get<int>()});
  s.psi = coeffseq_from_json(j.at("psi"));
  s.alpha = interval_from_json(j.at("alpha"));
  s.N = j.at("N").get<int>();
  s.nu = j.at("nu").get<double>();
  s.sharp = sharp_from(j.at("sharp").get<std::string>());
  return s;
}

json to_json(const ExistenceCertificate& c) {
  return {{"problem", c.problem},
          {"alpha", to_json(c.alpha)},
          {"N", c.N},
          {"nu", c.nu},
          {"parity", parity_name(c.parity)},
          {"Ubar", to_json(c.Ubar)},
          {"Y", to_json(c.Y)},
          {"Z1", to_json(c.Z1)},
          {"Z2", to_json(c.Z2)},
          {"r", to_json(c.r)},
          {"Z1_parts",
           {{"Z10", to_json(c.parts.Z10)},
            {"Z11", to_json(c.parts.Z11)},
            {"Z12", to_json(c.parts.Z12)},
            {"Z13", to_json(c.parts.Z13)}}},
          {"Z2raw", to_json(c.Z2raw)},
          {"A_norm", to_json(c.A_norm)},
          {"K_norms", intervals(c.K_norms)},
          {"eta_next", intervals(c.eta_next)},
          {"head_next", intervals(c.head_next)},
          {"success", c.success},
          {"status", c.status}};
}

ExistenceCertificate existence_from_json(const json& j) {
  ExistenceCertificate c;
  c.problem = j.at("problem").get<std::string>();
  c.alpha = interval_from_json(j.at("alpha"));
  c.N = j.at("N").get<int>();
  c.nu = j.at("nu").get<double>();
  c.parity = parity_from_name(j.at("parity").get<std::string>());
  c.Ubar = coeffseq_from_json(j.at("Ubar"));
  c.Y = interval_from_json(j.at("Y"));
  c.Z1 = interval_from_json(j.at("Z1"));
  c.Z2 = interval_from_json(j.at("Z2"));
  c.r = interval_from_json(j.at("r"));
  const json& z = j.at("Z1_parts");
  c.parts.Z10 = interval_from_json(z.at("Z10"));
  c.parts.Z11 = interval_from_json(z.at("Z11"));
  c.parts.Z12 = interval_from_json(z.at("Z12"));
  c.parts.Z13 = interval_from_json(z.at("Z13"));
  c.parts.Z1 = c.Z1;
  c.Z2raw = interval_from_json(j.at("Z2raw"));
  c.A_norm = interval_from_json(j.at("A_norm"));
  c.K_norms = intervals_from(j.at("K_norms"));
  c.eta_next = intervals_from(j.at("eta_next"));
  c.head_next = intervals_from(j.at("head_next"));
  c.success = j.at("success").get<bool>();
  c.status = j.at("status").get<std::string>();
  return c;
}

json to_json(const DiskEnclosure& d) {
  return {{"index", d.index},
          {"kind", disk_kind_name(d.kind)},
          {"active", d.active},
          {"center_re", to_json(d.center.re)},
          {"center_im", to_json(d.center.im)},
          {"radius", to_json(d.radius)}};
}

DiskEnclosure disk_from_json(const json& j) {
  DiskEnclosure d;
  d.index = j.at("index").get<int>();
  d.kind = kind_from(j.at("kind").get<std::string>());
  d.active = j.at("active").get<bool>();
  d.center = CInterval(interval_from_json(j.at("center_re")), interval_from_json(j.at("center_im")));
  d.radius = interval_from_json(j.at("radius"));
  return d;
}

json to_json(const StabilityCertificate& s) {
  json disks = json::array();
  for (const auto& d : s.disks) disks.push_back(to_json(d));
  json enc = json::array();
  for (const auto& d : s.unstable_enclosures) enc.push_back(to_json(d));
  return {{"method", method_name(s.method)},
          {"disks", disks},
          {"lambda_max", to_json(s.lambda_max)},
          {"mu", to_json(s.mu)},
          {"n_unstable", s.n_unstable},
          {"unstable_enclosures", enc},
          {"unstable_indices", s.unstable_indices},
          {"rho_stable", to_json(s.rho_stable)},
          {"min_re_stable", to_json(s.min_re_stable)},
          {"max_re_stable", to_json(s.max_re_stable)},
          {"stable_bound", to_json(s.stable_bound)},
          {"stable_bound_ok", s.stable_bound_ok},
          {"quantities", quantities(s.quantities)},
          {"delta_history", s.delta_history},
          {"success", s.success},
          {"status", s.status},
          {"offending", s.offending}};
}

StabilityCertificate stability_from_json(const json& j) {
  StabilityCertificate s;
  const std::string m = j.at("method").get<std::string>();
  if (m == "gershgorin") {
    s.method = StabilityMethod::gershgorin;
  } else if (m == "generalized") {
    s.method = StabilityMethod::generalized;
  } else {
    throw std::invalid_argument("unknown stability method '" + m + "'");
  }
  for (const auto& d : j.at("disks")) s.disks.push_back(disk_from_json(d));
  s.lambda_max = interval_from_json(j.at("lambda_max"));
  s.mu = interval_from_json(j.at("mu"));
  s.n_unstable = j.at("n_unstable").get<int>();
  for (const auto& d : j.at("unstable_enclosures")) s.unstable_enclosures.push_back(disk_from_json(d));
  s.unstable_indices = j.at("unstable_indices").get<std::vector<int>>();
  s.rho_stable = interval_from_json(j.at("rho_stable"));
  s.min_re_stable = interval_from_json(j.at("min_re_stable"));
  s.max_re_stable = interval_from_json(j.at("max_re_stable"));
  s.stable_bound = interval_from_json(j.at("stable_bound"));
  s.stable_bound_ok = j.at("stable_bound_ok").get<bool>();
  s.quantities = quantities_from(j.at("quantities"));
  s.delta_history = j.at("delta_history").get<std::vector<double>>();
  s.success = j.at("success").get<bool>();
  s.status = j.at("status").get<std::string>();
  s.offending = j.at("offending").get<int>();
  return s;
}

json to_json(const AprioriBound& a) {
  return {{"problem", a.problem},
          {"mu", to_json(a.mu)},
          {"lambda_max", to_json(a.lambda_max)},
          {"self_adjoint", a.self_adjoint},
          {"v_sup", to_json(a.v_sup)},
          {"dv_sup", to_json(a.dv_sup)},
          {"lemma_lambda_max", to_json(a.lemma_lambda_max)},
          {"energy_lambda_max", to_json(a.energy_lambda_max)},
          {"im_bound_mu", to_json(a.im_bound_mu)},
          {"source", a.source}};
}

AprioriBound apriori_from_json(const json& j) {
  AprioriBound a;
  a.problem = j.at("problem").get<std::string>();
  a.mu = interval_from_json(j.at("mu"));
  a.lambda_max = interval_from_json(j.at("lambda_max"));
  a.self_adjoint = j.at("self_adjoint").get<bool>();
  a.v_sup = interval_from_json(j.at("v_sup"));
  a.dv_sup = interval_from_json(j.at("dv_sup"));
  a.lemma_lambda_max = interval_from_json(j.at("lemma_lambda_max"));
  a.energy_lambda_max = interval_from_json(j.at("energy_lambda_max"));
  a.im_bound_mu = interval_from_json(j.at("im_bound_mu"));
  a.source = j.at("source").get<std::string>();
  return a;
}

}  // namespace chebcap
