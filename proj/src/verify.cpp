#include "qhyp/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "qhyp/checks.hpp"

namespace qhyp {

void validate(const RunConfig& c) {
  if (!(c.q > 0.0 && c.q < 1.0)) throw DomainError("q must lie in (0,1)");
  if (c.q > 0.95) throw DomainError("q > 0.95 is outside the supported regime");
  ModelParams::make(c.q, c.n, c.m);
  if (c.L < 0 || c.Lp < 0) throw DomainError("lambda and lambda-prime must be nonnegative");
  if (c.max_j < 1) throw DomainError("max-j must be >= 1");
  if (c.tol && !(*c.tol > 0.0)) throw DomainError("tol must be positive");
  if (c.quad_nodes < 16) throw DomainError("quad-nodes must be >= 16");
  if (c.format != "json" && c.format != "csv") throw DomainError("format must be json or csv");
}

bool VerifyReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& r) { return r.pass; });
}

const CheckResult* VerifyReport::first_failure() const {
  for (const auto& r : checks)
    if (!r.pass) return &r;
  return nullptr;
}

nlohmann::json VerifyReport::to_json(const RunConfig& c) const {
  nlohmann::json list = nlohmann::json::array();
  for (const auto& r : checks) {
    nlohmann::json e = {{"name", r.name}, {"residual", r.residual}, {"threshold", r.threshold}, {"pass", r.pass}};
    if (!r.note.empty()) e["note"] = r.note;
    list.push_back(e);
  }
  nlohmann::json out = {
      {"schema_version", 1},
      {"config",
       {{"q", c.q}, {"n", c.n}, {"m", c.m}, {"L", c.L}, {"Lp", c.Lp}, {"max_j", c.max_j}, {"quad_nodes", c.quad_nodes},
        {"seed", c.seed}}},
      {"checks", list},
      {"pass", all_pass()}};
  const auto* f = first_failure();
  out["first_failure"] = f ? nlohmann::json(f->name) : nlohmann::json(nullptr);
  return out;
}

namespace {

int identity_depth(double q) { return static_cast<int>(std::ceil(std::log(1e-17) / std::log(q * q))) + 5; }

}  // namespace

VerifyReport run_verification(const RunConfig& c) {
  validate(c);
  const ModelParams p = c.params();
  const Sector s = c.sector();
  Lcg rng(c.seed);
  VerifyReport report;

  auto add = [&](const std::string& name, double threshold, const std::function<double()>& measure,
                 std::string note = {}) {
    CheckResult r;
    r.name = name;
    r.threshold = c.tol.value_or(threshold);
    try {
      r.residual = measure();
      r.pass = std::isfinite(r.residual) && r.residual <= r.threshold;
    } catch (const std::exception& e) {
      r.residual = std::nan("");
      r.pass = false;
      note = e.what();
    }
    r.note = std::move(note);
    report.checks.push_back(std::move(r));
  };

  const auto points = checks::standard_points(p, s);
  add("eigen_residual", 1e-10, [&] {
    double w = 0.0;
    for (const auto& pt : points) w = std::max(w, checks::eigen_residual(p, s, pt, c.max_j));
    return w;
  });
  add("connection_formula", 1e-10, [&] {
    double w = 0.0;
    for (const auto& pt : points) w = std::max(w, checks::connection_residual(p, s, pt, c.max_j));
    return w;
  });

  const auto quads = checks::quadruples_for_sector(s, 3);
  const std::string no_quads = quads.empty() ? "no quadruple with entries <= 3 reduces to this sector" : "";
  checks::CrossFormResult cross;
  if (!quads.empty()) cross = checks::cross_form_residual(p, quads, rng, 20, 20);
  add("cross_form", 1e-10, [&] { return cross.cross_form; }, no_quads);
  add("sector_dependence", 1e-11, [&] { return cross.sector_only; }, no_quads);

  add("symmetry", 1e-12, [&] { return checks::symmetry_residual(p, s, 40); });
  add("norm_closed_form", 1e-12, [&] { return checks::norm_residual(p, s, 60); });
  add("asc_consistency", 1e-10, [&] { return checks::asc_consistency_residual(sector_asc_params<double>(p, s), rng); });

  const int support = std::min(20, c.max_j);
  std::optional<SpectralTransform> T;
  std::string transform_error;
  try {
    T.emplace(p, s, support + 1, c.quad_nodes);
  } catch (const std::exception& e) {
    transform_error = e.what();
  }
  auto need_T = [&] {
    if (!T) throw ConvergenceError(transform_error);
  };
  add("total_mass", 1e-10, [&] { need_T(); return checks::total_mass_residual(T->measure()); });
  add("orthonormality", 1e-8, [&] { need_T(); return checks::orthonormality_residual(p, s, T->measure(), 10); });
  checks::TransformResult tr;
  std::string tr_error;
  if (T) {
    try {
      tr = checks::transform_residual(*T, rng, 50, support);
    } catch (const std::exception& e) {
      tr_error = e.what();
    }
  }
  auto need_tr = [&] {
    need_T();
    if (!tr_error.empty()) throw ConvergenceError(tr_error);
  };
  add("parseval", 1e-8, [&] { need_tr(); return tr.parseval; });
  add("multiplication", 1e-9, [&] { need_tr(); return tr.multiplication; });
  add("round_trip", 1e-8, [&] { need_tr(); return tr.round_trip; });
  add("density_identity", 1e-10, [&] { return checks::density_residual(p, s, 200); });

  add("spectrum_geometry", 1e-6, [&] { return checks::spectrum_geometry_residual(p, s, 400); });
  add("discrete_existence", 0.0, [&] {
    const bool predicted = s.L - s.Lp < p.m - p.n - 1;
    const bool found = !spectrum_description(p, s).discrete.empty();
    return predicted == found ? 0.0 : 1.0;
  });

  if (p.n >= 2) {
    add("fock_oracle", 1e-9, [&] {
      double w = 0.0;
      const auto fs = checks::oracle_test_functions();
      for (const auto& t : checks::quadruples_for_sector(s, 2))
        for (const auto& f : fs)
          for (const auto& g : fs) w = std::max(w, checks::oracle_comparison(p, t, f, g).rel_err);
      return w;
    }, checks::quadruples_for_sector(s, 2).empty() ? "no quadruple with entries <= 2 reduces to this sector" : "");
    add("fock_normalization", 1e-12, [&] {
      const auto f0 = RealLatticeFunction::indicator(0);
      return std::abs(invariant_integral_oracle(p, Quadruple{}, f0, f0).value - 1.0);
    });
  } else {
    add("fock_oracle", 1e-9, [] { return 0.0; }, "skipped: the trace formula is not defined for n = 1");
  }

  add("summation_identity_1", 1e-12, [&] {
    ScopedPrecision guard(320);
    double w = 0.0;
    for (int k = 0; k <= 4; ++k)
      for (int l = 0; l <= 4; ++l) {
        if (p.n == 1 && std::min(k, l) > 0) continue;
        for (int t = 0; t <= 4; ++t) w = std::max(w, summation_identity_1(HighPrec(p.q), p.n, k, l, t).relative_error());
      }
    return w;
  }, p.n == 1 ? "n = 1: only cases with min(k, l) = 0 (the identity fails otherwise)" : "");
  add("summation_identity_2", 1e-12, [&] {
    double w = 0.0;
    for (int kp = 0; kp <= 4; ++kp)
      for (int lp = 0; lp <= 4; ++lp)
        w = std::max(w, summation_identity_2(p.q, p.m, kp, lp, identity_depth(p.q)).relative_error());
    return w;
  });
  add("qbinomial_convolution", 1e-12, [&] {
    double w = 0.0;
    for (int k = 0; k <= 4; ++k)
      for (int l = 0; l <= 4; ++l)
        for (int t = 0; t <= 4; ++t) w = std::max(w, qbinomial_convolution(p.q, k, l, t).relative_error());
    return w;
  });
  add("geometric_sum", 1e-12, [&] {
    double w = 0.0;
    for (int x = 0; x <= 4; ++x)
      for (int y = 1; y <= 4; ++y) w = std::max(w, geometric_sum_identity(p.q, x, y, 4 * identity_depth(p.q)).relative_error());
    return w;
  });
  return report;
}

}  // namespace qhyp
