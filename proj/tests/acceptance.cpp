// Acceptance battery: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qhyp/checks.hpp"
#include "qhyp/qhyp.hpp"

using namespace qhyp;

namespace {

struct Outcome {
  double worst = 0.0;
  std::string detail;
};

struct Criterion {
  int id;
  const char* title;
  double tolerance;
  double budget_s;
  std::function<Outcome()> run;
};

const std::vector<std::pair<int, int>> kGridNM = {{1, 2}, {2, 2}, {2, 3}};
const std::vector<double> kGridQ = {0.3, 0.5, 0.7};

std::vector<Sector> grid_sectors() {
  std::vector<Sector> out;
  for (int L = 0; L <= 3; ++L)
    for (int Lp = 0; Lp <= 3; ++Lp)
      if ((L - Lp) % 2 == 0) out.push_back({L, Lp});
  return out;
}

template <class F>
void for_grid(F&& f) {
  for (auto [n, m] : kGridNM)
    for (double q : kGridQ)
      for (const auto& s : grid_sectors()) f(ModelParams::make(q, n, m), s);
}

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

Outcome eigenvalue_equation() {
  Outcome o;
  int points = 0;
  for_grid([&](const ModelParams& p, const Sector& s) {
    for (const auto& pt : checks::standard_points(p, s)) {
      o.worst = std::max(o.worst, checks::eigen_residual(p, s, pt, 30));
      ++points;
    }
  });
  o.detail = std::to_string(points) + " spectral points";
  return o;
}

Outcome cross_form() {
  std::map<std::pair<int, int>, std::vector<Quadruple>> by_sector;
  for (int k = 0; k <= 3; ++k)
    for (int l = 0; l <= 3; ++l)
      for (int kp = 0; kp <= 3; ++kp)
        for (int lp = 0; lp <= 3; ++lp) {
          const Quadruple t{k, l, kp, lp};
          if (t.isotypic()) by_sector[{t.sector().L, t.sector().Lp}].push_back(t);
        }
  Outcome o;
  double spread = 0.0;
  Lcg rng(20);
  for (auto [n, m] : kGridNM)
    for (double q : kGridQ)
      for (const auto& [key, quads] : by_sector) {
        const auto r = checks::cross_form_residual(ModelParams::make(q, n, m), quads, rng, 20, 20);
        o.worst = std::max(o.worst, r.cross_form);
        spread = std::max(spread, r.sector_only);
      }
  // identical output across a sector is part of the criterion
  o.worst = std::max(o.worst, spread);
  o.detail = std::to_string(by_sector.size()) + " sectors, sector spread " + fmt("%.1e", spread);
  return o;
}

Outcome symmetry() {
  Outcome o;
  for_grid([&](const ModelParams& p, const Sector& s) { o.worst = std::max(o.worst, checks::symmetry_residual(p, s, 40)); });
  o.detail = "j,k <= 40";
  return o;
}

Outcome norm_closed_form() {
  Outcome o;
  for_grid([&](const ModelParams& p, const Sector& s) { o.worst = std::max(o.worst, checks::norm_residual(p, s, 60)); });
  o.detail = "j <= 60";
  return o;
}

Outcome asc_consistency() {
  Outcome o;
  Lcg rng(5);
  int params = 0;
  for_grid([&](const ModelParams& p, const Sector& s) {
    o.worst = std::max(o.worst, checks::asc_consistency_residual(sector_asc_params<double>(p, s), rng, 15, 50));
    ++params;
  });
  o.detail = std::to_string(params) + " (a, b, q^2) triples, k <= 15, 50 z each";
  return o;
}

Outcome plancherel() {
  struct Case {
    int n, m, L, Lp;
    double q;
  };
  const std::vector<Case> cases = {{2, 2, 0, 0, 0.3}, {2, 2, 0, 0, 0.5}, {2, 2, 0, 0, 0.7},
                                   {1, 3, 0, 2, 0.3}, {1, 3, 0, 2, 0.5}, {1, 3, 0, 2, 0.7}};
  double orth = 0.0, pars = 0.0, mult = 0.0, trip = 0.0;
  Lcg rng(6);
  for (const auto& c : cases) {
    const auto p = ModelParams::make(c.q, c.n, c.m);
    const Sector s{c.L, c.Lp};
    const SpectralTransform T(p, s, 21, 64);
    orth = std::max(orth, checks::orthonormality_residual(p, s, T.measure(), 10));
    const auto r = checks::transform_residual(T, rng, 50, 20);
    pars = std::max(pars, r.parseval);
    mult = std::max(mult, r.multiplication);
    trip = std::max(trip, r.round_trip);
  }
  // each part has its own tolerance; report the worst ratio to it
  Outcome o;
  o.worst = std::max({orth / 1e-8, pars / 1e-8, mult / 1e-9, trip / 1e-8});
  o.detail = "orthonormality " + fmt("%.1e", orth) + ", Parseval " + fmt("%.1e", pars) + ", multiplication " +
             fmt("%.1e", mult) + ", round trip " + fmt("%.1e", trip) + " (worst is residual/tolerance)";
  return o;
}

Outcome density_identity() {
  Outcome o;
  int sectors = 0;
  for_grid([&](const ModelParams& p, const Sector& s) {
    o.worst = std::max(o.worst, checks::density_residual(p, s, 200));
    ++sectors;
  });
  o.detail = std::to_string(sectors) + " parameter sets, 200 nodes each";
  return o;
}

Outcome fock_oracle() {
  Outcome o;
  const auto fs = checks::oracle_test_functions();
  int comparisons = 0;
  for (auto [n, m] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}})
    for (double q : {0.4, 0.6}) {
      const auto p = ModelParams::make(q, n, m);
      for (int k = 0; k <= 2; ++k)
        for (int l = 0; l <= 2; ++l)
          for (int kp = 0; kp <= 2; ++kp)
            for (int lp = 0; lp <= 2; ++lp)
              for (const auto& f : fs)
                for (const auto& g : fs) {
                  o.worst = std::max(o.worst, checks::oracle_comparison(p, Quadruple{k, l, kp, lp}, f, g).rel_err);
                  ++comparisons;
                }
    }
  double unit = 0.0;
  for (auto [n, m] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}})
    for (double q : {0.4, 0.6}) {
      const auto f0 = RealLatticeFunction::indicator(0);
      unit = std::max(unit, std::abs(invariant_integral_oracle(ModelParams::make(q, n, m), Quadruple{}, f0, f0).value - 1.0));
    }
  o.detail = std::to_string(comparisons) + " comparisons; |nu(f0) - 1| = " + fmt("%.1e", unit) + " (tol 1e-12)";
  if (unit > 1e-12) o.worst = std::max(o.worst, 1.0);
  return o;
}

int identity_depth(double q) { return int(std::ceil(std::log(1e-17) / std::log(q * q))) + 5; }

Outcome identities() {
  Outcome o;
  int n1_excluded = 0, n1_mismatch = 0;
  ScopedPrecision guard(320);
  for (double q : kGridQ) {
    const HighPrec Q(q);
    for (int n = 1; n <= 4; ++n)
      for (int k = 0; k <= 4; ++k)
        for (int l = 0; l <= 4; ++l)
          for (int t = 0; t <= 4; ++t) {
            const double e = summation_identity_1(Q, n, k, l, t).relative_error();
            if (n == 1 && std::min(k, l) > 0) {
              ++n1_excluded;
              if (e > 1e-12) ++n1_mismatch;
              continue;
            }
            o.worst = std::max(o.worst, e);
          }
    for (int m = 2; m <= 4; ++m)
      for (int kp = 0; kp <= 4; ++kp)
        for (int lp = 0; lp <= 4; ++lp)
          o.worst = std::max(o.worst, summation_identity_2(q, m, kp, lp, identity_depth(q)).relative_error());
    for (int k = 0; k <= 4; ++k)
      for (int l = 0; l <= 4; ++l)
        for (int t = 0; t <= 4; ++t) o.worst = std::max(o.worst, qbinomial_convolution(q, k, l, t).relative_error());
    for (int x = 0; x <= 4; ++x)
      for (int y = 1; y <= 4; ++y)
        o.worst = std::max(o.worst, geometric_sum_identity(q, x, y, 4 * identity_depth(q)).relative_error());
  }
  o.detail = "part 1 at n = 1 with k, l >= 1 excluded: the identity does not hold there (" +
             std::to_string(n1_mismatch) + " of " + std::to_string(n1_excluded) + " cases differ)";
  return o;
}

Outcome spectrum_geometry() {
  Outcome o;
  int mismatched = 0, with_discrete = 0;
  for_grid([&](const ModelParams& p, const Sector& s) {
    o.worst = std::max(o.worst, checks::spectrum_geometry_residual(p, s, 400));
    const bool predicted = s.L - s.Lp < p.m - p.n - 1;
    const bool found = !spectrum_description(p, s).discrete.empty();
    if (predicted != found) ++mismatched;
    if (found) ++with_discrete;
  });
  o.detail = std::to_string(with_discrete) + " parameter sets with discrete spectrum, " + std::to_string(mismatched) +
             " existence mismatches";
  if (mismatched) o.worst = std::max(o.worst, 1.0);
  return o;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "eigenvalue equation", 1e-10, 10, eigenvalue_equation},
      {2, "cross-form operator equality", 1e-10, 5, cross_form},
      {3, "symmetry", 1e-12, 2, symmetry},
      {4, "norm closed form", 1e-12, 2, norm_closed_form},
      {5, "ASC recurrence vs 3phi2", 1e-10, 2, asc_consistency},
      {6, "Plancherel (residual/tol)", 1.0, 30, plancherel},
      {7, "density identity", 1e-10, 2, density_identity},
      {8, "Fock oracle", 1e-9, 60, fock_oracle},
      {9, "summation identities", 1e-12, 10, identities},
      {10, "spectrum geometry", 1e-6, 20, spectrum_geometry},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    std::string error;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      error = e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool pass = error.empty() && std::isfinite(o.worst) && o.worst <= c.tolerance;
    if (!pass) ++failures;
    std::printf("[%s] %2d %-30s worst %.3e tol %.0e  %.2fs (budget %.0fs%s)  %s\n", pass ? "PASS" : "FAIL", c.id,
                c.title, o.worst, c.tolerance, secs, c.budget_s, secs > c.budget_s ? ", over" : "",
                error.empty() ? o.detail.c_str() : ("error: " + error).c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", int(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
