#include "qhyp/checks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qhyp/laplace.hpp"

namespace qhyp::checks {

std::vector<SpectralPoint> standard_points(const ModelParams& p, const Sector& s) {
  std::vector<SpectralPoint> pts;
  for (double t : {M_PI / 6, M_PI / 3, M_PI / 2, 2 * M_PI / 3}) pts.push_back(SpectralPoint::continuous(t));
  for (int l = 1; l <= 3; ++l) pts.push_back(integer_l_point(p, l));
  for (int k = 0; k < discrete_point_count(p, s); ++k) pts.push_back(discrete_point(p, s, k));
  return pts;
}

std::vector<Quadruple> quadruples_for_sector(const Sector& s, int max_entry) {
  std::vector<Quadruple> out;
  for (int k = 0; k <= max_entry; ++k)
    for (int l = 0; l <= max_entry; ++l)
      for (int kp = 0; kp <= max_entry; ++kp)
        for (int lp = 0; lp <= max_entry; ++lp) {
          const Quadruple t{k, l, kp, lp};
          if (t.isotypic() && t.sector() == s) out.push_back(t);
        }
  return out;
}

double eigen_residual(const ModelParams& p, const Sector& s, const SpectralPoint& point, int J) {
  const auto phi = eigenfunction_values(p, s, point.z, J + 1);
  RealLatticeFunction::Map values;
  for (int j = 0; j <= J + 1; ++j) values.emplace(j, phi[j]);
  const auto Aphi = apply_three_term(p, s, RealLatticeFunction(std::move(values)));
  const double lambda = eigenvalue_lambda(p, point);
  double worst = 0.0, scale = 0.0;
  for (int j = 0; j <= J; ++j) {
    worst = std::max(worst, std::abs(Aphi(j) - lambda * phi[j]));
    scale = std::max(scale, std::abs(phi[j]));
  }
  return worst / scale;
}

double connection_residual(const ModelParams& p, const Sector& s, const SpectralPoint& point, int J) {
  const auto phi = eigenfunction_values(p, s, point.z, J);
  double worst = 0.0, scale = 0.0;
  for (int j = 0; j <= J; ++j) {
    worst = std::max(worst, std::abs(phi[j] - eigenfunction_phi_connection(p, s, point, j)));
    scale = std::max(scale, std::abs(phi[j]));
  }
  return worst / scale;
}

CrossFormResult cross_form_residual(const ModelParams& p, const std::vector<Quadruple>& quads, Lcg& rng,
                                    int functions, int support) {
  CrossFormResult r;
  if (quads.empty()) return r;
  const Sector s = quads.front().sector();
  for (int i = 0; i < functions; ++i) {
    const auto f = random_lattice_values(rng, support);
    const auto three = apply_three_term(p, s, f);
    double scale = 0.0;
    for (const auto& [j, v] : three.values()) scale = std::max(scale, std::abs(v));
    const auto first = apply_divergence_form(p, quads.front(), f);
    for (const auto& t : quads) {
      if (!(t.sector() == s)) throw DomainError("cross_form_residual: quadruples from different sectors");
      const auto div = apply_divergence_form(p, t, f);
      for (int j = 0; j <= support + 1; ++j) {
        r.cross_form = std::max(r.cross_form, std::abs(div(j) - three(j)) / scale);
        r.sector_only = std::max(r.sector_only, std::abs(div(j) - first(j)) / scale);
      }
    }
  }
  return r;
}

double symmetry_residual(const ModelParams& p, const Sector& s, int jmax) {
  ScopedPrecision guard(128);
  using F = LatticeFunction<HighPrec>;
  std::vector<F> Af;
  for (int j = 0; j <= jmax; ++j) Af.push_back(apply_three_term(p, s, F::indicator(j)));
  double worst = 0.0;
  for (int j = 0; j <= jmax; ++j)
    for (int k = 0; k <= jmax; ++k) {
      const HighPrec a = inner_product(p, s, Af[j], F::indicator(k));
      const HighPrec b = inner_product(p, s, F::indicator(j), Af[k]);
      const HighPrec scale = std::max(HighPrec(1), HighPrec(abs(a)));
      worst = std::max(worst, to_double(HighPrec(abs(a - b) / scale)));
    }
  return worst;
}

double norm_residual(const ModelParams& p, const Sector& s, int jmax) {
  ScopedPrecision guard(128);
  using F = LatticeFunction<HighPrec>;
  double worst = 0.0;
  for (int j = 0; j <= jmax; ++j) {
    const HighPrec quad = inner_product(p, s, F::indicator(j), F::indicator(j));
    const HighPrec closed = norm_f_squared<HighPrec>(p, s, j);
    worst = std::max(worst, to_double(HighPrec(abs(quad - closed) / closed)));
  }
  return worst;
}

double asc_consistency_residual(const AscParams<double>& a, Lcg& rng, int kmax, int samples) {
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double z = rng.symmetric();
    const auto Q = asc_recurrence_values(kmax, z, a);
    for (int k = 0; k <= kmax; ++k) {
      const double h = asc_hypergeometric_exact(k, z, a);
      worst = std::max(worst, std::abs(Q[k] - h) / std::max(std::abs(h), std::abs(Q[k])));
    }
  }
  return worst;
}

double orthonormality_residual(const ModelParams& p, const Sector& s, const SpectralMeasure<double>& mu, int imax) {
  Eigen::MatrixXd G = Eigen::MatrixXd::Zero(imax + 1, imax + 1);
  auto add = [&](const SpectralPoint& pt, double w) {
    const auto P = orthonormal_polynomials_P(p, s, imax, pt);
    for (int i = 0; i <= imax; ++i)
      for (int j = 0; j <= imax; ++j) G(i, j) += w * P[i] * P[j];
  };
  for (std::size_t i = 0; i < mu.node_count(); ++i)
    add(SpectralPoint{SpectralPoint::Kind::continuous, mu.theta[i], 0, std::cos(mu.theta[i])}, mu.continuous_weight(i));
  for (std::size_t k = 0; k < mu.discrete_count(); ++k) add(discrete_point(p, s, mu.discrete[k].k), mu.discrete_weight(k));
  return (G - Eigen::MatrixXd::Identity(imax + 1, imax + 1)).cwiseAbs().maxCoeff();
}

TransformResult transform_residual(const SpectralTransform& T, Lcg& rng, int functions, int support) {
  if (T.max_j() < support + 1) throw DomainError("transform_residual: transform table too short");
  const ModelParams& p = T.params();
  const Sector& s = T.sector();
  const auto& mu = T.measure();
  const Eigen::Index nc = static_cast<Eigen::Index>(mu.node_count());
  std::vector<double> lambda(T.rows());
  for (Eigen::Index r = 0; r < T.rows(); ++r) lambda[r] = eigenvalue_lambda_z(p, T.z_at(r));

  TransformResult out;
  for (int i = 0; i < functions; ++i) {
    const auto f = random_lattice_function(p, s, rng, support);
    const double norm2 = inner_product(p, s, f, f);

    const auto fhat = T.forward(f);
    out.parseval = std::max(out.parseval, std::abs(norm2 - T.norm_squared(fhat)) / norm2);

    const auto back = T.inverse(fhat);
    double rt = 0.0;
    for (int j = 0; j <= T.max_j(); ++j) rt += std::pow((back(j) - f(j)), 2) * norm_f_squared<double>(p, s, j);
    out.round_trip = std::max(out.round_trip, std::sqrt(rt / norm2));

    const auto Af = apply_three_term(p, s, f);
    const auto Afhat = T.forward(Af);
    for (Eigen::Index r = 0; r < T.rows(); ++r) {
      double sA = 0.0, sf = 0.0;
      for (const auto& [j, v] : Af.values()) sA += std::abs(v * measure_mass<double>(p, s, j) * T.phi_table()(r, j));
      for (const auto& [j, v] : f.values()) sf += std::abs(v * measure_mass<double>(p, s, j) * T.phi_table()(r, j));
      const double scale = std::max(sA, std::abs(lambda[r]) * sf);
      const double lhs = r < nc ? Afhat.nodes[r] : Afhat.discrete[r - nc];
      const double rhs = lambda[r] * (r < nc ? fhat.nodes[r] : fhat.discrete[r - nc]);
      out.multiplication = std::max(out.multiplication, std::abs(lhs - rhs) / scale);
    }
  }
  return out;
}

double density_residual(const ModelParams& p, const Sector& s, int nodes) {
  const auto a = sector_asc_params<double>(p, s);
  double worst = 0.0;
  for (int i = 0; i < nodes; ++i) {
    const double theta = M_PI * (i + 0.5) / nodes;
    const double w = asc_weight(theta, a);
    worst = std::max(worst, std::abs(plancherel_density(p, s, theta) - w) / std::abs(w));
  }
  return worst;
}

double total_mass_residual(const SpectralMeasure<double>& mu) { return std::abs(1.0 - mu.total_mass()); }

double spectrum_geometry_residual(const ModelParams& p, const Sector& s, int size) {
  const auto d = spectrum_description(p, s);
  const Eigen::VectorXd ev = truncated_eigenvalues(p, s, size);
  double worst = 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    const double x = ev(i);
    double dist = (x < d.band_min) ? d.band_min - x : (x > d.band_max ? x - d.band_max : 0.0);
    for (double lam : d.discrete) dist = std::min(dist, std::abs(x - lam));
    worst = std::max(worst, dist);
  }
  return worst;
}

OracleComparison oracle_comparison(const ModelParams& p, const Quadruple& t, const RealLatticeFunction& phi,
                                   const RealLatticeFunction& psi, int depth) {
  OracleComparison c;
  const auto r = invariant_integral_oracle(p, t, phi, psi, depth);
  c.oracle = r.value;
  c.depth = r.depth;
  c.closed_form = scalar_product_hwv(p, t, phi, psi);
  const double diff = std::abs(c.oracle - c.closed_form);
  c.rel_err = c.closed_form == 0.0 ? diff : diff / std::abs(c.closed_form);
  return c;
}

std::vector<RealLatticeFunction> oracle_test_functions() {
  return {RealLatticeFunction{{0, 1.0}}, RealLatticeFunction{{1, 1.0}}, RealLatticeFunction{{2, 1.0}},
          RealLatticeFunction{{0, 1.0}, {1, 1.0}}};
}

}  // namespace qhyp::checks
