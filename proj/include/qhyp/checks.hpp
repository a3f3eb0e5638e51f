#pragma once

#include <vector>

#include "qhyp/asc.hpp"
#include "qhyp/fock.hpp"
#include "qhyp/lattice.hpp"
#include "qhyp/random.hpp"
#include "qhyp/spectral.hpp"

// Residual measurements behind the verification battery. Each returns a
// nonnegative number to be compared against a threshold by the caller.
namespace qhyp::checks {

// theta in {pi/6, pi/3, pi/2, 2pi/3}, integer l in {1,2,3}, and every mass point.
std::vector<SpectralPoint> standard_points(const ModelParams& p, const Sector& s);

// Isotypic quadruples with entries <= max_entry that reduce to the sector.
std::vector<Quadruple> quadruples_for_sector(const Sector& s, int max_entry);

// max_{0<=j<=J} |A Phi - lambda Phi| / max_{j<=J} |Phi|
double eigen_residual(const ModelParams& p, const Sector& s, const SpectralPoint& point, int J);

// max_{j<=J} |Phi_j - connection formula| / max_{j<=J} |Phi_j|
double connection_residual(const ModelParams& p, const Sector& s, const SpectralPoint& point, int J);

struct CrossFormResult {
  double cross_form = 0.0;  // divergence vs three-term, relative to max |three-term|
  double sector_only = 0.0; // spread across quadruples of the sector
};

// `functions` random value vectors on j = 0..support, for every quadruple given.
CrossFormResult cross_form_residual(const ModelParams& p, const std::vector<Quadruple>& quads, Lcg& rng,
                                    int functions = 20, int support = 20);

// max_{j,k<=jmax} |(A f_j, f_k) - (f_j, A f_k)| / max(1, |(A f_j, f_k)|), in 128-bit arithmetic
double symmetry_residual(const ModelParams& p, const Sector& s, int jmax = 40);

// max_{j<=jmax} |(f_j, f_j) - ||f_j||^2 closed form| / ||f_j||^2, in 128-bit arithmetic
double norm_residual(const ModelParams& p, const Sector& s, int jmax = 60);

// max over k <= kmax and `samples` random z in [-1,1] of recurrence vs 3phi2, relative
double asc_consistency_residual(const AscParams<double>& a, Lcg& rng, int kmax = 15, int samples = 50);

// max_{i,j<=imax} |int P_i P_j dsigma - delta_ij|
double orthonormality_residual(const ModelParams& p, const Sector& s, const SpectralMeasure<double>& mu,
                               int imax = 10);

struct TransformResult {
  double parseval = 0.0;
  double multiplication = 0.0;
  double round_trip = 0.0;
};

// Random functions sum_{j<=support} c_j e_j; needs T.max_j() >= support + 1.
TransformResult transform_residual(const SpectralTransform& T, Lcg& rng, int functions = 50, int support = 20);

// max over theta_i = pi (i + 1/2) / nodes of | |1/c|^2 - w(cos theta) | / w
double density_residual(const ModelParams& p, const Sector& s, int nodes = 200);

// |1 - total mass of the Plancherel measure|
double total_mass_residual(const SpectralMeasure<double>& mu);

// Distance of the truncated Jacobi spectrum to band U discrete.
double spectrum_geometry_residual(const ModelParams& p, const Sector& s, int size = 400);

struct OracleComparison {
  double oracle = 0.0;
  double closed_form = 0.0;
  double rel_err = 0.0;
  int depth = 0;
};

OracleComparison oracle_comparison(const ModelParams& p, const Quadruple& t, const RealLatticeFunction& phi,
                                   const RealLatticeFunction& psi, int depth = 40);

// {f0, f1, f2, f0 + f1}
std::vector<RealLatticeFunction> oracle_test_functions();

}  // namespace qhyp::checks
