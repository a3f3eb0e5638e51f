#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <vector>

#include "qhyp/asc.hpp"
#include "qhyp/errors.hpp"
#include "qhyp/laplace.hpp"
#include "qhyp/lattice.hpp"
#include "qhyp/spectral_point.hpp"

namespace qhyp {

// Exponent of a = q^{n-m+1+L-L'}.
inline int asc_a_exponent(const ModelParams& p, const Sector& s) { return p.n - p.m + 1 + s.L - s.Lp; }

// ASC parameters of the sector: a = q^{n-m+1+L-L'}, b = q^{N-1+L+L'}, base = q^2.
template <class Real = double>
AscParams<Real> sector_asc_params(const ModelParams& p, const Sector& s) {
  detail::check_sector(s);
  const Real q(p.q);
  return AscParams<Real>{ipow(q, asc_a_exponent(p, s)), ipow(q, p.N() - 1 + s.L + s.Lp), q * q};
}

inline bool has_discrete_spectrum(const ModelParams& p, const Sector& s) { return s.L - s.Lp < p.m - p.n - 1; }

// Number of k >= 0 with a q^{2k} > 1.
inline int discrete_point_count(const ModelParams& p, const Sector& s) {
  const int e = asc_a_exponent(p, s);
  return e < 0 ? (1 - e) / 2 : 0;
}

inline SpectralPoint discrete_point(const ModelParams& p, const Sector& s, int k) {
  if (k < 0 || k >= discrete_point_count(p, s)) throw DomainError("discrete_point: no mass point with this index");
  return SpectralPoint::from_u(SpectralPoint::Kind::discrete, k, std::pow(p.q, asc_a_exponent(p, s) + 2 * k));
}

// Point with e^{i theta} = q^{2l+N-1}; for l = 0 the eigenvalue is 0.
inline SpectralPoint integer_l_point(const ModelParams& p, int l) {
  return SpectralPoint::from_u(SpectralPoint::Kind::generalized, l, std::pow(p.q, 2 * l + p.N() - 1));
}

// Phi(q^{-2j}) for j = 0..jmax at spectral variable z:
//   3phi2(q^{-2j}, b u, b/u; q^{2(n+L)}, 0; q^2, q^2),  b = q^{N-1+L+L'},  z = (u + 1/u)/2.
// Summed in MPFR (the terms reach ~q^{-j^2}) with the precision raised until 64 bits survive
// the cancellation, then rounded to double.
std::vector<double> eigenfunction_values(const ModelParams& p, const Sector& s, double z, int jmax);

// Same at a spectral point; mass points and integer-l points are rebuilt exactly from q, since
// rounding z to double there excites the growing solution.
std::vector<double> eigenfunction_values(const ModelParams& p, const Sector& s, const SpectralPoint& point, int jmax);

// z of a point at the current MPFR precision.
HighPrec exact_z(const ModelParams& p, const Sector& s, const SpectralPoint& point);

// MPFR values at a caller-supplied precision in bits.
std::vector<HighPrec> eigenfunction_values_mp(const ModelParams& p, const Sector& s, double z, int jmax,
                                              unsigned bits);

// A priori precision for this z and jmax; eigenfunction_values starts here.
unsigned eigenfunction_bits(const ModelParams& p, const Sector& s, double z, int jmax);

double eigenfunction_phi(const ModelParams& p, const Sector& s, const SpectralPoint& point, int j);

// Connection formula: q^{j(N-1+L+L')} / (q^{2(n+L)}; q^2)_j * Q_j(z; a, b | q^2), recurrence-evaluated.
double eigenfunction_phi_connection(const ModelParams& p, const Sector& s, const SpectralPoint& point, int j);

// c(arg) = (q^{arg+N-1+L+L'}, q^{arg+n-m+1+L-L'}; q^2)_inf / (q^{2 arg}; q^2)_inf.
std::complex<double> c_function(const ModelParams& p, const Sector& s, std::complex<double> arg);

// |1/c(i nu)|^2 with q^{i nu} = e^{i theta}, i.e. nu = theta / ln q.
double plancherel_density(const ModelParams& p, const Sector& s, double theta);

// ASC measure of the sector scaled by (q^2; q^2)_inf (q^{2n+2L}; q^2)_inf (total mass 1).
SpectralMeasure<double> plancherel_measure(const ModelParams& p, const Sector& s, int quad_nodes = 64);

// P_j = Q_j(z; a, b | q^2) / sqrt((q^2; q^2)_j (q^{2n+2L}; q^2)_j).
double orthonormal_polynomial_P(const ModelParams& p, const Sector& s, int j, const SpectralPoint& point);
std::vector<double> orthonormal_polynomials_P(const ModelParams& p, const Sector& s, int jmax, double z);
std::vector<double> orthonormal_polynomials_P(const ModelParams& p, const Sector& s, int jmax,
                                              const SpectralPoint& point);

struct SpectrumDescription {
  double band_min = 0.0;
  double band_max = 0.0;
  std::vector<double> discrete;
};

SpectrumDescription spectrum_description(const ModelParams& p, const Sector& s);

// Spectral function sampled on the theta nodes and discrete points of a measure.
template <class Scalar = double>
struct SpectralFunction {
  std::vector<Scalar> nodes;
  std::vector<Scalar> discrete;
};

template <class Scalar>
void check_sampling(const SpectralFunction<Scalar>& fhat, const SpectralMeasure<double>& mu) {
  if (fhat.nodes.size() != mu.node_count() || fhat.discrete.size() != mu.discrete_count())
    throw DomainError("spectral function sampled on an inconsistent grid");
}

// fhat(point) = sum_j f(j) mass(j) Phi_j(point)
template <class Scalar>
Scalar forward_transform(const ModelParams& p, const Sector& s, const LatticeFunction<Scalar>& f,
                         const SpectralPoint& point) {
  if (f.empty()) return Scalar(0);
  const auto phi = eigenfunction_values(p, s, point, f.max_index());
  Scalar sum(0);
  for (const auto& [j, v] : f.values()) sum += v * Scalar(measure_mass<double>(p, s, j) * phi[j]);
  return sum;
}

// Forward and inverse transform on the grid of a Plancherel measure, with the
// eigenfunction table cached. Rows of the table are theta nodes followed by
// discrete points; columns are j = 0..max_j.
class SpectralTransform {
 public:
  SpectralTransform(const ModelParams& p, const Sector& s, int max_j, int quad_nodes = 64);

  const ModelParams& params() const { return params_; }
  const Sector& sector() const { return sector_; }
  const SpectralMeasure<double>& measure() const { return measure_; }
  const Eigen::MatrixXd& phi_table() const { return phi_; }
  int max_j() const { return max_j_; }

  // z at row r of the table
  double z_at(Eigen::Index r) const;
  SpectralPoint point_at(Eigen::Index r) const;
  double weight_at(Eigen::Index r) const;
  Eigen::Index rows() const { return phi_.rows(); }

  template <class Scalar>
  SpectralFunction<Scalar> forward(const LatticeFunction<Scalar>& f) const {
    if (!f.empty() && f.max_index() > max_j_) throw DomainError("SpectralTransform: support beyond max_j");
    std::vector<Scalar> values(rows(), Scalar(0));
    for (const auto& [j, v] : f.values()) {
      const Scalar c = v * Scalar(measure_mass<double>(params_, sector_, j));
      for (Eigen::Index r = 0; r < rows(); ++r) values[r] += c * Scalar(phi_(r, j));
    }
    return split(values);
  }

  // int fhat Phi_j dsigma
  template <class Scalar>
  Scalar inverse(const SpectralFunction<Scalar>& fhat, int j) const {
    check_sampling(fhat, measure_);
    if (j < 0 || j > max_j_) throw DomainError("SpectralTransform: j outside the cached range");
    Scalar sum(0);
    for (Eigen::Index r = 0; r < rows(); ++r) sum += value_at(fhat, r) * Scalar(weight_at(r) * phi_(r, j));
    return sum;
  }

  template <class Scalar>
  LatticeFunction<Scalar> inverse(const SpectralFunction<Scalar>& fhat) const {
    typename LatticeFunction<Scalar>::Map out;
    for (int j = 0; j <= max_j_; ++j) out.emplace(j, inverse(fhat, j));
    return LatticeFunction<Scalar>(std::move(out));
  }

  // int |fhat|^2 dsigma
  template <class Scalar>
  double norm_squared(const SpectralFunction<Scalar>& fhat) const {
    check_sampling(fhat, measure_);
    double sum = 0.0;
    for (Eigen::Index r = 0; r < rows(); ++r) sum += weight_at(r) * std::norm(std::complex<double>(value_at(fhat, r)));
    return sum;
  }

 private:
  template <class Scalar>
  SpectralFunction<Scalar> split(const std::vector<Scalar>& values) const {
    SpectralFunction<Scalar> out;
    const auto nc = static_cast<std::ptrdiff_t>(measure_.node_count());
    out.nodes.assign(values.begin(), values.begin() + nc);
    out.discrete.assign(values.begin() + nc, values.end());
    return out;
  }
  template <class Scalar>
  const Scalar& value_at(const SpectralFunction<Scalar>& fhat, Eigen::Index r) const {
    const auto nc = static_cast<Eigen::Index>(measure_.node_count());
    return r < nc ? fhat.nodes[r] : fhat.discrete[r - nc];
  }

  ModelParams params_;
  Sector sector_;
  int max_j_;
  SpectralMeasure<double> measure_;
  Eigen::MatrixXd phi_;
};

template <class Scalar>
SpectralFunction<Scalar> forward_transform(const ModelParams& p, const Sector& s, const LatticeFunction<Scalar>& f,
                                           const SpectralMeasure<double>& mu) {
  const int jmax = f.empty() ? 0 : f.max_index();
  SpectralFunction<Scalar> out;
  auto at = [&](const SpectralPoint& pt) {
    const auto phi = eigenfunction_values(p, s, pt, jmax);
    Scalar sum(0);
    for (const auto& [j, v] : f.values()) sum += v * Scalar(measure_mass<double>(p, s, j) * phi[j]);
    return sum;
  };
  for (double t : mu.theta) out.nodes.push_back(at(SpectralPoint{SpectralPoint::Kind::continuous, t, 0, std::cos(t)}));
  for (const auto& d : mu.discrete) out.discrete.push_back(at(discrete_point(p, s, d.k)));
  return out;
}

template <class Scalar>
Scalar inverse_transform(const ModelParams& p, const Sector& s, const SpectralFunction<Scalar>& fhat,
                         const SpectralMeasure<double>& mu, int j) {
  using std::cos;
  check_sampling(fhat, mu);
  detail::check_index(j);
  Scalar sum(0);
  for (std::size_t i = 0; i < mu.node_count(); ++i)
    sum += fhat.nodes[i] * Scalar(mu.continuous_weight(i) * eigenfunction_values(p, s, cos(mu.theta[i]), j)[j]);
  for (std::size_t k = 0; k < mu.discrete_count(); ++k)
    sum += fhat.discrete[k] * Scalar(mu.discrete_weight(k) * eigenfunction_values(p, s, discrete_point(p, s, mu.discrete[k].k), j)[j]);
  return sum;
}

}  // namespace qhyp
