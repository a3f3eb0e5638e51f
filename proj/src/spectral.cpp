#include "qhyp/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qhyp {

namespace {

int b_exponent(const ModelParams& p, const Sector& s) { return p.N() - 1 + s.L + s.Lp; }

}  // namespace

unsigned eigenfunction_bits(const ModelParams& p, const Sector& s, double z, int jmax) {
  const double q = p.q;
  const double b = std::pow(q, b_exponent(p, s));
  const double beta = std::pow(q, 2 * (p.n + s.L));
  unsigned bits = 128;
  for (int j = 1; j <= jmax; ++j) bits = std::max(bits, terminating_pair_bits(j, b, z, beta, q * q, 128));
  return bits + 32;
}

namespace {

// Caller holds the working precision. lost_bits receives the largest gap, in bits, between the
// biggest term of a sum and its value.
std::vector<HighPrec> eigenfunction_sum(const ModelParams& p, const Sector& s, const HighPrec& Z, int jmax,
                                        long* lost_bits = nullptr) {
  detail::check_sector(s);
  if (jmax < 0) throw DomainError("eigenfunction_values: jmax must be nonnegative");
  const HighPrec q(p.q);
  const HighPrec P = q * q;
  const HighPrec b = ipow(q, b_exponent(p, s));
  const HighPrec beta = ipow(q, 2L * (p.n + s.L));

  // c_k = prod_{i<k} (1 - 2 b z P^i + b^2 P^{2i}) P / ((1 - P^{i+1}) (1 - beta P^i))
  std::vector<HighPrec> c(jmax + 1);
  c[0] = 1;
  HighPrec Pi(1);
  for (int k = 1; k <= jmax; ++k) {
    const HighPrec Pi1 = Pi * P;
    c[k] = c[k - 1] * (1 - 2 * b * Z * Pi + b * b * Pi * Pi) * P / ((1 - Pi1) * (1 - beta * Pi));
    Pi = Pi1;
  }
  // P^{-i} for i = 0..jmax
  std::vector<HighPrec> Pneg(jmax + 1);
  Pneg[0] = 1;
  for (int i = 1; i <= jmax; ++i) Pneg[i] = Pneg[i - 1] / P;

  std::vector<HighPrec> out(jmax + 1);
  long lost = 0;
  const long working = long(HighPrec::default_precision() * 3.33);
  for (int j = 0; j <= jmax; ++j) {
    HighPrec sum(0);
    HighPrec poch(1);  // (P^{-j}; P)_k
    int top = std::numeric_limits<int>::min();
    for (int k = 0; k <= j; ++k) {
      const HighPrec term = poch * c[k];
      if (term != 0) {
        int e = 0;
        frexp(term, &e);
        top = std::max(top, e);
      }
      sum += term;
      poch *= 1 - Pneg[j - k];
    }
    if (top != std::numeric_limits<int>::min()) {
      int e = 0;
      frexp(sum, &e);
      lost = std::max(lost, sum == 0 ? working : long(top) - e);
    }
    out[j] = sum;
  }
  if (lost_bits) *lost_bits = lost;
  return out;
}

// Sums at the a priori precision, then repeats with more bits until at least 64 significant
// bits survive the cancellation in every sum.
template <class MakeZ>
std::vector<double> eigenfunction_adaptive(const ModelParams& p, const Sector& s, double z, int jmax,
                                           const MakeZ& make_z) {
  constexpr unsigned max_bits = 1u << 15;
  unsigned bits = eigenfunction_bits(p, s, z, jmax);
  for (;;) {
    ScopedPrecision guard(bits);
    long lost = 0;
    const auto mp = eigenfunction_sum(p, s, make_z(), jmax, &lost);
    if (lost + 64 <= long(bits) || bits >= max_bits) {
      std::vector<double> out(mp.size());
      for (std::size_t j = 0; j < mp.size(); ++j) out[j] = to_double(mp[j]);
      return out;
    }
    bits = std::min<unsigned>(max_bits, std::max<unsigned>(2 * bits, unsigned(lost) + 128));
  }
}

}  // namespace

HighPrec exact_z(const ModelParams& p, const Sector& s, const SpectralPoint& point) {
  const HighPrec q(p.q);
  long e = 0;
  switch (point.kind) {
    case SpectralPoint::Kind::continuous:
      return HighPrec(point.z);
    case SpectralPoint::Kind::discrete:
      e = asc_a_exponent(p, s) + 2L * point.index;
      break;
    case SpectralPoint::Kind::generalized:
      e = 2L * point.index + p.N() - 1;
      break;
  }
  const HighPrec u = ipow(q, e);
  return (u + 1 / u) / 2;
}

std::vector<HighPrec> eigenfunction_values_mp(const ModelParams& p, const Sector& s, double z, int jmax,
                                              unsigned bits) {
  ScopedPrecision guard(bits);
  return eigenfunction_sum(p, s, HighPrec(z), jmax);
}

std::vector<double> eigenfunction_values(const ModelParams& p, const Sector& s, const SpectralPoint& point, int jmax) {
  if (point.kind == SpectralPoint::Kind::continuous) return eigenfunction_values(p, s, point.z, jmax);
  return eigenfunction_adaptive(p, s, point.z, jmax, [&] { return exact_z(p, s, point); });
}

std::vector<double> eigenfunction_values(const ModelParams& p, const Sector& s, double z, int jmax) {
  return eigenfunction_adaptive(p, s, z, jmax, [z] { return HighPrec(z); });
}

double eigenfunction_phi(const ModelParams& p, const Sector& s, const SpectralPoint& point, int j) {
  detail::check_index(j);
  return eigenfunction_values(p, s, point, j)[j];
}

double eigenfunction_phi_connection(const ModelParams& p, const Sector& s, const SpectralPoint& point, int j) {
  detail::check_index(j);
  const auto asc = sector_asc_params<double>(p, s);
  const double q = p.q;
  const double Q = asc_recurrence(j, point.z, asc);
  return std::pow(q, double(j) * b_exponent(p, s)) / qpoch(std::pow(q, 2 * (p.n + s.L)), q * q, j) * Q;
}

std::complex<double> c_function(const ModelParams& p, const Sector& s, std::complex<double> arg) {
  detail::check_sector(s);
  const double q = p.q, q2 = q * q;
  const double lq = std::log(q);
  auto qpow = [&](std::complex<double> w) { return std::exp(w * lq); };
  const std::complex<double> num = qpoch_infinite(qpow(arg + double(b_exponent(p, s))), q2) *
                                   qpoch_infinite(qpow(arg + double(asc_a_exponent(p, s))), q2);
  std::complex<double> den(1.0);
  for (std::complex<double> t = qpow(2.0 * arg); std::abs(t) >= 1e-16; t *= q2) {
    const std::complex<double> f = 1.0 - t;
    if (std::abs(f) < 1e-14) throw DegenerateParameters("c_function: vanishing denominator factor");
    den *= f;
  }
  return num / den;
}

double plancherel_density(const ModelParams& p, const Sector& s, double theta) {
  const double nu = theta / std::log(p.q);
  return 1.0 / std::norm(c_function(p, s, std::complex<double>(0.0, nu)));
}

SpectralMeasure<double> plancherel_measure(const ModelParams& p, const Sector& s, int quad_nodes) {
  auto mu = asc_orthogonality_measure(sector_asc_params<double>(p, s), quad_nodes);
  const double q2 = p.q * p.q;
  mu.normalization = qpoch_infinite(q2, q2) * qpoch_infinite(std::pow(p.q, 2 * (p.n + s.L)), q2);
  return mu;
}

std::vector<double> orthonormal_polynomials_P(const ModelParams& p, const Sector& s, int jmax, double z) {
  return orthonormal_polynomials_P(p, s, jmax, SpectralPoint{SpectralPoint::Kind::continuous, 0.0, 0, z});
}

std::vector<double> orthonormal_polynomials_P(const ModelParams& p, const Sector& s, int jmax,
                                              const SpectralPoint& point) {
  const auto asc = sector_asc_params<double>(p, s);
  const double q2 = p.q * p.q;
  const double ab = std::pow(p.q, 2 * (p.n + s.L));
  if (std::abs(point.z) <= 1.0) {
    auto Q = asc_recurrence_values(jmax, point.z, asc);
    for (int j = 0; j <= jmax; ++j) Q[j] /= std::sqrt(qpoch(q2, q2, j) * qpoch(ab, q2, j));
    return Q;
  }
  // Off the band the forward recurrence follows a solution that decays against one that grows,
  // losing about 2 log2(2|z|) bits per step; z must also be exact at mass points.
  ScopedPrecision guard(64 + unsigned(2.0 * jmax * std::log2(2.0 * std::abs(point.z) + 1.0)));
  const auto ah = sector_asc_params<HighPrec>(p, s);
  const auto Q = asc_recurrence_values(jmax, exact_z(p, s, point), ah);
  std::vector<double> out(jmax + 1);
  for (int j = 0; j <= jmax; ++j)
    out[j] = to_double(HighPrec(Q[j] / sqrt(qpoch(ah.base, ah.base, j) * qpoch(HighPrec(ab), ah.base, j))));
  return out;
}

double orthonormal_polynomial_P(const ModelParams& p, const Sector& s, int j, const SpectralPoint& point) {
  detail::check_index(j);
  return orthonormal_polynomials_P(p, s, j, point)[j];
}

SpectrumDescription spectrum_description(const ModelParams& p, const Sector& s) {
  detail::check_sector(s);
  SpectrumDescription d;
  d.band_min = eigenvalue_lambda_z(p, -1.0);
  d.band_max = eigenvalue_lambda_z(p, 1.0);
  for (int k = 0; k < discrete_point_count(p, s); ++k) d.discrete.push_back(eigenvalue_lambda(p, discrete_point(p, s, k)));
  return d;
}

SpectralTransform::SpectralTransform(const ModelParams& p, const Sector& s, int max_j, int quad_nodes)
    : params_(p), sector_(s), max_j_(max_j), measure_(plancherel_measure(p, s, quad_nodes)) {
  if (max_j < 0) throw DomainError("SpectralTransform: max_j must be nonnegative");
  const auto nrows = static_cast<Eigen::Index>(measure_.node_count() + measure_.discrete_count());
  phi_.resize(nrows, max_j + 1);
  for (Eigen::Index r = 0; r < nrows; ++r) {
    const auto row = eigenfunction_values(p, s, point_at(r), max_j);
    for (int j = 0; j <= max_j; ++j) phi_(r, j) = row[j];
  }
}

double SpectralTransform::z_at(Eigen::Index r) const {
  const auto nc = static_cast<Eigen::Index>(measure_.node_count());
  return r < nc ? std::cos(measure_.theta[r]) : measure_.discrete[r - nc].z;
}

SpectralPoint SpectralTransform::point_at(Eigen::Index r) const {
  const auto nc = static_cast<Eigen::Index>(measure_.node_count());
  if (r < nc) return SpectralPoint{SpectralPoint::Kind::continuous, measure_.theta[r], 0, std::cos(measure_.theta[r])};
  return discrete_point(params_, sector_, measure_.discrete[r - nc].k);
}

double SpectralTransform::weight_at(Eigen::Index r) const {
  const auto nc = static_cast<Eigen::Index>(measure_.node_count());
  return r < nc ? measure_.continuous_weight(r) : measure_.discrete_weight(r - nc);
}

}  // namespace qhyp
