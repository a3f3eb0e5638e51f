#include "qhyp/asc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qhyp {

unsigned terminating_pair_bits(int n, double alpha, double z, double b1, double base, unsigned guard) {
  if (n < 0) throw DomainError("terminating_pair_bits: n must be nonnegative");
  const double lb = std::log2(base);
  double log_term = 0.0;
  double log_max = 0.0;
  double bk = 1.0;
  for (int k = 0; k < n; ++k) {
    // |1 - base^{k-n}| = base^{k-n} (1 - base^{n-k}) for k < n
    const double lpoch = (k - n) * lb + std::log2(1.0 - std::pow(base, n - k));
    const double pair = std::abs(1.0 - 2.0 * alpha * z * bk + alpha * alpha * bk * bk);
    const double den = std::abs((1.0 - bk * base) * (1.0 - b1 * bk));
    log_term += lpoch + std::log2(pair) + lb - std::log2(den);
    if (!std::isfinite(log_term)) break;  // a vanishing factor ends the series
    log_max = std::max(log_max, log_term);
    bk *= base;
  }
  return guard + static_cast<unsigned>(std::ceil(log_max));
}

double asc_hypergeometric_exact(int k, double z, const AscParams<double>& p) {
  p.validate();
  const double ab = p.a * p.b;
  const double prefactor = std::abs(qpoch(ab, p.base, k)) * std::pow(p.a, -k);
  const unsigned extra = prefactor > 1.0 ? static_cast<unsigned>(std::ceil(std::log2(prefactor))) : 0U;
  ScopedPrecision guard(terminating_pair_bits(k, p.a, z, ab, p.base) + extra);
  const AscParams<HighPrec> hp{HighPrec(p.a), HighPrec(p.b), HighPrec(p.base)};
  return to_double(asc_hypergeometric(k, HighPrec(z), hp));
}

}  // namespace qhyp
