#pragma once

#include <cmath>

#include "qhyp/errors.hpp"

namespace qhyp {

// A point of the spectral variable, carried through z.
//   continuous:  z = cos(theta), theta in [0, pi]
//   discrete:    z = (u + 1/u)/2 with u = a q^{2k} > 1 (mass point k)
//   generalized: z = (u + 1/u)/2 with u = q^{2l+N-1} (integer l, off the spectrum)
struct SpectralPoint {
  enum class Kind { continuous, discrete, generalized };

  Kind kind = Kind::continuous;
  double theta = 0.0;
  int index = 0;
  double z = 1.0;

  static SpectralPoint continuous(double theta) {
    if (!(theta >= 0.0 && theta <= M_PI)) throw DomainError("SpectralPoint: theta outside [0, pi]");
    return SpectralPoint{Kind::continuous, theta, 0, std::cos(theta)};
  }

  static SpectralPoint from_u(Kind kind, int index, double u) {
    if (!(u > 0.0)) throw DomainError("SpectralPoint: u must be positive");
    return SpectralPoint{kind, 0.0, index, 0.5 * (u + 1.0 / u)};
  }
};

}  // namespace qhyp
