#pragma once

#include <cmath>
#include <cstdint>

#include "qhyp/lattice.hpp"

namespace qhyp {

// 64-bit linear congruential generator (Knuth's MMIX constants):
//   state <- 6364136223846793005 * state + 1442695040888963407  (mod 2^64)
// uniform() = (state >> 11) * 2^-53 in [0,1); symmetric() = 2 uniform() - 1.
class Lcg {
 public:
  explicit Lcg(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ = state_ * 6364136223846793005ULL + 1442695040888963407ULL;
    return state_;
  }
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double symmetric() { return 2.0 * uniform() - 1.0; }

 private:
  std::uint64_t state_;
};

// f = sum_{j<=max_j} c_j e_j with c_j = symmetric(), drawn in order j = 0, 1, ...
inline RealLatticeFunction random_lattice_function(const ModelParams& p, const Sector& s, Lcg& rng, int max_j) {
  RealLatticeFunction::Map values;
  for (int j = 0; j <= max_j; ++j) values.emplace(j, rng.symmetric() / std::sqrt(norm_f_squared<double>(p, s, j)));
  return RealLatticeFunction(std::move(values));
}

// Raw values f(j) = symmetric(), j = 0..max_j.
inline RealLatticeFunction random_lattice_values(Lcg& rng, int max_j) {
  RealLatticeFunction::Map values;
  for (int j = 0; j <= max_j; ++j) values.emplace(j, rng.symmetric());
  return RealLatticeFunction(std::move(values));
}

}  // namespace qhyp
