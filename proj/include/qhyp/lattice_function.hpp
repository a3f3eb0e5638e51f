#pragma once

#include <complex>
#include <initializer_list>
#include <map>
#include <utility>

#include "qhyp/errors.hpp"

namespace qhyp {

// Finitely supported function on the lattice x = q^{-2j}, j = 0, 1, 2, ...
// Keyed by the integer j; exact zeros are not stored, so equality is pointwise.
template <class Scalar>
class LatticeFunction {
 public:
  using Index = int;
  using Map = std::map<Index, Scalar>;
  using value_type = Scalar;

  LatticeFunction() = default;

  explicit LatticeFunction(Map values) {
    for (auto& [j, v] : values) {
      if (j < 0) throw DomainError("LatticeFunction: negative lattice index");
      if (v != Scalar(0)) values_.emplace(j, std::move(v));
    }
  }

  LatticeFunction(std::initializer_list<std::pair<const Index, Scalar>> init)
      : LatticeFunction(Map(init)) {}

  static LatticeFunction indicator(Index j, const Scalar& value = Scalar(1)) {
    return LatticeFunction(Map{{j, value}});
  }

  Scalar operator()(Index j) const {
    auto it = values_.find(j);
    return it == values_.end() ? Scalar(0) : it->second;
  }

  const Map& values() const { return values_; }
  bool empty() const { return values_.empty(); }
  std::size_t size() const { return values_.size(); }
  Index min_index() const { return empty() ? 0 : values_.begin()->first; }
  Index max_index() const { return empty() ? -1 : values_.rbegin()->first; }

  template <class Other>
  LatticeFunction<Other> cast() const {
    typename LatticeFunction<Other>::Map out;
    for (const auto& [j, v] : values_) out.emplace(j, Other(v));
    return LatticeFunction<Other>(std::move(out));
  }

  friend LatticeFunction operator+(const LatticeFunction& f, const LatticeFunction& g) {
    Map out = f.values_;
    for (const auto& [j, v] : g.values_) out[j] += v;
    return LatticeFunction(std::move(out));
  }
  friend LatticeFunction operator-(const LatticeFunction& f, const LatticeFunction& g) {
    Map out = f.values_;
    for (const auto& [j, v] : g.values_) out[j] -= v;
    return LatticeFunction(std::move(out));
  }
  friend LatticeFunction operator-(const LatticeFunction& f) {
    Map out;
    for (const auto& [j, v] : f.values_) out.emplace(j, -v);
    return LatticeFunction(std::move(out));
  }
  friend LatticeFunction operator*(const Scalar& a, const LatticeFunction& f) {
    Map out;
    for (const auto& [j, v] : f.values_) out.emplace(j, a * v);
    return LatticeFunction(std::move(out));
  }
  friend LatticeFunction operator*(const LatticeFunction& f, const Scalar& a) { return a * f; }
  friend bool operator==(const LatticeFunction& f, const LatticeFunction& g) {
    return f.values_ == g.values_;
  }
  friend bool operator!=(const LatticeFunction& f, const LatticeFunction& g) { return !(f == g); }

 private:
  Map values_;
};

using RealLatticeFunction = LatticeFunction<double>;
using ComplexLatticeFunction = LatticeFunction<std::complex<double>>;

}  // namespace qhyp
