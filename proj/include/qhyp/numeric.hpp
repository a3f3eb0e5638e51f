#pragma once

#include <boost/multiprecision/mpfr.hpp>

#include <cmath>
#include <complex>
#include <limits>
#include <type_traits>

namespace qhyp {

// Variable-precision MPFR float; expression templates off so `auto` is safe.
using HighPrec = boost::multiprecision::number<
    boost::multiprecision::mpfr_float_backend<0>,
    boost::multiprecision::et_off>;

template <class T>
struct real_type {
  using type = T;
};
template <class T>
struct real_type<std::complex<T>> {
  using type = T;
};
template <class T>
using real_type_t = typename real_type<T>::type;

template <class T>
struct is_complex : std::false_type {};
template <class T>
struct is_complex<std::complex<T>> : std::true_type {};

template <class T>
T conj_value(const T& x) {
  if constexpr (is_complex<T>::value) {
    return std::conj(x);
  } else {
    return x;
  }
}

template <class T>
real_type_t<T> abs_value(const T& x) {
  using std::abs;
  return abs(x);
}

template <class T>
double to_double(const T& x) {
  if constexpr (std::is_same_v<T, HighPrec>) {
    return x.template convert_to<double>();
  } else {
    return static_cast<double>(x);
  }
}

// base^e for integer e by repeated squaring; negative e inverts.
template <class T>
T ipow(const T& base, long e) {
  T result(1);
  T b = base;
  const bool invert = e < 0;
  unsigned long n = invert ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
  while (n) {
    if (n & 1UL) result *= b;
    n >>= 1;
    if (n) b *= b;
  }
  if (invert) return T(1) / result;
  return result;
}

// Default truncation tolerance for infinite products and series.
template <class Real>
Real default_tol() {
  if constexpr (std::is_same_v<Real, HighPrec>) {
    return std::numeric_limits<HighPrec>::epsilon() / 16;
  } else {
    return Real(1e-16);
  }
}

template <class Real>
Real machine_eps() {
  return std::numeric_limits<Real>::epsilon();
}

// Sets the default HighPrec precision for the current thread; restores on exit.
class ScopedPrecision {
 public:
  explicit ScopedPrecision(unsigned bits) : saved_(HighPrec::default_precision()) {
    HighPrec::default_precision(bits_to_digits10(bits));
  }
  ~ScopedPrecision() { HighPrec::default_precision(saved_); }
  ScopedPrecision(const ScopedPrecision&) = delete;
  ScopedPrecision& operator=(const ScopedPrecision&) = delete;

  static unsigned bits_to_digits10(unsigned bits) {
    return static_cast<unsigned>(std::ceil(bits * 0.30102999566398120)) + 1;
  }

 private:
  unsigned saved_;
};

}  // namespace qhyp
