#pragma once

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/float128.hpp>

#include <complex>
#include <limits>
#include <string>

namespace xiforge {

/// Working scalar. IEEE binary128 (113-bit significand, ~33 decimal digits).
using Real = boost::multiprecision::float128;
using Complex = std::complex<Real>;

/// Largest `working_digits` the scalar can honor.
inline constexpr int kMaxWorkingDigits = std::numeric_limits<Real>::digits10;

namespace constants {
inline const Real pi = boost::math::constants::pi<Real>();
inline const Real two_pi = 2 * pi;
inline const Real half = Real(1) / 2;
inline const Real ln2 = boost::math::constants::ln_two<Real>();
inline const Real ln_pi = boost::multiprecision::log(pi);
inline const Real sqrt_pi = boost::multiprecision::sqrt(pi);
inline const Real euler_gamma = boost::math::constants::euler<Real>();
inline const Real catalan = boost::math::constants::catalan<Real>();
}  // namespace constants

inline Real real_from_string(const std::string& text) { return Real(text); }

/// Finite check for both components.
inline bool is_finite(const Complex& z) {
  return boost::multiprecision::isfinite(z.real()) && boost::multiprecision::isfinite(z.imag());
}

inline Real to_real(double x) { return Real(x); }

/// Shortest round-trip-ish rendering with `digits` significant digits.
std::string format_real(const Real& x, int digits = 20);
std::string format_complex(const Complex& z, int digits = 20);

// Complex elementary functions with explicit float128 kernels. libstdc++'s
// std::complex<T> routines fall back to generic code for non-builtin T.
Complex cexp(const Complex& z);
Complex clog(const Complex& z);
Complex cexpm1(const Complex& z);
Complex csin(const Complex& z);
Complex ccos(const Complex& z);
/// base^z for real base > 0.
Complex real_pow(const Real& base, const Complex& z);

/// A point s = sigma + i t of the complex plane.
class ComplexPoint {
 public:
  ComplexPoint(Real sigma, Real t);
  ComplexPoint(const Complex& z);  // NOLINT(google-explicit-constructor)
  ComplexPoint(const Real& sigma) : ComplexPoint(sigma, Real(0)) {}   // NOLINT
  ComplexPoint(double sigma) : ComplexPoint(Real(sigma), Real(0)) {}  // NOLINT
  ComplexPoint(int sigma) : ComplexPoint(Real(sigma), Real(0)) {}     // NOLINT

  const Real& sigma() const { return sigma_; }
  const Real& t() const { return t_; }
  Complex value() const { return {sigma_, t_}; }
  operator Complex() const { return value(); }  // NOLINT(google-explicit-constructor)

  /// The reflected point 1 - s.
  ComplexPoint reflected() const { return {1 - sigma_, -t_}; }

 private:
  Real sigma_;
  Real t_;
};

}  // namespace xiforge
