#include "xiforge/real.hpp"

#include "xiforge/errors.hpp"

#include <iomanip>
#include <sstream>

namespace xiforge {

namespace mp = boost::multiprecision;

std::string format_real(const Real& x, int digits) {
  std::ostringstream out;
  out << std::setprecision(digits) << x;
  return out.str();
}

std::string format_complex(const Complex& z, int digits) {
  std::ostringstream out;
  out << std::setprecision(digits) << z.real() << (z.imag() < 0 ? " - " : " + ")
      << mp::abs(z.imag()) << "i";
  return out.str();
}

Complex cexp(const Complex& z) {
  const Real m = mp::exp(z.real());
  if (z.imag() == 0) return {m, 0};
  return {m * mp::cos(z.imag()), m * mp::sin(z.imag())};
}

Complex clog(const Complex& z) {
  return {mp::log(mp::hypot(z.real(), z.imag())), mp::atan2(z.imag(), z.real())};
}

Complex cexpm1(const Complex& z) {
  const Real& x = z.real();
  const Real& y = z.imag();
  const Real half_sin = mp::sin(y / 2);
  const Real re = mp::expm1(x) * mp::cos(y) - 2 * half_sin * half_sin;
  const Real im = mp::exp(x) * mp::sin(y);
  return {re, im};
}

Complex csin(const Complex& z) {
  const Real& x = z.real();
  const Real& y = z.imag();
  return {mp::sin(x) * mp::cosh(y), mp::cos(x) * mp::sinh(y)};
}

Complex ccos(const Complex& z) {
  const Real& x = z.real();
  const Real& y = z.imag();
  return {mp::cos(x) * mp::cosh(y), -mp::sin(x) * mp::sinh(y)};
}

Complex real_pow(const Real& base, const Complex& z) {
  if (base <= 0) throw DomainError("real_pow: base must be positive");
  return cexp(z * mp::log(base));
}

ComplexPoint::ComplexPoint(Real sigma, Real t) : sigma_(std::move(sigma)), t_(std::move(t)) {
  if (!mp::isfinite(sigma_) || !mp::isfinite(t_)) {
    throw DomainError("ComplexPoint: components must be finite");
  }
}

ComplexPoint::ComplexPoint(const Complex& z) : ComplexPoint(z.real(), z.imag()) {}

}  // namespace xiforge
