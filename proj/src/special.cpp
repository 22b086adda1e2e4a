#include "xiforge/special.hpp"

#include "xiforge/errors.hpp"

#include <boost/math/special_functions/bernoulli.hpp>

#include <algorithm>
#include <array>
#include <limits>
#include <mutex>
#include <vector>

namespace xiforge {

namespace mp = boost::multiprecision;

namespace {

constexpr int kStirlingTerms = 24;
const Real kStirlingRadius = 22;

// B_{2k} / (2k (2k - 1)) for k = 1..kStirlingTerms.
const std::array<Real, kStirlingTerms>& stirling_coefficients() {
  static const auto table = [] {
    std::array<Real, kStirlingTerms> c{};
    for (int k = 1; k <= kStirlingTerms; ++k) {
      c[k - 1] = boost::math::bernoulli_b2n<Real>(k) / (Real(2 * k) * Real(2 * k - 1));
    }
    return c;
  }();
  return table;
}

bool is_nonpositive_integer(const Complex& z) {
  return z.imag() == 0 && z.real() <= 0 && mp::floor(z.real()) == z.real();
}

Real distance_to_nonpositive_integer(const Complex& z) {
  if (z.real() > Real("0.5")) return std::abs(z);
  const Real nearest = mp::round(z.real());
  return std::abs(z - Complex(std::min(nearest, Real(0)), 0));
}

// ln k for k < kLogTableSize.
constexpr int kLogTableSize = 8192;
const std::vector<Real>& log_table() {
  static const auto table = [] {
    std::vector<Real> v(kLogTableSize);
    for (int k = 1; k < kLogTableSize; ++k) v[k] = mp::log(Real(k));
    return v;
  }();
  return table;
}

Real log_int(long k) {
  if (k < kLogTableSize) return log_table()[k];
  return mp::log(Real(k));
}

// Smallest prime factor for k <= limit.
std::vector<int> smallest_prime_factors(int limit) {
  std::vector<int> spf(limit + 1, 0);
  for (int i = 2; i <= limit; ++i) {
    if (spf[i] != 0) continue;
    for (int j = i; j <= limit; j += i) {
      if (spf[j] == 0) spf[j] = i;
    }
  }
  return spf;
}

const std::vector<int>& spf_table() {
  static const std::vector<int> spf = smallest_prime_factors(kLogTableSize);
  return spf;
}

// k^{-s} for k = 1..n; only primes need an exponential.
std::vector<Complex> inverse_powers(const Complex& s, int n) {
  std::vector<Complex> pw(n + 1);
  pw[1] = Complex(1, 0);
  const auto& spf = spf_table();
  for (int k = 2; k <= n; ++k) {
    const int p = k < static_cast<int>(spf.size()) ? spf[k] : 0;
    if (p != 0 && p != k) {
      pw[k] = pw[p] * pw[k / p];
    } else {
      pw[k] = cexp(-s * log_int(k));
    }
  }
  return pw;
}

// Borwein's algorithm 2 for eta(s) = sum (-1)^{k-1} k^{-s}.
Complex eta_borwein(const Complex& s, const PrecisionConfig& cfg) {
  const Real t = mp::abs(s.imag());
  const Real sigma = s.real();
  const Real rate = mp::log(3 + mp::sqrt(Real(8)));
  const Real budget = cfg.working_digits * mp::log(Real(10)) + constants::pi * t / 2 +
                      mp::log(1 + 2 * t) + mp::abs(sigma) * mp::log(Real(4)) + 4;
  long n = static_cast<long>(mp::ceil(budget / rate)) + 2;
  if (n > cfg.series_trunc_max) {
    throw ConvergenceError("zeta: required series length " + std::to_string(n) +
                           " exceeds series_trunc_max");
  }
  std::vector<Real> d(n + 1);
  Real term = Real(1) / n;  // (n - 1)! 4^0 / (n! 0!)
  Real acc = term;
  d[0] = n * acc;
  for (long i = 1; i <= n; ++i) {
    term *= Real(4) * (n + i - 1) * (n - i + 1) / (Real(2 * i) * Real(2 * i - 1));
    acc += term;
    d[i] = n * acc;
  }
  const auto pw = inverse_powers(s, static_cast<int>(n));
  Complex sum{0, 0};
  for (long k = 0; k < n; ++k) {
    const Complex v = (d[k] - d[n]) * pw[k + 1];
    if (k % 2 == 0) {
      sum += v;
    } else {
      sum -= v;
    }
  }
  return -sum / d[n];
}

Complex zeta_right(const Complex& s, const PrecisionConfig& cfg) {
  // 1 - 2^{1-s} without cancellation near s = 1.
  const Complex denom = -cexpm1((Complex(1, 0) - s) * constants::ln2);
  return eta_borwein(s, cfg) / denom;
}

// Modified Lentz evaluation of Legendre's continued fraction for Gamma(s, x).
Complex upper_gamma_continued_fraction(const Complex& s, const Real& x, const PrecisionConfig& cfg) {
  const Real tiny = Real("1e-4000");
  const Real eps = cfg.epsilon() / 10;
  Complex b = Complex(x + 1, 0) - s;
  Complex c = Complex(1 / tiny, 0);
  Complex d = Complex(1, 0) / b;
  Complex h = d;
  for (long i = 1; i <= cfg.series_trunc_max; ++i) {
    const Complex an = -Real(i) * (Complex(Real(i), 0) - s);
    b += Real(2);
    d = an * d + b;
    if (std::abs(d) < tiny) d = Complex(tiny, 0);
    c = b + an / c;
    if (std::abs(c) < tiny) c = Complex(tiny, 0);
    d = Complex(1, 0) / d;
    const Complex delta = d * c;
    h *= delta;
    if (std::abs(delta - Complex(1, 0)) < eps) {
      return cexp(s * mp::log(x) - x) * h;
    }
  }
  throw ConvergenceError("upper incomplete gamma: continued fraction did not converge");
}

// Power series gamma(s, x) = x^s e^{-x} sum_k x^k / (s (s+1) ... (s+k)).
Complex lower_gamma_series(const Complex& s, const Real& x, const PrecisionConfig& cfg) {
  const Real eps = cfg.epsilon() / 10;
  Complex term = Complex(1, 0) / s;
  Complex sum = term;
  for (long k = 1; k <= cfg.series_trunc_max; ++k) {
    term *= x / (s + Real(k));
    sum += term;
    if (Real(k) > x && std::abs(term) < eps * std::abs(sum)) {
      return cexp(s * mp::log(x) - x) * sum;
    }
  }
  throw ConvergenceError("lower incomplete gamma: power series did not converge");
}

}  // namespace

Complex log_gamma_right(const Complex& z, const PrecisionConfig&) {
  // Shift so that |w| >= kStirlingRadius, then Stirling with kStirlingTerms terms.
  Complex w = z;
  Complex product{1, 0};
  while (std::abs(w) < kStirlingRadius) {
    product *= w;
    w += Real(1);
  }
  const auto& coeff = stirling_coefficients();
  const Complex inv = Complex(1, 0) / w;
  const Complex inv2 = inv * inv;
  Complex series{0, 0};
  Complex power = inv;
  for (int k = 0; k < kStirlingTerms; ++k) {
    series += coeff[k] * power;
    power *= inv2;
  }
  const Complex log_w = clog(w);
  Complex result = (w - constants::half) * log_w - w + mp::log(constants::two_pi) / 2 + series;
  if (product != Complex(1, 0)) result -= clog(product);
  return result;
}

Complex gamma(const ComplexPoint& s, const PrecisionConfig& cfg) {
  const Complex z = s.value();
  if (is_nonpositive_integer(z)) {
    throw PoleError("gamma: pole at s = " + format_real(z.real(), 6), format_real(z.real(), 6));
  }
  if (z.real() < constants::half) {
    const Complex one_minus = Complex(1, 0) - z;
    return constants::pi / (csin(constants::pi * z) * cexp(log_gamma_right(one_minus, cfg)));
  }
  return cexp(log_gamma_right(z, cfg));
}

Complex upper_inc_gamma(const ComplexPoint& s, const Real& x, const PrecisionConfig& cfg) {
  if (!(x > 0)) throw DomainError("upper incomplete gamma: requires x > 0");
  const Complex z = s.value();
  const bool left = z.real() <= 0;
  const bool near_pole = distance_to_nonpositive_integer(z) < Real("0.1");
  if (x > std::abs(z) + 1 || (left && (x >= constants::half || near_pole))) {
    return upper_gamma_continued_fraction(z, x, cfg);
  }
  return gamma(s, cfg) - lower_gamma_series(z, x, cfg);
}

Complex lower_inc_gamma(const ComplexPoint& s, const Real& x, const PrecisionConfig& cfg) {
  if (!(x > 0)) throw DomainError("lower incomplete gamma: requires x > 0");
  const Complex z = s.value();
  if (!(z.real() > 0)) throw DomainError("lower incomplete gamma: requires Re s > 0");
  if (x > std::abs(z) + 1) {
    return gamma(s, cfg) - upper_gamma_continued_fraction(z, x, cfg);
  }
  return lower_gamma_series(z, x, cfg);
}

Complex zeta(const ComplexPoint& s, const PrecisionConfig& cfg) {
  const Complex z = s.value();
  if (z == Complex(1, 0)) throw PoleError("zeta: pole at s = 1", "1");
  if (z.real() >= 0) return zeta_right(z, cfg);
  // zeta(s) = 2^s pi^{s-1} sin(pi s / 2) Gamma(1 - s) zeta(1 - s)
  const Complex reflected = Complex(1, 0) - z;
  const Complex factor = cexp(z * constants::ln2 + (z - Real(1)) * constants::ln_pi) *
                         csin(constants::pi * z / Real(2));
  return factor * cexp(log_gamma_right(reflected, cfg)) * zeta_right(reflected, cfg);
}

XiFactorization xi(const ComplexPoint& s, const PrecisionConfig& cfg) {
  const Complex z = s.value();
  XiFactorization out{s, {}, {}, {}, {}, {}, false};
  out.pi_factor = cexp(-z * constants::ln_pi / Real(2));
  out.polynomial_factor = z * (z - Real(1)) / Real(2);
  if (z == Complex(0, 0) || z == Complex(1, 0)) {
    const Real nan = std::numeric_limits<Real>::quiet_NaN();
    out.is_limit = true;
    out.xi_value = Complex(constants::half, 0);
    out.gamma_factor = z == Complex(0, 0) ? Complex(nan, nan) : Complex(constants::sqrt_pi, 0);
    out.zeta_value = z == Complex(0, 0) ? Complex(-constants::half, 0) : Complex(nan, nan);
    return out;
  }
  out.gamma_factor = gamma(ComplexPoint(z / Real(2)), cfg);
  out.zeta_value = zeta(s, cfg);
  out.xi_value = out.polynomial_factor * out.pi_factor * out.gamma_factor * out.zeta_value;
  return out;
}

Complex xi_value(const ComplexPoint& s, const PrecisionConfig& cfg) { return xi(s, cfg).xi_value; }

Real lambda_big(const Real& t, const PrecisionConfig& cfg) {
  const Complex v = xi_value(ComplexPoint(constants::half, t), cfg);
  if (!(mp::abs(v.imag()) < cfg.target_abs_tol)) {
    throw ConsistencyError("lambda: xi(1/2 + it) has imaginary part " + format_real(v.imag(), 6) +
                           " at t = " + format_real(t, 10));
  }
  return v.real();
}

}  // namespace xiforge
