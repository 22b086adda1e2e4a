#pragma once

#include "xiforge/precision.hpp"
#include "xiforge/real.hpp"

namespace xiforge {

/// The completed zeta function at s together with the factors it is built from.
/// At s = 0 and s = 1 the product is a 0 * infinity limit; `is_limit` is set,
/// `xi_value` holds the limit 1/2 and undefined factors are NaN.
struct XiFactorization {
  ComplexPoint s;
  Complex gamma_factor;       // Gamma(s/2)
  Complex pi_factor;          // pi^(-s/2)
  Complex zeta_value;         // zeta(s)
  Complex polynomial_factor;  // s (s - 1) / 2
  Complex xi_value;
  bool is_limit = false;
};

/// Gamma(s). Reflection for Re s < 1/2, shifted Stirling series otherwise.
/// Throws PoleError at s = 0, -1, -2, ...
Complex gamma(const ComplexPoint& s, const PrecisionConfig& cfg);

/// A logarithm of Gamma(z) (not necessarily the principal branch), Re z >= 1/2.
Complex log_gamma_right(const Complex& z, const PrecisionConfig& cfg);

/// Upper incomplete gamma Gamma(s, x) for x > 0 and any s.
Complex upper_inc_gamma(const ComplexPoint& s, const Real& x, const PrecisionConfig& cfg);

/// Lower incomplete gamma gamma(s, x) for Re s > 0 and x > 0.
Complex lower_inc_gamma(const ComplexPoint& s, const Real& x, const PrecisionConfig& cfg);

/// Riemann zeta. Euler-accelerated alternating series for Re s >= 0,
/// functional-equation reflection for Re s < 0. Throws PoleError at s = 1.
Complex zeta(const ComplexPoint& s, const PrecisionConfig& cfg);

/// xi(s) = s (s - 1) / 2 * pi^(-s/2) * Gamma(s/2) * zeta(s).
XiFactorization xi(const ComplexPoint& s, const PrecisionConfig& cfg);

/// Shorthand for xi(s, cfg).xi_value.
Complex xi_value(const ComplexPoint& s, const PrecisionConfig& cfg);

/// lambda(t) = xi(1/2 + i t), real for real t. Throws ConsistencyError if the
/// computed imaginary part is not below cfg.target_abs_tol.
Real lambda_big(const Real& t, const PrecisionConfig& cfg);

}  // namespace xiforge
