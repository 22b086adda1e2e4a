#pragma once

#include "xiforge/real.hpp"

namespace xiforge {

/// Precision policy shared by every evaluation.
///
/// `working_digits` fixes the series/term-count targets of the special
/// functions (they aim for 10^-working_digits relative accuracy), while the
/// two tolerances drive the adaptive quadratures and truncated sums.
struct PrecisionConfig {
  int working_digits = 30;
  Real target_abs_tol = Real("1e-20");
  Real target_rel_tol = Real("1e-20");
  int max_subdivisions = 4000;
  long series_trunc_max = 200000;

  /// Throws DomainError if an invariant does not hold.
  void validate() const;

  /// 10^-working_digits.
  Real epsilon() const;

  /// Copy whose tolerances are raised to at least `tol` (never tightened).
  /// Used when an identity only needs `tol` and its integrands carry
  /// evaluation error of their own.
  PrecisionConfig loosened(const Real& tol) const;

  /// Copy with both tolerances set exactly.
  PrecisionConfig with_tolerance(const Real& abs_tol, const Real& rel_tol) const;
};

/// The documented defaults (30 digits, 1e-20 tolerances).
PrecisionConfig default_precision();

}  // namespace xiforge
