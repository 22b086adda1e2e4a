#include "xiforge/precision.hpp"

#include "xiforge/errors.hpp"

#include <algorithm>

namespace xiforge {

namespace mp = boost::multiprecision;

void PrecisionConfig::validate() const {
  if (working_digits < 15) {
    throw DomainError("PrecisionConfig: working_digits must be at least 15");
  }
  if (working_digits > kMaxWorkingDigits) {
    throw DomainError("PrecisionConfig: working_digits above " +
                      std::to_string(kMaxWorkingDigits) + " exceeds the binary128 scalar");
  }
  if (!(target_abs_tol > 0) || !(target_rel_tol > 0)) {
    throw DomainError("PrecisionConfig: tolerances must be positive");
  }
  const Real floor = mp::pow(Real(10), -(working_digits - 5));
  if (target_abs_tol < floor || target_rel_tol < floor) {
    throw DomainError("PrecisionConfig: tolerances below 10^-(working_digits-5) are unattainable");
  }
  if (max_subdivisions < 1 || series_trunc_max < 1) {
    throw DomainError("PrecisionConfig: truncation limits must be positive");
  }
}

Real PrecisionConfig::epsilon() const { return mp::pow(Real(10), -working_digits); }

PrecisionConfig PrecisionConfig::loosened(const Real& tol) const {
  PrecisionConfig out = *this;
  out.target_abs_tol = std::max(target_abs_tol, tol);
  out.target_rel_tol = std::max(target_rel_tol, tol);
  return out;
}

PrecisionConfig PrecisionConfig::with_tolerance(const Real& abs_tol, const Real& rel_tol) const {
  PrecisionConfig out = *this;
  out.target_abs_tol = abs_tol;
  out.target_rel_tol = rel_tol;
  return out;
}

PrecisionConfig default_precision() { return PrecisionConfig{}; }

}  // namespace xiforge
