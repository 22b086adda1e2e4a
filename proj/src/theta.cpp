#include "xiforge/theta.hpp"

#include "xiforge/errors.hpp"
#include "xiforge/quad_field.hpp"

namespace xiforge {

namespace mp = boost::multiprecision;

ThetaArg::ThetaArg(Real x) : x_(std::move(x)) {
  if (!(x_ > 0) || !mp::isfinite(x_)) throw DomainError("theta argument must be positive");
}

Real psi_series(const ThetaArg& arg, const PrecisionConfig& cfg) {
  const Real& x = arg.x();
  const Real eps = cfg.epsilon() / 10;
  Real sum = 0;
  for (long n = 1; n <= cfg.series_trunc_max; ++n) {
    const Real term = mp::exp(-constants::pi * Real(n) * Real(n) * x);
    sum += term;
    if (term <= eps * sum || term == 0) return sum;
  }
  throw ConvergenceError("psi: direct summation did not converge");
}

Real psi(const ThetaArg& arg, const PrecisionConfig& cfg) {
  const Real& x = arg.x();
  if (x >= 1) return psi_series(arg, cfg);
  const Real dual = psi_series(ThetaArg(1 / x), cfg);
  return ((2 * dual + 1) / mp::sqrt(x) - 1) / 2;
}

long psi_hecke_terms(const Real& x, const QuadFieldData& field, const PrecisionConfig& cfg) {
  if (!(x > 0)) throw DomainError("psi_hecke: requires x > 0");
  // |c(n)| <= h d(n) <= h n, so the tail past N is at most
  // h q^{N+1} (N + 1) / (1 - q)^2 with q = exp(-2 pi x / sqrt|D|).
  const Real alpha = constants::two_pi * x / mp::sqrt(Real(-field.D));
  const Real q = mp::exp(-alpha);
  const Real h = field.class_number;
  const Real target = cfg.target_abs_tol / 10;
  long n = 1;
  while (h * mp::exp(-alpha * Real(n + 1)) * Real(n + 1) / ((1 - q) * (1 - q)) >= target) {
    n = n < 16 ? n + 1 : n + n / 4;
    if (n > cfg.series_trunc_max) {
      throw ConvergenceError("psi_hecke: truncation exceeds series_trunc_max");
    }
  }
  return n;
}

Complex psi_hecke(const Real& x, const QuadFieldData& field, const std::vector<Complex>& c,
                  const PrecisionConfig& cfg) {
  const long needed = psi_hecke_terms(x, field, cfg);
  const long have = static_cast<long>(c.size()) - 1;
  if (needed > have) {
    throw InsufficientCoefficients("psi_hecke: extend coefficients to n_max >= " +
                                       std::to_string(needed) + " (have " + std::to_string(have) +
                                       ")",
                                   needed);
  }
  const Real q = mp::exp(-constants::two_pi * x / mp::sqrt(Real(-field.D)));
  Complex sum{0, 0};
  Real power = 1;
  for (long n = 1; n <= needed; ++n) {
    power *= q;
    if (c[n] != Complex(0, 0)) sum += c[n] * power;
  }
  return sum;
}

Complex psi_hecke(const Real& x, const QuadFieldData& field, const ClassCharacter& chi,
                  const HeckeCoefficients& coeffs, const PrecisionConfig& cfg) {
  return psi_hecke(x, field, character_coefficients(coeffs, chi, coeffs.n_max), cfg);
}

}  // namespace xiforge
