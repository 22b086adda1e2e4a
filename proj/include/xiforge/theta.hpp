#pragma once

#include "xiforge/precision.hpp"
#include "xiforge/real.hpp"

#include <vector>

namespace xiforge {

struct QuadFieldData;
struct ClassCharacter;
struct HeckeCoefficients;

/// Positive theta argument.
class ThetaArg {
 public:
  explicit ThetaArg(Real x);
  ThetaArg(double x) : ThetaArg(Real(x)) {}  // NOLINT(google-explicit-constructor)
  const Real& x() const { return x_; }

 private:
  Real x_;
};

/// psi(x) = sum_{n >= 1} exp(-pi n^2 x). Arguments below 1 go through the
/// modular relation 2 psi(1/x) + 1 = sqrt(x) (2 psi(x) + 1).
Real psi(const ThetaArg& x, const PrecisionConfig& cfg);

/// The same sum taken term by term at any x > 0; needs about sqrt(1/x) terms.
Real psi_series(const ThetaArg& x, const PrecisionConfig& cfg);

/// Psi(x) = sum_n c_chi(n) exp(-2 pi n x / sqrt|D|), the class-character
/// weighted theta series of an imaginary quadratic field. Throws
/// InsufficientCoefficients if the table is too short for cfg.target_abs_tol.
Complex psi_hecke(const Real& x, const QuadFieldData& field, const ClassCharacter& chi,
                  const HeckeCoefficients& coeffs, const PrecisionConfig& cfg);

/// Same series from precomputed character coefficients c[0..n_max].
Complex psi_hecke(const Real& x, const QuadFieldData& field, const std::vector<Complex>& c,
                  const PrecisionConfig& cfg);

/// Number of coefficients psi_hecke needs at argument x.
long psi_hecke_terms(const Real& x, const QuadFieldData& field, const PrecisionConfig& cfg);

}  // namespace xiforge
