#pragma once

#include "xiforge/precision.hpp"
#include "xiforge/quad_field.hpp"
#include "xiforge/quadrature.hpp"
#include "xiforge/real.hpp"

#include <string>

namespace xiforge {

enum class OmegaRoute { series, integral_rep, inc_gamma_expansion };

std::string to_string(OmegaRoute route);

/// Omega_K(s, chi) = (2 pi)^{-s} Gamma(s) |D|^{s/2} L_K(s, chi) from one route.
struct OmegaValue {
  ComplexPoint s;
  Complex omega;
  OmegaRoute route;
  /// Error estimate of the route (quadrature error or truncation bound).
  Real error_estimate = 0;
};

/// A Hecke L-function instance: field, class character and its coefficients.
/// The character-weighted coefficients c_chi(n) are computed once.
class HeckeData {
 public:
  HeckeData(QuadFieldData field, ClassCharacter chi, HeckeCoefficients coeffs);

  const QuadFieldData& field() const { return field_; }
  const ClassCharacter& chi() const { return chi_; }
  const HeckeCoefficients& coeffs() const { return coeffs_; }
  /// c_chi(n) for n = 0..n_max.
  const std::vector<Complex>& c() const { return c_; }
  long n_max() const { return coeffs_.n_max; }

  /// 2 pi n / sqrt|D|.
  Real beta(long n) const { return beta1_ * Real(n); }
  /// h delta(chi) / w, the residue of Omega at s = 1.
  Real residue() const { return residue_; }

 private:
  QuadFieldData field_;
  ClassCharacter chi_;
  HeckeCoefficients coeffs_;
  std::vector<Complex> c_;
  Real beta1_;
  Real residue_;
};

/// Direct Dirichlet series with its truncation bound.
struct LSeriesValue {
  Complex value;
  /// Rigorous bound on |value - L|.
  Real tail_bound = 0;
  /// Heuristic size of the actual truncation error, usually far below tail_bound.
  Real tail_estimate = 0;
  long terms = 0;
};

/// sum_n c_chi(n) n^{-s} for Re s > 1 over the available coefficients. For the
/// trivial character the smooth part of the tail, residue-density times the
/// integral of x^{-s}, is added back. Throws DomainError for Re s <= 1.
LSeriesValue l_series(const ComplexPoint& s, const HeckeData& data, const PrecisionConfig& cfg);

/// (2 pi)^{-s} Gamma(s) |D|^{s/2} * l_series(s); error_estimate scales tail_estimate.
OmegaValue omega_from_series(const ComplexPoint& s, const HeckeData& data,
                             const PrecisionConfig& cfg);

enum class IntegralRepMode {
  quadrature,  // integral over [1, inf) of (t^{s-1} + t^{-s}) Psi(t) by quadrature
  analytic     // the same integral reduced termwise to incomplete gammas
};

/// Hecke's integral representation
///   h delta / (w s (s - 1)) + int_1^inf (t^{s-1} + t^{-s}) Psi(t) dt.
/// Throws PoleError at s in {0, 1} for the trivial character.
OmegaValue omega_integral_rep(const ComplexPoint& s, const HeckeData& data,
                              const PrecisionConfig& cfg,
                              IntegralRepMode mode = IntegralRepMode::quadrature);

/// Sum over ideals of chi(a) (sqrt|D| / (2 pi N a))^s Gamma(s, 2 pi N a / sqrt|D|),
/// i.e. the [1, inf) Mellin piece of Psi, with its truncation bound.
struct IncGammaSum {
  Complex value;
  Real tail_bound = 0;
  long terms = 0;
};
IncGammaSum hecke_inc_gamma_sum(const ComplexPoint& s, const HeckeData& data,
                                const PrecisionConfig& cfg);

/// Incomplete-gamma expansion of Omega: pole term plus the sum above at s and 1 - s.
OmegaValue omega_inc_gamma_expansion(const ComplexPoint& s, const HeckeData& data,
                                     const PrecisionConfig& cfg);

// Overloads that build the HeckeData on the fly; prefer the HeckeData forms in loops.
inline Complex l_series(const ComplexPoint& s, const QuadFieldData& field,
                        const ClassCharacter& chi, const HeckeCoefficients& coeffs,
                        const PrecisionConfig& cfg) {
  return l_series(s, HeckeData(field, chi, coeffs), cfg).value;
}
inline OmegaValue omega_integral_rep(const ComplexPoint& s, const QuadFieldData& field,
                                     const ClassCharacter& chi, const HeckeCoefficients& coeffs,
                                     const PrecisionConfig& cfg) {
  return omega_integral_rep(s, HeckeData(field, chi, coeffs), cfg);
}
inline OmegaValue omega_inc_gamma_expansion(const ComplexPoint& s, const QuadFieldData& field,
                                            const ClassCharacter& chi,
                                            const HeckeCoefficients& coeffs,
                                            const PrecisionConfig& cfg) {
  return omega_inc_gamma_expansion(s, HeckeData(field, chi, coeffs), cfg);
}

/// pi^{-s/2} sum_{n >= 1} n^{-s} Gamma(s/2, pi n^2), truncated by its tail bound.
Complex riemann_inc_gamma_sum(const ComplexPoint& s, const PrecisionConfig& cfg);

/// 1/(s(s-1)) + riemann_inc_gamma_sum(s) + riemann_inc_gamma_sum(1 - s), which
/// equals pi^{-s/2} Gamma(s/2) zeta(s). Throws PoleError at s in {0, 1}.
Complex xi_inc_gamma_expansion(const ComplexPoint& s, const PrecisionConfig& cfg);

}  // namespace xiforge
