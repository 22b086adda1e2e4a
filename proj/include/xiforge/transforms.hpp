#pragma once

#include "xiforge/lfun.hpp"
#include "xiforge/precision.hpp"
#include "xiforge/quadrature.hpp"
#include "xiforge/real.hpp"

#include <string>
#include <vector>

namespace xiforge {

enum class KernelVariant {
  riemann_K,  // (s - 1/2) / ((t^2 + 1/4) (t^2 + (s - 1/2)^2))
  hecke_Kbar  // (s - 1/2) / (t^2 + (s - 1/2)^2)
};

/// Critical-line kernel at fixed s. Throws DomainError when Re s = 1/2, where
/// t^2 + (s - 1/2)^2 vanishes on the real t axis.
class KernelSpec {
 public:
  KernelSpec(ComplexPoint s, KernelVariant variant);
  Complex operator()(const Real& t) const;
  const ComplexPoint& s() const { return s_; }
  KernelVariant variant() const { return variant_; }

 private:
  ComplexPoint s_;
  KernelVariant variant_;
  Complex shift_;  // s - 1/2
};

/// A quadrature value next to the closed form it should reproduce.
struct TransformPair {
  IntegrationResult quadrature;
  Complex closed_form;
};

/// (pi/2) (e^{x/2} - 2 e^{-x/2} psi(e^{-2x})), the cosine transform of
/// lambda(t) / (t^2 + 1/4). Even in x.
Real lambda_transform_closed(const Real& x, const PrecisionConfig& cfg);

/// int_0^inf lambda(t) cos(x t) / (t^2 + 1/4) dt and the closed form above.
/// Negative x is folded onto |x|.
TransformPair lambda_transform(const Real& x, const PrecisionConfig& cfg);

/// (s - 1/2) int_0^inf lambda(t) / ((t^2 + 1/4) (t^2 + (s - 1/2)^2)) dt; any Re s != 1/2.
IntegrationResult upsilon_quadrature(const ComplexPoint& s, const PrecisionConfig& cfg);

/// A closed-form value, with a warning when s lies outside the region where
/// the formula was stated.
struct ClosedForm {
  Complex value;
  std::string warning;
};

/// (pi/2) (1/(s-1) - 2 xi(s)/(s(s-1)) + pi^{-s/2} sum n^{-s} Gamma(s/2, pi n^2)).
/// Throws PoleError at s in {0, 1}; warns when Re s <= 1.
ClosedForm upsilon_closed_form(const ComplexPoint& s, const PrecisionConfig& cfg);

/// int_0^inf e^{-(s-1/2) x} Lambda(x) dx with the closed-form Lambda.
/// Throws DomainError for Re s <= 1.
IntegrationResult laplace_of_lambda(const ComplexPoint& s, const PrecisionConfig& cfg);

/// Omega_K(1/2 + i t, chi) through the incomplete-gamma expansion.
Complex frak_o(const Real& t, const HeckeData& data, const PrecisionConfig& cfg);

/// Closed forms for the Hecke transforms in two normalizations. `derived`
/// follows from Mellin inversion of Psi with the pole of Omega at s = 1;
/// `alternate` is the form with the (pi/2)(pole - theta) layout, D-bar = w.
/// For every field and character derived = -2 * alternate.
struct HeckeClosedForms {
  Complex derived;
  Complex alternate;
};

/// Ratio derived / alternate of the two normalizations.
inline const Real hecke_normalization = -2;

/// int_0^inf O_K(t) cos(x t) dt against pi (e^{-x/2} Psi(e^{-x}) - h delta e^{x/2} / w)
/// and the alternate (pi/2)(h delta e^{x/2} / w - e^{-x/2} Psi(e^{-x})).
struct HeckeTransform {
  IntegrationResult quadrature;
  HeckeClosedForms closed;
};
HeckeTransform hecke_cosine_transform(const Real& x, const HeckeData& data,
                                      const PrecisionConfig& cfg);

/// int_0^inf O_K(t) Kbar(s, t) dt; any Re s != 1/2.
IntegrationResult frak_upsilon_quadrature(const ComplexPoint& s, const HeckeData& data,
                                          const PrecisionConfig& cfg);

/// derived: pi (Omega(s) - sum chi beta^{-s} Gamma(s, beta) - h delta / (w (s - 1)));
/// alternate: (pi/2)(h delta / (w (s - 1)) - Omega(s) + sum chi beta^{-s} Gamma(s, beta)).
/// Warns when Re s <= 1; PoleError at s = 1 for the trivial character.
struct FrakUpsilonClosed {
  HeckeClosedForms forms;
  std::string warning;
};
FrakUpsilonClosed frak_upsilon_closed_form(const ComplexPoint& s, const HeckeData& data,
                                           const PrecisionConfig& cfg);

/// k-double-dot(x) = e^{-x/2} (2 psi(e^{-2x}) - e^{x}), evaluated as written.
Real kddot(const Real& x, const PrecisionConfig& cfg);

/// The same kernel with both theta values summed term by term (no modular
/// relation), for independent evenness checks. Slow for large |x|.
Real kddot_series(const Real& x, const PrecisionConfig& cfg);

/// kddot rearranged for x >= 0 as e^{-x/2} (2 e^{x} psi(e^{2x}) - 1), free of
/// cancellation for large x; folded by evenness for x < 0.
Real kddot_stable(const Real& x, const PrecisionConfig& cfg);

/// I-double-dot(t) = int_0^inf cos(x t) kddot(x) dx, the inner u-integral
/// replaced by its closed form 2 psi(e^{-2x}) - e^{x}.
IntegrationResult i_ddot(const Real& t, const PrecisionConfig& cfg);

/// lambda(t) / (t^2 + 1/4), the companion of i_ddot.
Real i_ddot_companion(const Real& t, const PrecisionConfig& cfg);

/// Spot check: the inner integral taken as int_0^inf cos(e^{-x} u) I-dot(u) du
/// from the contour values of I-dot (line Re s = c), then the outer cosine
/// transform. One I-dot tabulation serves every t.
std::vector<IntegrationResult> i_ddot_from_idot(const std::vector<Real>& ts, const Real& c,
                                                const PrecisionConfig& cfg);

}  // namespace xiforge
