#pragma once

#include "xiforge/precision.hpp"
#include "xiforge/quadrature.hpp"
#include "xiforge/real.hpp"

#include <memory>
#include <vector>

namespace xiforge {

/// Parameters of the Gaussian instance F(y) = exp(-a y^2) of the Muntz formula,
/// integrated against x^{v-1} over [0, z] along the line Re s = sigma_line.
struct MuntzParams {
  Real a = constants::pi;
  ComplexPoint v{Real(2), Real(0)};
  Real z = 1;
  Real sigma_line = constants::half;

  /// Throws DomainError unless a > 0, z > 0, 0 < sigma_line < 1, Re v > 1.
  void validate() const;
};

/// Ratio of the contour integral to sum exp(-a n^2 x^2) - sqrt(pi/a) / (2x).
/// The Mellin transform of exp(-a y^2) is Gamma(s/2) a^{-s/2} / 2, so the
/// contour of Gamma(s/2) zeta(s) (sqrt(a) x)^{-s} carries twice the theta sum.
inline const Real muntz_normalization = 2;

/// (1/2 pi i) int Gamma(s/2) zeta(s) (sqrt(a) x)^{-s} ds on Re s = p.sigma_line.
IntegrationResult muntz_instance(const Real& x, const MuntzParams& p, const PrecisionConfig& cfg);

/// sum_{n >= 1} exp(-a n^2 x^2) - sqrt(pi / a) / (2 x), by direct summation.
Real muntz_theta_side(const Real& x, const Real& a, const PrecisionConfig& cfg);

/// z^v (1/2 pi i) int Gamma(s/2) zeta(s) (sqrt(a) z)^{-s} / (v - s) ds.
IntegrationResult muntz_integrated(const MuntzParams& p, const PrecisionConfig& cfg);

enum class GammaArgReading {
  z_squared,  // gamma(v/2, a z^2 n^2): termwise integration of the theta side
  z_linear    // gamma(v/2, a z n^2)
};

/// (a^{-v/2} / 2) sum_n n^{-v} gamma(v/2, a w n^2) - z^{v-1} sqrt(pi/a) / (2 (v - 1))
/// with w = z^2 or z. Terms with large gamma argument are completed through
/// Gamma(v/2) zeta(v) minus the upper incomplete gammas.
Complex muntz_integrated_series(const MuntzParams& p, GammaArgReading reading,
                                const PrecisionConfig& cfg);

/// M(s) = 2 xi(s) Gamma(s) cos(pi s / 2) / (s (s - 1)), the Mellin transform of I-dot.
Complex idot_mellin(const Complex& s, const PrecisionConfig& cfg);

/// I-dot(t) = (1/2 pi i) int_{c - i inf}^{c + i inf} M(s) t^{-s} ds, 0 < c < 1, t > 0.
IntegrationResult i_dot(const Real& t, const Real& c, const PrecisionConfig& cfg);

/// Ratio of int_0^inf cos(x t) I-dot(t) dt to 2 psi(x^2) - 1/x.
/// Gamma(s) Gamma(1 - s) cos(pi s/2) sin(pi s/2) = pi / 2 collapses the
/// cosine transform onto the Muntz contour at a = pi.
inline const Real idot_cosine_normalization = constants::pi / 2;

/// Many I-dot values on one line: M(s) is tabulated once on a mesh fine enough
/// for every t in [t_lo, t_hi].
class IDotTable {
 public:
  IDotTable(const Real& c, const Real& t_lo, const Real& t_hi, const PrecisionConfig& cfg);
  Real operator()(const Real& t) const;
  const LineTable& table() const { return *table_; }

 private:
  Real t_lo_;
  Real t_hi_;
  std::shared_ptr<const LineTable> table_;
  // long double copies for the phase sum when the tolerance allows it
  bool fast_ = false;
  std::vector<long double> fast_nodes_;
  std::vector<long double> fast_re_;
  std::vector<long double> fast_im_;
};

/// int_0^U cos(x t) I-dot(t) dt with U taken from the observed decay of I-dot.
struct CosineReconstruction {
  IntegrationResult integral;
  /// Truncation point U and |I-dot(U)|.
  Real upper = 0;
  Real envelope_at_upper = 0;
};
CosineReconstruction idot_cosine_transform(const Real& x, const Real& c,
                                           const PrecisionConfig& cfg);

/// Same for several x, sharing the I-dot samples.
std::vector<CosineReconstruction> idot_cosine_transform(const std::vector<Real>& xs,
                                                        const Real& c,
                                                        const PrecisionConfig& cfg);

}  // namespace xiforge
