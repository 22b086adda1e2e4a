#pragma once

#include "xiforge/precision.hpp"
#include "xiforge/real.hpp"

#include <functional>
#include <string>
#include <vector>

namespace xiforge {

using RealFunction = std::function<Complex(const Real&)>;
using ComplexFunction = std::function<Complex(const Complex&)>;

struct IntegrationResult {
  Complex value{0, 0};
  Real abs_error_estimate = 0;
  long evaluations = 0;
  bool converged = false;
  /// Empty unless something needs explaining (non-convergence, truncation).
  std::string diagnostic;
};

/// Tail model |f(t)| <= scale * t^power_exponent * exp(-exp_rate * t) used to
/// truncate semi-infinite integrals.
struct DecayModel {
  Real power_exponent = 0;
  Real exp_rate = 1;
  Real scale = 1;
  Real truncation_point = 0;

  /// Modeled mass of the tail beyond `from` (requires exp_rate > 0).
  Real tail_bound(const Real& from) const;
};

/// Builds a DecayModel whose truncation point leaves a modeled tail below
/// cfg.target_abs_tol / 10. `start` is the lower integration limit.
DecayModel make_decay_model(const Real& power_exponent, const Real& exp_rate,
                            const PrecisionConfig& cfg, const Real& scale = 1,
                            const Real& start = 0);

struct QuadratureOptions {
  /// If positive, the interval is pre-split into panels of length pi/frequency
  /// (half periods of cos(frequency * t)) before adaptive refinement.
  Real oscillation_frequency = 0;
  /// Extra interior points at which the interval is split up front.
  std::vector<Real> breakpoints;
};

/// Globally adaptive Gauss-Kronrod (15/31) quadrature of f over [a, b].
/// Never throws on non-convergence; throws ConsistencyError if f returns NaN.
IntegrationResult integrate_finite(const RealFunction& f, const Real& a, const Real& b,
                                   const PrecisionConfig& cfg, const QuadratureOptions& opts = {});

/// Integral of f over [a, infinity): finite quadrature up to
/// decay.truncation_point plus the modeled tail folded into the error.
IntegrationResult integrate_semi_infinite(const RealFunction& f, const Real& a,
                                          const DecayModel& decay, const PrecisionConfig& cfg,
                                          const QuadratureOptions& opts = {});

/// (1/2 pi i) * integral of f(s) ds along Re s = sigma_line, truncated
/// symmetrically to |Im s| <= t_max. Reports converged=false when f at the
/// truncation points is not below tolerance.
IntegrationResult integrate_vertical_line(const ComplexFunction& f, const Real& sigma_line,
                                          const Real& t_max, const PrecisionConfig& cfg);

/// Same, with t_max found by doubling until f is negligible near +-t_max.
IntegrationResult integrate_vertical_line(const ComplexFunction& f, const Real& sigma_line,
                                          const PrecisionConfig& cfg);

/// Smallest T (found by doubling from `initial`) such that |f(sigma +- i tau)|
/// stays below `threshold` on a few samples tau in [T, 1.5 T].
Real vertical_truncation(const ComplexFunction& f, const Real& sigma_line, const Real& threshold,
                         const Real& initial = 8, const Real& limit = 4096);

/// Tabulated line rule: the adaptive mesh and samples of a fixed factor
/// F(s) along Re s = sigma, reusable for many integrals of F(s) * g(s).
class LineTable {
 public:
  /// Refines the mesh until every integral of F(s) * w(s) with
  /// |w| <= 1 and phase varying no faster than `max_phase_rate` per unit
  /// of Im s is resolved to cfg.target_abs_tol.
  LineTable(const ComplexFunction& factor, const Real& sigma_line, const Real& max_phase_rate,
            const PrecisionConfig& cfg);

  /// (1/2 pi) * sum over nodes of weight * F(s_j) * g(s_j).
  Complex integrate(const std::function<Complex(const Complex&)>& g) const;

  const Real& sigma() const { return sigma_; }
  const Real& t_max() const { return t_max_; }
  const std::vector<Real>& nodes() const { return nodes_; }
  /// Kronrod weight times F at each node (the 1/2 pi is not included).
  const std::vector<Complex>& weighted_values() const { return weighted_; }
  std::size_t size() const { return nodes_.size(); }
  long evaluations() const { return evaluations_; }

 private:
  Real sigma_;
  Real t_max_;
  std::vector<Real> nodes_;  // Im s
  std::vector<Complex> weighted_;
  long evaluations_ = 0;
};

/// Kronrod nodes on fixed panels, for integrating many integrands that share
/// expensive samples. The embedded Gauss weights give a per-panel error estimate.
struct FixedMesh {
  std::vector<Real> nodes;
  std::vector<Real> kronrod_weights;
  std::vector<Real> gauss_weights;
  std::size_t panels = 0;
};

/// Mesh over consecutive cuts c0 < c1 < ... (one panel per gap).
FixedMesh fixed_mesh(const std::vector<Real>& cuts);

/// Quadrature of sampled values f(mesh.nodes[j]); error is the sum of |K - G| per panel.
IntegrationResult integrate_samples(const FixedMesh& mesh, const std::vector<Complex>& values);

}  // namespace xiforge
