#include "xiforge/transforms.hpp"

#include "xiforge/contour.hpp"
#include "xiforge/errors.hpp"
#include "xiforge/special.hpp"
#include "xiforge/theta.hpp"

#include <algorithm>

namespace xiforge {

namespace mp = boost::multiprecision;

KernelSpec::KernelSpec(ComplexPoint s, KernelVariant variant)
    : s_(s), variant_(variant), shift_(s.value() - constants::half) {
  if (s_.sigma() == constants::half) {
    throw DomainError("kernel: Re s = 1/2 puts the pole t = +-i (s - 1/2) on the real axis");
  }
}

Complex KernelSpec::operator()(const Real& t) const {
  const Complex k = shift_ / (t * t + shift_ * shift_);
  if (variant_ == KernelVariant::hecke_Kbar) return k;
  return k / (t * t + Real(1) / 4);
}

namespace {

// Empirical tail model: the scale is fitted at probe points with a safety factor.
DecayModel fitted_decay(const std::function<Real(const Real&)>& magnitude, const Real& power,
                        const Real& rate, std::initializer_list<int> probes,
                        const PrecisionConfig& cfg, const Real& start = 0) {
  Real scale = 1;
  for (int p : probes) {
    const Real t = p;
    scale = std::max(scale, 4 * magnitude(t) / (mp::pow(t, power) * mp::exp(-rate * t)));
  }
  return make_decay_model(power, rate, cfg, scale, start);
}

// |lambda(t)| is O(t^{7/4} e^{-pi t / 4}).
DecayModel lambda_decay(const std::function<Real(const Real&)>& magnitude,
                        const PrecisionConfig& cfg) {
  return fitted_decay(magnitude, Real(2), constants::pi / 4, {10, 20, 30, 40}, cfg);
}

// |Omega(1/2 + i t)| is O(t e^{-pi t / 2}) (Stirling plus convexity for L).
DecayModel frak_o_decay(const std::function<Real(const Real&)>& magnitude,
                        const PrecisionConfig& cfg) {
  return fitted_decay(magnitude, Real(1), constants::pi / 2, {4, 8, 12, 16}, cfg);
}

void require_converged(const IntegrationResult& r, const char* who) {
  if (!r.converged) {
    throw ConvergenceError(std::string(who) + ": " +
                           (r.diagnostic.empty() ? "error estimate above tolerance"
                                                 : r.diagnostic));
  }
}

}  // namespace

Real lambda_transform_closed(const Real& x, const PrecisionConfig& cfg) {
  const Real psi_value = psi(ThetaArg(mp::exp(-2 * x)), cfg);
  return constants::pi / 2 * (mp::exp(x / 2) - 2 * mp::exp(-x / 2) * psi_value);
}

TransformPair lambda_transform(const Real& x_in, const PrecisionConfig& cfg) {
  const Real x = mp::abs(x_in);
  auto integrand = [&](const Real& t) {
    return Complex(lambda_big(t, cfg) * mp::cos(x * t) / (t * t + Real(1) / 4), 0);
  };
  const DecayModel decay =
      lambda_decay([&](const Real& t) { return mp::abs(integrand(t).real()) + mp::abs(lambda_big(t, cfg)) / (t * t); }, cfg);
  QuadratureOptions opts;
  opts.oscillation_frequency = x;
  TransformPair out;
  out.quadrature = integrate_semi_infinite(integrand, Real(0), decay, cfg, opts);
  require_converged(out.quadrature, "lambda_transform");
  out.closed_form = Complex(lambda_transform_closed(x, cfg), 0);
  return out;
}

IntegrationResult upsilon_quadrature(const ComplexPoint& s, const PrecisionConfig& cfg) {
  const KernelSpec kernel(s, KernelVariant::riemann_K);
  auto integrand = [&](const Real& t) { return lambda_big(t, cfg) * kernel(t); };
  const DecayModel decay = lambda_decay([&](const Real& t) { return std::abs(integrand(t)); }, cfg);
  QuadratureOptions opts;
  // the kernel varies on the scale |s - 1/2|
  const Real width = std::abs(s.value() - constants::half);
  if (width < 1) opts.breakpoints = {width / 4, width, 4 * width};
  IntegrationResult r = integrate_semi_infinite(integrand, Real(0), decay, cfg, opts);
  require_converged(r, "upsilon_quadrature");
  return r;
}

ClosedForm upsilon_closed_form(const ComplexPoint& s, const PrecisionConfig& cfg) {
  const Complex z = s.value();
  if (z == Complex(0, 0) || z == Complex(1, 0)) {
    throw PoleError("upsilon_closed_form: pole at s = " + format_real(z.real(), 3),
                    format_real(z.real(), 3));
  }
  const Complex completed = Real(2) * xi_value(s, cfg) / (z * (z - Real(1)));
  ClosedForm out;
  out.value = constants::pi / 2 *
              (Complex(1, 0) / (z - Real(1)) - completed + riemann_inc_gamma_sum(s, cfg));
  if (!(s.sigma() > 1)) {
    out.warning = "Re s <= 1: outside the region where the closed form was stated";
  }
  return out;
}

IntegrationResult laplace_of_lambda(const ComplexPoint& s, const PrecisionConfig& cfg) {
  if (!(s.sigma() > 1)) {
    throw DomainError("laplace_of_lambda: requires Re s > 1 for the Laplace integral");
  }
  const Complex shift = s.value() - constants::half;
  auto integrand = [&](const Real& x) {
    return cexp(-shift * x) * lambda_transform_closed(x, cfg);
  };
  // |Lambda(x)| <= (pi/2) e^{-x/2}
  const DecayModel decay = make_decay_model(Real(0), s.sigma(), cfg, constants::pi / 2);
  QuadratureOptions opts;
  opts.oscillation_frequency = mp::abs(s.t());
  IntegrationResult r = integrate_semi_infinite(integrand, Real(0), decay, cfg, opts);
  require_converged(r, "laplace_of_lambda");
  return r;
}

Complex frak_o(const Real& t, const HeckeData& data, const PrecisionConfig& cfg) {
  return omega_inc_gamma_expansion(ComplexPoint(constants::half, t), data, cfg).omega;
}

HeckeTransform hecke_cosine_transform(const Real& x, const HeckeData& data,
                                      const PrecisionConfig& cfg) {
  auto integrand = [&](const Real& t) { return frak_o(t, data, cfg) * mp::cos(x * t); };
  const DecayModel decay = frak_o_decay(
      [&](const Real& t) { return std::abs(frak_o(t, data, cfg)); }, cfg);
  QuadratureOptions opts;
  opts.oscillation_frequency = mp::abs(x);
  HeckeTransform out;
  out.quadrature = integrate_semi_infinite(integrand, Real(0), decay, cfg, opts);
  require_converged(out.quadrature, "hecke_cosine_transform");

  const Complex theta = psi_hecke(mp::exp(-x), data.field(), data.c(), cfg);
  const Real pole = data.residue() * mp::exp(x / 2);
  const Complex theta_part = mp::exp(-x / 2) * theta;
  out.closed.derived = constants::pi * (theta_part - pole);
  out.closed.alternate = constants::pi / 2 * (pole - theta_part);
  return out;
}

IntegrationResult frak_upsilon_quadrature(const ComplexPoint& s, const HeckeData& data,
                                          const PrecisionConfig& cfg) {
  const KernelSpec kernel(s, KernelVariant::hecke_Kbar);
  auto integrand = [&](const Real& t) { return frak_o(t, data, cfg) * kernel(t); };
  const DecayModel decay =
      frak_o_decay([&](const Real& t) { return std::abs(integrand(t)) * (1 + t * t); }, cfg);
  QuadratureOptions opts;
  const Real width = std::abs(s.value() - constants::half);
  if (width < 1) opts.breakpoints = {width / 4, width, 4 * width};
  IntegrationResult r = integrate_semi_infinite(integrand, Real(0), decay, cfg, opts);
  require_converged(r, "frak_upsilon_quadrature");
  return r;
}

FrakUpsilonClosed frak_upsilon_closed_form(const ComplexPoint& s, const HeckeData& data,
                                           const PrecisionConfig& cfg) {
  const Complex z = s.value();
  if (data.chi().delta == 1 && z == Complex(1, 0)) {
    throw PoleError("frak_upsilon_closed_form: pole at s = 1", "1");
  }
  const Complex omega = omega_inc_gamma_expansion(s, data, cfg).omega;
  const Complex tail = hecke_inc_gamma_sum(s, data, cfg).value;
  const Complex pole = data.residue() / (z - Real(1));
  FrakUpsilonClosed out;
  out.forms.derived = constants::pi * (omega - tail - pole);
  out.forms.alternate = constants::pi / 2 * (pole - omega + tail);
  if (!(s.sigma() > 1)) {
    out.warning = "Re s <= 1: outside the region where the closed form was stated";
  }
  return out;
}

Real kddot(const Real& x, const PrecisionConfig& cfg) {
  return mp::exp(-x / 2) * (2 * psi(ThetaArg(mp::exp(-2 * x)), cfg) - mp::exp(x));
}

Real kddot_series(const Real& x, const PrecisionConfig& cfg) {
  return mp::exp(-x / 2) * (2 * psi_series(ThetaArg(mp::exp(-2 * x)), cfg) - mp::exp(x));
}

Real kddot_stable(const Real& x_in, const PrecisionConfig& cfg) {
  const Real x = mp::abs(x_in);
  return mp::exp(-x / 2) * (2 * mp::exp(x) * psi(ThetaArg(mp::exp(2 * x)), cfg) - 1);
}

IntegrationResult i_ddot(const Real& t, const PrecisionConfig& cfg) {
  auto integrand = [&](const Real& x) { return Complex(mp::cos(x * t) * kddot_stable(x, cfg), 0); };
  // |kddot(x)| <= e^{-x/2} for x >= 0 since 2 e^{x} psi(e^{2x}) < 1
  const DecayModel decay = make_decay_model(Real(0), constants::half, cfg, Real(1));
  QuadratureOptions opts;
  opts.oscillation_frequency = mp::abs(t);
  IntegrationResult r = integrate_semi_infinite(integrand, Real(0), decay, cfg, opts);
  require_converged(r, "i_ddot");
  return r;
}

Real i_ddot_companion(const Real& t, const PrecisionConfig& cfg) {
  return lambda_big(t, cfg) / (t * t + Real(1) / 4);
}

std::vector<IntegrationResult> i_ddot_from_idot(const std::vector<Real>& ts, const Real& c,
                                                const PrecisionConfig& cfg) {
  const Real tol = cfg.target_abs_tol;
  Real t_max = 1;
  for (const Real& t : ts) t_max = std::max(t_max, mp::abs(t));
  // The inner integral is O(1), so the outer integrand is O(e^{-x/2}).
  const Real upper = 2 * mp::log(40 / tol);
  const Real width = std::min(Real(1), 8 / t_max);
  const long panels = static_cast<long>(mp::ceil(upper / width));
  std::vector<Real> cuts;
  for (long i = 0; i <= panels; ++i) cuts.push_back(upper * Real(i) / Real(panels));
  const FixedMesh mesh = fixed_mesh(cuts);

  std::vector<Real> inner_args;
  inner_args.reserve(mesh.nodes.size());
  for (const Real& x : mesh.nodes) inner_args.push_back(mp::exp(-x));
  const auto inner = idot_cosine_transform(inner_args, c, cfg.loosened(tol / 10));
  Real inner_error = 0;
  for (const auto& r : inner) inner_error = std::max(inner_error, r.integral.abs_error_estimate);

  std::vector<IntegrationResult> out;
  for (const Real& t : ts) {
    std::vector<Complex> values;
    values.reserve(mesh.nodes.size());
    for (std::size_t j = 0; j < mesh.nodes.size(); ++j) {
      const Real& x = mesh.nodes[j];
      values.emplace_back(mp::cos(x * t) * mp::exp(-x / 2) * inner[j].integral.value.real(), 0);
    }
    IntegrationResult r = integrate_samples(mesh, values);
    // inner errors weighted by int e^{-x/2} dx = 2, plus the dropped tail
    r.abs_error_estimate += 2 * inner_error + 4 * mp::exp(-upper / 2);
    r.converged = r.abs_error_estimate <= tol;
    if (!r.converged) {
      r.diagnostic = "i_ddot_from_idot: error estimate " + format_real(r.abs_error_estimate, 6) +
                     " above tolerance";
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace xiforge
