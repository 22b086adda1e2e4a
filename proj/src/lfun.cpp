#include "xiforge/lfun.hpp"

#include "xiforge/errors.hpp"
#include "xiforge/special.hpp"
#include "xiforge/theta.hpp"

#include <algorithm>

namespace xiforge {

namespace mp = boost::multiprecision;

std::string to_string(OmegaRoute route) {
  switch (route) {
    case OmegaRoute::series: return "series";
    case OmegaRoute::integral_rep: return "integral_rep";
    case OmegaRoute::inc_gamma_expansion: return "inc_gamma_expansion";
  }
  return "unknown";
}

HeckeData::HeckeData(QuadFieldData field, ClassCharacter chi, HeckeCoefficients coeffs)
    : field_(std::move(field)), chi_(std::move(chi)), coeffs_(std::move(coeffs)) {
  if (coeffs_.D != field_.D) throw DomainError("HeckeData: coefficients belong to another field");
  c_ = character_coefficients(coeffs_, chi_, coeffs_.n_max);
  beta1_ = constants::two_pi / mp::sqrt(Real(-field_.D));
  residue_ = Real(field_.class_number * chi_.delta) / Real(field_.unit_count);
}

namespace {

void check_pole(const ComplexPoint& s, const HeckeData& data, const char* who) {
  if (data.chi().delta == 0) return;
  const Complex z = s.value();
  if (z == Complex(0, 0) || z == Complex(1, 0)) {
    throw PoleError(std::string(who) + ": pole at s = " + format_real(z.real(), 3) +
                        " for the trivial character",
                    format_real(z.real(), 3));
  }
}

Complex pole_term(const ComplexPoint& s, const HeckeData& data) {
  if (data.chi().delta == 0) return {0, 0};
  const Complex z = s.value();
  return data.residue() / (z * (z - Real(1)));
}

}  // namespace

LSeriesValue l_series(const ComplexPoint& s, const HeckeData& data, const PrecisionConfig&) {
  const Real sigma = s.sigma();
  if (!(sigma > 1)) {
    throw DomainError("l_series: the Dirichlet series needs Re s > 1; use omega_integral_rep or "
                      "omega_inc_gamma_expansion for the continuation");
  }
  const Complex z = s.value();
  const long n = data.n_max();
  LSeriesValue out;
  out.terms = n;
  out.value = Complex(0, 0);
  for (long k = 1; k <= n; ++k) {
    if (data.c()[k] == Complex(0, 0)) continue;
    out.value += data.c()[k] * cexp(-z * mp::log(Real(k)));
  }
  // Rigorous bound for the omitted terms from |c(n)| <= h d(n) and
  // sum_{n <= x} d(n) <= x (ln x + 1), via partial summation.
  const Real h = data.field().class_number;
  const Real big_n = Real(n);
  const Real ln_n = mp::log(big_n);
  out.tail_bound = h * sigma * mp::pow(big_n, 1 - sigma) *
                   ((ln_n + 1) / (sigma - 1) + 1 / ((sigma - 1) * (sigma - 1)));
  if (data.chi().delta == 1) {
    // mean density of ideals of norm <= x is 2 pi h / (w sqrt|D|)
    const Real density = data.residue() * data.beta(1);
    const Complex correction =
        density * cexp((Real(1) - z) * mp::log(big_n + constants::half)) / (z - Real(1));
    out.value += correction;
    out.tail_bound += std::abs(correction);
  }
  // What remains after the mean is removed behaves like a lattice-point remainder, O(sqrt x).
  out.tail_estimate = h * mp::pow(big_n, constants::half - sigma) *
                      (2 + 2 * std::abs(z) / (sigma - constants::half));
  return out;
}

OmegaValue omega_from_series(const ComplexPoint& s, const HeckeData& data,
                             const PrecisionConfig& cfg) {
  const LSeriesValue l = l_series(s, data, cfg);
  const Complex z = s.value();
  const Complex factor = cexp(-z * mp::log(constants::two_pi) +
                              z * mp::log(Real(-data.field().D)) / Real(2)) *
                         gamma(s, cfg);
  return {s, factor * l.value, OmegaRoute::series, std::abs(factor) * l.tail_estimate};
}

IncGammaSum hecke_inc_gamma_sum(const ComplexPoint& s, const HeckeData& data,
                                const PrecisionConfig& cfg) {
  const Complex z = s.value();
  const Real reach = std::abs(z - Real(1));
  const Real h = data.field().class_number;
  const Real q = mp::exp(-data.beta(1));
  const Real target = cfg.target_abs_tol / 10;
  IncGammaSum out{Complex(0, 0), 0, 0};
  for (long n = 1;; ++n) {
    if (n > data.n_max()) {
      throw InsufficientCoefficients("incomplete-gamma expansion: extend coefficients beyond n = " +
                                         std::to_string(data.n_max()),
                                     2 * data.n_max());
    }
    const Real beta = data.beta(n);
    if (data.c()[n] != Complex(0, 0)) {
      out.value += data.c()[n] * cexp(-z * mp::log(beta)) * upper_inc_gamma(s, beta, cfg);
    }
    out.terms = n;
    // |Gamma(s, x)| <= x^{sigma-1} e^{-x} / (1 - |s-1|/x) for x > |s-1|, |c(n)| <= h n
    const Real next = data.beta(n + 1);
    if (next > 2 * reach + 1) {
      const Real tail = h * Real(n + 1) * mp::exp(-next) / (next * (1 - reach / next)) /
                        ((1 - q) * (1 - q));
      if (tail < target) {
        out.tail_bound = tail;
        return out;
      }
    }
  }
}

OmegaValue omega_inc_gamma_expansion(const ComplexPoint& s, const HeckeData& data,
                                     const PrecisionConfig& cfg) {
  check_pole(s, data, "omega_inc_gamma_expansion");
  const IncGammaSum right = hecke_inc_gamma_sum(s, data, cfg);
  const IncGammaSum left = hecke_inc_gamma_sum(s.reflected(), data, cfg);
  return {s, pole_term(s, data) + right.value + left.value, OmegaRoute::inc_gamma_expansion,
          right.tail_bound + left.tail_bound};
}

OmegaValue omega_integral_rep(const ComplexPoint& s, const HeckeData& data,
                              const PrecisionConfig& cfg, IntegralRepMode mode) {
  check_pole(s, data, "omega_integral_rep");
  const Complex z = s.value();
  if (mode == IntegralRepMode::analytic) {
    const IncGammaSum right = hecke_inc_gamma_sum(s, data, cfg);
    const IncGammaSum left = hecke_inc_gamma_sum(s.reflected(), data, cfg);
    return {s, pole_term(s, data) + right.value + left.value, OmegaRoute::integral_rep,
            right.tail_bound + left.tail_bound};
  }
  const Real sigma = s.sigma();
  const Real power = std::max({sigma - 1, -sigma, Real(0)});
  const Real q = mp::exp(-data.beta(1));
  const Real scale = 2 * Real(data.field().class_number) / ((1 - q) * (1 - q));
  const DecayModel decay = make_decay_model(power, data.beta(1), cfg, scale, Real(1));
  const Complex z_minus_one = z - Real(1);
  auto integrand = [&](const Real& t) {
    const Real lt = mp::log(t);
    const Complex kernel = cexp(z_minus_one * lt) + cexp(-z * lt);
    return kernel * psi_hecke(t, data.field(), data.c(), cfg);
  };
  const IntegrationResult r = integrate_semi_infinite(integrand, Real(1), decay, cfg);
  return {s, pole_term(s, data) + r.value, OmegaRoute::integral_rep, r.abs_error_estimate};
}

Complex riemann_inc_gamma_sum(const ComplexPoint& s, const PrecisionConfig& cfg) {
  const Complex z = s.value();
  const Complex a = z / Real(2);
  const Real reach = std::abs(a - Real(1));
  const Real target = cfg.target_abs_tol / 10;
  const Complex prefactor = cexp(-a * constants::ln_pi);
  const Real pre_abs = std::abs(prefactor);
  Complex sum{0, 0};
  for (long n = 1; n <= cfg.series_trunc_max; ++n) {
    const Real x = constants::pi * Real(n) * Real(n);
    sum += cexp(-z * mp::log(Real(n))) * upper_inc_gamma(ComplexPoint(a), x, cfg);
    const Real next = constants::pi * Real(n + 1) * Real(n + 1);
    if (next > 2 * reach + 1) {
      // |n^{-s} Gamma(s/2, pi n^2)| <= n^{-sigma} x^{sigma/2-1} e^{-x} / (1 - |a-1|/x);
      // successive terms shrink by more than e^{-pi (2n+1)}, so twice the next term bounds the tail.
      const Real bound = mp::pow(Real(n + 1), -z.real()) * mp::pow(next, a.real() - 1) *
                         mp::exp(-next) / (1 - reach / next);
      if (2 * pre_abs * bound < target) return prefactor * sum;
    }
  }
  throw ConvergenceError("riemann_inc_gamma_sum: truncation exceeded series_trunc_max");
}

Complex xi_inc_gamma_expansion(const ComplexPoint& s, const PrecisionConfig& cfg) {
  const Complex z = s.value();
  if (z == Complex(0, 0) || z == Complex(1, 0)) {
    throw PoleError("xi_inc_gamma_expansion: pole at s = " + format_real(z.real(), 3),
                    format_real(z.real(), 3));
  }
  return Complex(1, 0) / (z * (z - Real(1))) + riemann_inc_gamma_sum(s, cfg) +
         riemann_inc_gamma_sum(s.reflected(), cfg);
}

}  // namespace xiforge
