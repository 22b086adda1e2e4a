#include "fixtures.hpp"
#include "oracles.hpp"
#include "xiforge/errors.hpp"
#include "xiforge/lfun.hpp"
#include "xiforge/special.hpp"

#include <gtest/gtest.h>

#include <random>

namespace {

using namespace xiforge;
namespace mp = boost::multiprecision;

const PrecisionConfig cfg = default_precision();

const HeckeData& instance(long D, int character) { return fixtures::hecke(D, character); }

std::vector<std::pair<long, int>> all_instances() { return fixtures::builtin_instances(); }

Complex omega_from_l(const ComplexPoint& s, long D, const Complex& l) {
  return real_pow(2 * constants::pi, -Complex(s)) * gamma(s, cfg) *
         real_pow(Real(-D), Complex(s) / Complex(2)) * l;
}

TEST(LSeries, GaussianFieldAtTwo) {
  const Real exact = constants::pi * constants::pi / 6 * constants::catalan;
  const LSeriesValue v = l_series(2, instance(-4, 0), cfg);
  const Real err = std::abs(v.value - Complex(exact));
  EXPECT_LE(err, v.tail_bound);
  EXPECT_LT(err, Real("1e-6"));
}

TEST(LSeries, GaussianFieldAtThreeAgainstLatticeSum) {
  // sum over nonzero Gaussian integers of N^{-3}, divided by the 4 units
  const long R = 400;
  Real sum = 0;
  for (long a = -R; a <= R; ++a) {
    for (long b = -R; b <= R; ++b) {
      if (a == 0 && b == 0) continue;
      const Real n = Real(a * a + b * b);
      sum += 1 / (n * n * n);
    }
  }
  sum /= 4;  // box truncation leaves about pi / (8 R^4) / 4
  const LSeriesValue v = l_series(3, instance(-4, 0), cfg);
  EXPECT_LT(mp::abs(v.value.real() - sum), Real("1e-10"));
  EXPECT_LE(std::abs(v.value - Complex(sum)), v.tail_bound + Real("1e-10"));
}

TEST(LSeries, LeadingTermDominates) {
  for (const auto& [D, k] : all_instances()) {
    const LSeriesValue v = l_series(20, instance(D, k), cfg);
    EXPECT_LT(std::abs(v.value - Complex(1)), Real("1e-5")) << D;
  }
}

TEST(LSeries, RejectsLeftOfAbscissa) {
  EXPECT_THROW(l_series(1, instance(-4, 0), cfg), DomainError);
  EXPECT_THROW(l_series(ComplexPoint(Real("0.5"), Real(3)), instance(-20, 1), cfg), DomainError);
}

TEST(OmegaIntegralRep, SymmetricUnderReflection) {
  const ComplexPoint s(Real(2), Real(1));
  const auto a = omega_integral_rep(s, instance(-4, 0), cfg);
  const auto b = omega_integral_rep(s.reflected(), instance(-4, 0), cfg);
  EXPECT_LT(std::abs(a.omega - b.omega), Real("1e-18"));
  EXPECT_EQ(a.route, OmegaRoute::integral_rep);
}

TEST(OmegaIntegralRep, GaussianFieldAtTwo) {
  // zeta_K(2) = zeta(2) L(2, chi_-4) = (pi^2 / 6) G, so Omega(2) = G / 6
  const auto v = omega_integral_rep(2, instance(-4, 0), cfg);
  EXPECT_LT(std::abs(v.omega - Complex(constants::catalan / 6)), Real("1e-18"));
  const auto series = omega_from_series(2, instance(-4, 0), cfg);
  EXPECT_LT(std::abs(v.omega - series.omega), Real("1e-6"));
}

TEST(OmegaIntegralRep, AnalyticModeAgrees) {
  for (const auto& [D, k] : all_instances()) {
    const ComplexPoint s(Real("0.3"), Real(4));
    const auto q = omega_integral_rep(s, instance(D, k), cfg, IntegralRepMode::quadrature);
    const auto a = omega_integral_rep(s, instance(D, k), cfg, IntegralRepMode::analytic);
    EXPECT_LT(std::abs(q.omega - a.omega), Real("1e-18")) << D << " " << k;
  }
}

TEST(OmegaIntegralRep, NoPoleForNontrivialCharacter) {
  const auto v = omega_integral_rep(0.5, instance(-20, 1), cfg);
  EXPECT_TRUE(is_finite(v.omega));
  EXPECT_NO_THROW(omega_integral_rep(1, instance(-20, 1), cfg));
  EXPECT_THROW(omega_integral_rep(1, instance(-20, 0), cfg), PoleError);
  EXPECT_THROW(omega_integral_rep(0, instance(-4, 0), cfg), PoleError);
}

TEST(OmegaIncGamma, RealOnCriticalLineForRealCharacters) {
  for (const auto& [D, k] : all_instances()) {
    for (const char* t : {"0", "3.7", "-11"}) {
      const auto v = omega_inc_gamma_expansion(ComplexPoint(Real("0.5"), Real(t)), instance(D, k), cfg);
      EXPECT_LT(mp::abs(v.omega.imag()), Real("1e-25")) << D << " " << t;
    }
  }
}

TEST(OmegaIncGamma, MatchesIntegralRepresentation) {
  const auto a = omega_inc_gamma_expansion(2, instance(-4, 0), cfg);
  const auto b = omega_integral_rep(2, instance(-4, 0), cfg);
  EXPECT_LT(std::abs(a.omega - b.omega), Real("1e-8"));
}

TEST(OmegaIncGamma, EisensteinFieldAtThree) {
  // zeta_K(3) = zeta(3) L(3, chi_-3), L(3, chi_-3) = 4 pi^3 / (81 sqrt 3)
  const Real l3 = 4 * mp::pow(constants::pi, 3) / (81 * mp::sqrt(Real(3)));
  const Complex exact = omega_from_l(3, -3, Complex(boost::math::zeta(Real(3)) * l3));
  const auto v = omega_inc_gamma_expansion(3, instance(-3, 0), cfg);
  EXPECT_LT(std::abs(v.omega - exact), Real("1e-18"));
  const LSeriesValue series = l_series(3, instance(-3, 0), cfg);
  EXPECT_LT(std::abs(v.omega - omega_from_l(3, -3, series.value)), Real("1e-8"));
}

TEST(XiIncGamma, Examples) {
  EXPECT_LT(std::abs(xi_inc_gamma_expansion(2, cfg) - Complex(constants::pi / 6)), Real("1e-10"));
  const ComplexPoint p(Real("0.3"), Real(0));
  const Complex a = xi_inc_gamma_expansion(p, cfg);
  const Complex b = xi_inc_gamma_expansion(p.reflected(), cfg);
  EXPECT_LT(std::abs(a - b), Real("1e-25"));
  const ComplexPoint zero(Real("0.5"), Real("14.134725"));
  const Complex s = zero;
  const Complex completed = s * (s - Complex(1)) / Complex(2) * xi_inc_gamma_expansion(zero, cfg);
  EXPECT_LT(std::abs(completed), Real("1e-5"));
  EXPECT_THROW(xi_inc_gamma_expansion(1, cfg), PoleError);
  EXPECT_THROW(xi_inc_gamma_expansion(0, cfg), PoleError);
}

// --- properties ---------------------------------------------------------------

TEST(LfunProperties, RouteAgreementGrid) {
  for (const auto& [D, k] : all_instances()) {
    for (const ComplexPoint s : {ComplexPoint(2), ComplexPoint(3), ComplexPoint(Real("0.5"), Real(5)),
                                 ComplexPoint(0.25)}) {
      const auto a = omega_integral_rep(s, instance(D, k), cfg);
      const auto b = omega_inc_gamma_expansion(s, instance(D, k), cfg);
      EXPECT_LT(std::abs(a.omega - b.omega), Real("1e-8")) << D << " " << k;
    }
  }
}

TEST(LfunProperties, FunctionalEquationBothRoutes) {
  for (const auto& [D, k] : all_instances()) {
    for (const ComplexPoint s : {ComplexPoint(Real(2), Real(1)), ComplexPoint(Real("-1.5"), Real(7))}) {
      const auto a = omega_integral_rep(s, instance(D, k), cfg);
      const auto ar = omega_integral_rep(s.reflected(), instance(D, k), cfg);
      const auto b = omega_inc_gamma_expansion(s, instance(D, k), cfg);
      const auto br = omega_inc_gamma_expansion(s.reflected(), instance(D, k), cfg);
      EXPECT_LT(std::abs(a.omega - ar.omega), Real("1e-9"));
      EXPECT_LT(std::abs(b.omega - br.omega), Real("1e-9"));
    }
  }
}

TEST(LfunProperties, SeriesAgreesInConvergenceRegion) {
  for (const auto& [D, k] : all_instances()) {
    for (const ComplexPoint s : {ComplexPoint(4), ComplexPoint(Real(3), Real(2))}) {
      const auto series = omega_from_series(s, instance(D, k), cfg);
      const auto b = omega_inc_gamma_expansion(s, instance(D, k), cfg);
      const auto a = omega_integral_rep(s, instance(D, k), cfg);
      EXPECT_LT(std::abs(series.omega - b.omega), Real("1e-8"));
      EXPECT_LT(std::abs(series.omega - a.omega), Real("1e-8"));
    }
  }
}

TEST(LfunProperties, XiExpansionFiftyRandomPoints) {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> re(-5, 6);
  std::uniform_real_distribution<double> im(-30, 30);
  int checked = 0;
  while (checked < 50) {
    const Complex s(Real(re(gen)), Real(im(gen)));
    if (std::abs(s) < Real("0.05") || std::abs(s - Complex(1)) < Real("0.05")) continue;
    const Complex direct = real_pow(constants::pi, -s / Complex(2)) * zeta(s, cfg) *
                           gamma(s / Complex(2), cfg);
    EXPECT_LT(std::abs(xi_inc_gamma_expansion(s, cfg) - direct), Real("1e-10")) << format_complex(s);
    ++checked;
  }
}

TEST(LfunProperties, SeriesTailBoundIsHonest) {
  // the 20000-term series against the complete value from the continued route
  for (const auto& [D, k] : all_instances()) {
    for (const char* sigma : {"1.5", "2", "3"}) {
      const ComplexPoint s(Real(sigma), Real(1));
      const LSeriesValue v = l_series(s, instance(D, k), cfg);
      const auto exact = omega_inc_gamma_expansion(s, instance(D, k), cfg);
      const Complex scale = omega_from_l(s, D, Complex(1));
      const Real err = std::abs(v.value - exact.omega / scale);
      EXPECT_LE(err, v.tail_bound) << D << " " << sigma;
    }
  }
}

}  // namespace
