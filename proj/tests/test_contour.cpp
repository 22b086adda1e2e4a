#include "oracles.hpp"
#include "xiforge/contour.hpp"
#include "xiforge/errors.hpp"
#include "xiforge/transforms.hpp"

#include <gtest/gtest.h>

namespace {

using namespace xiforge;
namespace mp = boost::multiprecision;

const PrecisionConfig cfg = default_precision();
const PrecisionConfig coarse = default_precision().with_tolerance(Real("1e-10"), Real("1e-10"));

MuntzParams params(const Real& a, const Real& sigma) {
  MuntzParams p;
  p.a = a;
  p.sigma_line = sigma;
  return p;
}

TEST(MuntzInstance, GaussianAtOne) {
  const Real theta_side = oracle::theta_sum(1) - Real("0.5");
  const auto r = muntz_instance(1, params(constants::pi, Real("0.5")), cfg);
  EXPECT_TRUE(r.converged);
  // the contour carries twice the theta side (Mellin transform of e^{-a y^2} is Gamma(s/2) a^{-s/2} / 2)
  EXPECT_LT(mp::abs(r.value.real() / theta_side - 2), Real("1e-15"));
  EXPECT_LT(std::abs(r.value - Complex(muntz_normalization * theta_side)), Real("1e-15"));
  EXPECT_LT(mp::abs(r.value.imag()), Real("1e-18"));
}

TEST(MuntzInstance, GaussianAtTwo) {
  const Real theta_side = oracle::theta_sum(4) - Real("0.25");
  const auto r = muntz_instance(2, params(constants::pi, Real("0.5")), cfg);
  EXPECT_LT(std::abs(r.value - Complex(muntz_normalization * theta_side)), Real("1e-15"));
}

TEST(MuntzInstance, ContourShiftInvariance) {
  const auto mid = muntz_instance(1, params(constants::pi, Real("0.5")), cfg);
  for (const char* sigma : {"0.3", "0.7", "0.2", "0.8"}) {
    const auto r = muntz_instance(1, params(constants::pi, Real(sigma)), cfg);
    EXPECT_LT(std::abs(r.value - mid.value), Real("1e-8")) << sigma;
  }
}

TEST(MuntzInstance, ThetaSideMatchesDirectSum) {
  for (const char* a : {"2", "0.7"}) {
    for (const char* x : {"0.5", "1", "2"}) {
      const Real expected = oracle::gaussian_sum(Real(a), Real(x)) -
                            mp::sqrt(constants::pi / Real(a)) / (2 * Real(x));
      EXPECT_LT(mp::abs(muntz_theta_side(Real(x), Real(a), cfg) - expected), Real("1e-28"));
    }
  }
}

TEST(MuntzParams, Validation) {
  MuntzParams p;
  EXPECT_NO_THROW(p.validate());
  p.sigma_line = 1;
  EXPECT_THROW(p.validate(), DomainError);
  p = MuntzParams{};
  p.v = ComplexPoint(Real("0.9"), Real(0));
  EXPECT_THROW(p.validate(), DomainError);
  p = MuntzParams{};
  p.z = 0;
  EXPECT_THROW(p.validate(), DomainError);
  EXPECT_THROW(muntz_integrated(p, cfg), DomainError);
}

TEST(MuntzIntegrated, UpsilonBridgeAtTwo) {
  MuntzParams p;
  const auto r = muntz_integrated(p, cfg);
  const Complex upsilon = upsilon_closed_form(2, cfg).value;
  // the contour equals -(2/pi) Upsilon(v) at a = pi, z = 1
  EXPECT_LT(std::abs(r.value / upsilon - Complex(-2 / constants::pi)), Real("1e-12"));
}

TEST(MuntzIntegrated, SmallZIsDominatedByPolynomialTerm) {
  // for small x the theta side is -1/2 up to exp(-pi^2 / (a x^2)), so the
  // contour is close to 2 * integral of -x^{v-1}/2 over [0, z] = -z^v / v
  MuntzParams p;
  p.v = ComplexPoint(10);
  p.z = Real("0.1");
  const auto r = muntz_integrated(p, cfg);
  const Real expected = -mp::pow(p.z, 10) / 10;
  EXPECT_LT(std::abs(r.value / expected - Complex(1)), Real("1e-8"));
  const Complex series = muntz_integrated_series(p, GammaArgReading::z_squared, cfg);
  EXPECT_LT(std::abs(muntz_normalization * series - r.value), Real("1e-18"));
}

TEST(MuntzIntegrated, SeriesMatchesContourAtVThree) {
  MuntzParams p;
  p.v = ComplexPoint(3);
  const auto r = muntz_integrated(p, cfg);
  const Complex series = muntz_integrated_series(p, GammaArgReading::z_squared, cfg);
  EXPECT_LT(std::abs(muntz_normalization * series - r.value), Real("1e-8"));
}

TEST(MuntzIntegrated, GammaArgumentReadingsSeparate) {
  MuntzParams p;
  p.a = 2;
  p.z = Real("0.5");
  p.v = ComplexPoint(Real(3), Real(1));
  p.sigma_line = Real("0.4");
  const auto r = muntz_integrated(p, cfg);
  const Complex sq = muntz_normalization * muntz_integrated_series(p, GammaArgReading::z_squared, cfg);
  const Complex lin = muntz_normalization * muntz_integrated_series(p, GammaArgReading::z_linear, cfg);
  EXPECT_LT(std::abs(sq - r.value), Real("1e-8"));
  EXPECT_GT(std::abs(lin - r.value), Real("1e-3"));
}

/// I-dot(t) = int_0^inf cos(x t) (2 psi(x^2) - 1/x) dx, the cosine inversion of
/// its transform; [X, inf) contributes Ci(X t) because psi(X^2) is negligible.
Real idot_oracle(const Real& t) {
  const Real X = 60 / t < 40 ? Real(40) : 60 / t;
  auto g = [&](const Real& x) {
    if (x == 0) return Real(-1);
    if (x < 1) return 2 * oracle::theta_sum(1 / (x * x)) / x - 1;  // modular form
    return 2 * oracle::theta_sum(x * x) - 1 / x;
  };
  const Complex head = oracle::simpson([&](const Real& x) { return Complex(mp::cos(x * t) * g(x)); },
                                       0, X, 40000);
  // Ci(z) = f(z) sin z / z... via the asymptotic auxiliary series, accurate for z >= 40
  const Real z = X * t;
  Real f = 0;
  Real gsum = 0;
  Real term = 1;
  for (int k = 0; k < 30; ++k) {
    f += (k % 2 == 0 ? 1 : -1) * term;
    term *= Real((2 * k + 1) * (2 * k + 2)) / (z * z);
  }
  term = 1 / z;
  for (int k = 0; k < 30; ++k) {
    gsum += (k % 2 == 0 ? 1 : -1) * term;
    term *= Real((2 * k + 2) * (2 * k + 3)) / (z * z);
  }
  const Real ci = f * mp::sin(z) / z - gsum * mp::cos(z) / z;
  return head.real() + ci;
}

TEST(IDot, ContourShiftInvariance) {
  const auto a = i_dot(1, Real("0.5"), coarse);
  const auto b = i_dot(1, Real("0.3"), coarse);
  EXPECT_LT(std::abs(a.value - b.value), Real("1e-8"));
}

TEST(IDot, AgreesWithCosineInversionOracle) {
  for (const char* t : {"1", "3"}) {
    const auto r = i_dot(Real(t), Real("0.5"), coarse);
    EXPECT_LT(mp::abs(r.value.real() - idot_oracle(Real(t))), Real("1e-8")) << t;
  }
}

TEST(IDot, SmallAtLargeArgument) {
  const auto far = i_dot(50, Real("0.5"), coarse);
  const auto near = i_dot(1, Real("0.5"), coarse);
  EXPECT_LT(mp::abs(far.value.real()), mp::abs(near.value.real()) / 10);
  EXPECT_LT(mp::abs(far.value.real() - idot_oracle(50)), Real("1e-8"));
}

TEST(IDot, Preconditions) {
  EXPECT_THROW(i_dot(0, Real("0.5"), coarse), DomainError);
  EXPECT_THROW(i_dot(-1, Real("0.5"), coarse), DomainError);
  EXPECT_THROW(i_dot(1, Real("1.2"), coarse), DomainError);
  EXPECT_THROW(i_dot(1, Real(0), coarse), DomainError);
}

TEST(IDot, TableMatchesDirectContour) {
  const IDotTable table(Real("0.5"), Real("0.5"), 10, coarse);
  for (const char* t : {"0.5", "2", "9.5"}) {
    EXPECT_LT(mp::abs(table(Real(t)) - i_dot(Real(t), Real("0.5"), coarse).value.real()), Real("1e-9"));
  }
}

TEST(IDot, CosineReconstruction) {
  const PrecisionConfig loose = default_precision().with_tolerance(Real("1e-7"), Real("1e-7"));
  const Real x(1);
  const auto r = idot_cosine_transform(x, Real("0.5"), loose);
  const Real target = 2 * oracle::theta_sum(x * x) - 1 / x;
  EXPECT_LT(mp::abs(r.integral.value.real() - idot_cosine_normalization * target), Real("1e-5"));
  EXPECT_GT(r.upper, 0);
}

}  // namespace
