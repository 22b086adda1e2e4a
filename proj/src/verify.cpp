#include "xiforge/verify.hpp"

#include "xiforge/contour.hpp"
#include "xiforge/errors.hpp"
#include "xiforge/lfun.hpp"
#include "xiforge/quad_field.hpp"
#include "xiforge/special.hpp"
#include "xiforge/theta.hpp"
#include "xiforge/transforms.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <memory>
#include <mutex>
#include <random>
#include <regex>
#include <sstream>
#include <thread>

namespace xiforge {

namespace mp = boost::multiprecision;

Complex parse_complex(const std::string& text) {
  static const std::regex pattern(
      R"(^\s*([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?\s*(?:([+-])\s*((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?\s*i)?\s*$)");
  static const std::regex pure_imag(R"(^\s*([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?\s*i\s*$)");
  std::smatch m;
  if (std::regex_match(text, m, pure_imag)) {
    const std::string im = m[1].matched ? m[1].str() : "1";
    if (im == "+" || im == "-") return {0, Real(im + "1")};
    return {0, Real(im)};
  }
  if (std::regex_match(text, m, pattern) && (m[1].matched || m[2].matched)) {
    const Real re = m[1].matched ? Real(m[1].str()) : Real(0);
    Real im = 0;
    if (m[2].matched) {
      im = m[3].matched ? Real(m[3].str()) : Real(1);
      if (m[2].str() == "-") im = -im;
    }
    return {re, im};
  }
  throw UsageError("cannot parse '" + text + "' as a number (forms: 2, -1.5, 3+1i, 0.5-14.1i)");
}

namespace {

// ---------------------------------------------------------------------------
// parameter access

class Args {
 public:
  Args(const std::string& id, Params values) : id_(id), values_(std::move(values)) {}

  const std::string& text(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) throw UsageError(id_ + ": missing parameter '" + key + "'");
    return it->second;
  }
  Complex complex(const std::string& key) const { return parse_complex(text(key)); }
  Real real(const std::string& key) const {
    const Complex z = complex(key);
    if (z.imag() != 0) throw UsageError(id_ + ": parameter '" + key + "' must be real");
    return z.real();
  }
  long integer(const std::string& key) const {
    const std::string& t = text(key);
    try {
      std::size_t used = 0;
      const long v = std::stol(t, &used);
      if (used == t.size()) return v;
    } catch (const std::exception&) {
    }
    throw UsageError(id_ + ": parameter '" + key + "' must be an integer");
  }
  std::vector<Real> real_list(const std::string& key) const {
    std::vector<Real> out;
    std::stringstream ss(text(key));
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_complex(item).real());
    if (out.empty()) throw UsageError(id_ + ": parameter '" + key + "' is an empty list");
    return out;
  }

 private:
  std::string id_;
  Params values_;
};

struct Outcome {
  Complex lhs;
  Complex rhs;
  std::string notes;
};

std::string fmt(const Real& x, int digits = 12) { return format_real(x, digits); }
std::string fmt(const Complex& z, int digits = 12) { return format_complex(z, digits); }

// ---------------------------------------------------------------------------
// shared Hecke data (coefficients are built once per discriminant)

constexpr long kCoefficientCount = 20000;

const HeckeData& hecke_data(long D, const std::string& chi_label) {
  static std::mutex guard;
  static std::map<std::pair<long, std::string>, std::unique_ptr<HeckeData>> cache;
  static std::map<long, std::shared_ptr<HeckeCoefficients>> coefficient_cache;
  std::lock_guard<std::mutex> lock(guard);
  const auto key = std::make_pair(D, chi_label);
  if (auto it = cache.find(key); it != cache.end()) return *it->second;
  const QuadFieldData field = build_field(D);
  auto& coeffs = coefficient_cache[D];
  if (!coeffs) coeffs = std::make_shared<HeckeCoefficients>(hecke_coefficients(field, kCoefficientCount));
  for (const ClassCharacter& chi : characters(field)) {
    if (chi.label == chi_label) {
      auto data = std::make_unique<HeckeData>(field, chi, *coeffs);
      return *cache.emplace(key, std::move(data)).first->second;
    }
  }
  std::string labels;
  for (const ClassCharacter& chi : characters(field)) labels += " " + chi.label;
  throw UsageError("no built-in character '" + chi_label + "' for D = " + std::to_string(D) +
                   " (available:" + labels + ")");
}

const HeckeData& hecke_from(const Args& a) { return hecke_data(a.integer("D"), a.text("chi")); }

PrecisionConfig budget(const PrecisionConfig& cfg, double tolerance) {
  return cfg.loosened(Real(tolerance) / 100);
}

// ---------------------------------------------------------------------------
// identities

using Runner = std::function<Outcome(const Args&, const PrecisionConfig&)>;

struct Entry {
  IdentityInfo info;
  Runner run;
};

std::string kddot_findings(const PrecisionConfig& cfg) {
  const Real at_zero = kddot(Real(0), cfg);
  int increasing = 0;
  const int probes = 30;
  const Real h = Real("1e-4");
  for (int i = 1; i <= probes; ++i) {
    const Real x = Real(3) * i / (probes + 1);
    if (kddot_stable(x + h, cfg) > kddot_stable(x - h, cfg)) ++increasing;
  }
  return "kddot(0) = " + fmt(at_zero, 10) + (at_zero < 0 ? " (negative)" : " (positive)") +
         "; central differences on (0,3): increasing at " + std::to_string(increasing) + "/" +
         std::to_string(probes) + " probes";
}

std::vector<Entry> build_registry() {
  std::vector<Entry> r;
  auto add = [&r](std::string id, std::string summary, Params defaults, double tol, Runner run) {
    r.push_back({{std::move(id), std::move(summary), std::move(defaults), tol}, std::move(run)});
  };

  // --- special functions ----------------------------------------------------
  add("gamma.recurrence", "Gamma(s+1) = s Gamma(s)", {{"s", "2.5+1i"}}, 1e-10,
      [](const Args& a, const PrecisionConfig& cfg) {
        const Complex s = a.complex("s");
        return Outcome{gamma(ComplexPoint(s + Real(1)), cfg), s * gamma(ComplexPoint(s), cfg), ""};
      });
  add("inc_gamma.split", "gamma(s,x) + Gamma(s,x) = Gamma(s)", {{"s", "1.5+2i"}, {"x", "3"}},
      1e-10, [](const Args& a, const PrecisionConfig& cfg) {
        const ComplexPoint s(a.complex("s"));
        const Real x = a.real("x");
        return Outcome{lower_inc_gamma(s, x, cfg) + upper_inc_gamma(s, x, cfg), gamma(s, cfg), ""};
      });
  add("zeta.special_value", "zeta at s in {2, 4, 0, -1} against closed forms", {{"s", "2"}},
      1e-12, [](const Args& a, const PrecisionConfig& cfg) {
        const long s = a.integer("s");
        const Real pi2 = constants::pi * constants::pi;
        Real want;
        switch (s) {
          case 2: want = pi2 / 6; break;
          case 4: want = pi2 * pi2 / 90; break;
          case 0: want = -constants::half; break;
          case -1: want = Real(-1) / 12; break;
          default: throw UsageError("zeta.special_value: s must be one of 2, 4, 0, -1");
        }
        return Outcome{zeta(ComplexPoint(Real(s), Real(0)), cfg), Complex(want, 0), ""};
      });
  add("theta.modular", "2 psi(1/x) + 1 = sqrt(x) (2 psi(x) + 1), both sides summed directly",
      {{"x", "0.5"}}, 1e-12, [](const Args& a, const PrecisionConfig& cfg) {
        const Real x = a.real("x");
        const Real lhs = 2 * psi_series(ThetaArg(1 / x), cfg) + 1;
        const Real rhs = mp::sqrt(x) * (2 * psi_series(ThetaArg(x), cfg) + 1);
        return Outcome{Complex(lhs, 0), Complex(rhs, 0), ""};
      });
  add("xi.functional_equation", "xi(s) = xi(1 - s)", {{"s", "0.3+7i"}}, 1e-10,
      [](const Args& a, const PrecisionConfig& cfg) {
        const ComplexPoint s(a.complex("s"));
        return Outcome{xi_value(s, cfg), xi_value(s.reflected(), cfg), ""};
      });
  add("xi.inc_gamma_expansion",
      "1/(s(s-1)) + incomplete-gamma sums at s and 1-s = pi^{-s/2} Gamma(s/2) zeta(s)",
      {{"s", "0.3+4i"}}, 1e-10, [](const Args& a, const PrecisionConfig& cfg) {
        const ComplexPoint s(a.complex("s"));
        const Complex z = s.value();
        const Complex direct = cexp(-z * constants::ln_pi / Real(2)) *
                               gamma(ComplexPoint(z / Real(2)), cfg) * zeta(s, cfg);
        return Outcome{xi_inc_gamma_expansion(s, cfg), direct, ""};
      });

  // --- Lambda and Upsilon ---------------------------------------------------
  add("lambda_transform.cross_route",
      "int lambda(t) cos(xt)/(t^2+1/4) dt = (pi/2)(e^{x/2} - 2 e^{-x/2} psi(e^{-2x}))",
      {{"x", "1"}}, 1e-8, [](const Args& a, const PrecisionConfig& cfg) {
        const Real x = a.real("x");
        const TransformPair p = lambda_transform(x, cfg);
        const Real scaled = p.closed_form.real() / (constants::pi / 2 * mp::exp(-mp::abs(x) / 2));
        return Outcome{p.quadrature.value, p.closed_form,
                       "Lambda(x) / ((pi/2) e^{-|x|/2}) = " + fmt(scaled, 10) +
                           "; Lambda decays, it is even in x"};
      });
  add("upsilon.cross_route", "Upsilon(s): kernel quadrature = closed form", {{"s", "2"}}, 1e-6,
      [](const Args& a, const PrecisionConfig& cfg) {
        const ComplexPoint s(a.complex("s"));
        const ClosedForm c = upsilon_closed_form(s, cfg);
        return Outcome{upsilon_quadrature(s, cfg).value, c.value, c.warning};
      });
  add("upsilon.laplace_bridge", "Laplace transform of Lambda at s - 1/2 = Upsilon(s) closed form",
      {{"s", "2"}}, 1e-6, [](const Args& a, const PrecisionConfig& cfg) {
        const ComplexPoint s(a.complex("s"));
        return Outcome{laplace_of_lambda(s, cfg).value, upsilon_closed_form(s, cfg).value,
                       ""};
      });
  add("upsilon.antisymmetry", "Upsilon(s) = -Upsilon(1 - s) by quadrature", {{"s", "2"}}, 2e-8,
      [](const Args& a, const PrecisionConfig& cfg) {
        const ComplexPoint s(a.complex("s"));
        return Outcome{upsilon_quadrature(s, cfg).value,
                       -upsilon_quadrature(s.reflected(), cfg).value,
                       "tolerance is twice the quadrature tolerance"};
      });

  // --- Muntz instance -------------------------------------------------------
  add("muntz.instance",
      "(1/2 pi i) int Gamma(s/2) zeta(s) (sqrt(a) x)^{-s} ds = 2 (sum e^{-a n^2 x^2} - sqrt(pi/a)/(2x))",
      {{"x", "1"}, {"a", "3.14159265358979323846264338327950288"}, {"sigma", "0.5"}}, 1e-8,
      [](const Args& a, const PrecisionConfig& cfg) {
        MuntzParams p;
        p.a = a.real("a");
        p.sigma_line = a.real("sigma");
        const Real x = a.real("x");
        const IntegrationResult lhs = muntz_instance(x, p, cfg);
        const Real theta = muntz_theta_side(x, p.a, cfg);
        return Outcome{lhs.value, Complex(muntz_normalization * theta, 0),
                       "contour / (theta sum - sqrt(pi/a)/(2x)) = " +
                           fmt(lhs.value.real() / theta, 12)};
      });
  add("muntz.contour_shift", "Muntz contour value is the same on two lines in (0, 1)",
      {{"x", "1"}, {"a", "3.14159265358979323846264338327950288"}, {"sigma", "0.3"},
       {"sigma2", "0.7"}},
      1e-8, [](const Args& a, const PrecisionConfig& cfg) {
        MuntzParams p;
        p.a = a.real("a");
        p.sigma_line = a.real("sigma");
        MuntzParams q = p;
        q.sigma_line = a.real("sigma2");
        const Real x = a.real("x");
        return Outcome{muntz_instance(x, p, cfg).value, muntz_instance(x, q, cfg).value, ""};
      });
  add("muntz.integrated",
      "z^v (1/2 pi i) int Gamma(s/2) zeta(s) (sqrt(a) z)^{-s}/(v-s) ds = 2 x lower-gamma series",
      {{"a", "3.14159265358979323846264338327950288"}, {"z", "1"}, {"v", "3"}, {"sigma", "0.5"}},
      1e-8, [](const Args& a, const PrecisionConfig& cfg) {
        MuntzParams p;
        p.a = a.real("a");
        p.z = a.real("z");
        p.v = ComplexPoint(a.complex("v"));
        p.sigma_line = a.real("sigma");
        const Complex lhs = muntz_integrated(p, cfg).value;
        const Complex sq = muntz_integrated_series(p, GammaArgReading::z_squared, cfg);
        const Complex lin = muntz_integrated_series(p, GammaArgReading::z_linear, cfg);
        const Real miss_sq = std::abs(lhs - muntz_normalization * sq);
        const Real miss_lin = std::abs(lhs - muntz_normalization * lin);
        std::string notes = "gamma argument a z^2 n^2: |diff| = " + fmt(miss_sq, 4) +
                            "; a z n^2: |diff| = " + fmt(miss_lin, 4) + "; matching reading: ";
        notes += miss_sq <= miss_lin ? "a z^2 n^2" : "a z n^2";
        if (p.z == 1) notes += " (readings coincide at z = 1)";
        return Outcome{lhs, muntz_normalization * sq, notes};
      });
  add("muntz.upsilon_bridge",
      "integrated Muntz contour at a = pi, z = 1, sigma = 1/2 equals -(2/pi) Upsilon(v)",
      {{"v", "2"}}, 1e-8, [](const Args& a, const PrecisionConfig& cfg) {
        MuntzParams p;
        p.v = ComplexPoint(a.complex("v"));
        const Complex lhs = muntz_integrated(p, cfg).value;
        const Complex upsilon = upsilon_closed_form(p.v, cfg).value;
        return Outcome{lhs, -Real(2) / constants::pi * upsilon,
                       "contour / Upsilon(v) = " + fmt(lhs / upsilon, 12)};
      });

  // --- Hecke L-data ---------------------------------------------------------
  const Params hecke_defaults{{"D", "-4"}, {"chi", "trivial"}};
  auto with = [&hecke_defaults](Params extra) {
    Params p = hecke_defaults;
    for (auto& [k, v] : extra) p[k] = v;
    return p;
  };
  add("quad_field.coefficients",
      "ideal counts from reduced forms = sum_{d | n} kronecker(D, d) for every n <= n_max",
      {{"D", "-4"}, {"n_max", "10000"}}, 0.5, [](const Args& a, const PrecisionConfig&) {
        const QuadFieldData field = build_field(a.integer("D"));
        const long n_max = a.integer("n_max");
        const HeckeCoefficients c = hecke_coefficients(field, n_max);
        long mismatches = 0;
        long first_bad = 0;
        for (long n = 1; n <= n_max; ++n) {
          if (c.total(n) != divisor_kronecker_sum(field.D, n)) {
            if (mismatches++ == 0) first_bad = n;
          }
        }
        std::string notes = "h = " + std::to_string(field.class_number) + ", exact integer comparison";
        if (mismatches > 0) notes += "; first mismatch at n = " + std::to_string(first_bad);
        return Outcome{Complex(Real(mismatches), 0), Complex(0, 0), notes};
      });
  add("omega.series_agreement",
      "(2 pi)^{-s} Gamma(s) |D|^{s/2} L_K(s) from the Dirichlet series = incomplete-gamma expansion",
      with({{"s", "4"}}), 1e-8, [](const Args& a, const PrecisionConfig& cfg) {
        const HeckeData& d = hecke_from(a);
        const ComplexPoint s(a.complex("s"));
        const OmegaValue series = omega_from_series(s, d, cfg);
        const LSeriesValue l = l_series(s, d, cfg);
        return Outcome{series.omega, omega_inc_gamma_expansion(s, d, cfg).omega,
                       "series terms " + std::to_string(l.terms) + ", rigorous tail bound " +
                           fmt(l.tail_bound, 3) + ", tail estimate " + fmt(l.tail_estimate, 3)};
      });
  add("omega.route_agreement", "Hecke integral representation = incomplete-gamma expansion",
      with({{"s", "2"}}), 1e-8, [](const Args& a, const PrecisionConfig& cfg) {
        const HeckeData& d = hecke_from(a);
        const ComplexPoint s(a.complex("s"));
        return Outcome{omega_integral_rep(s, d, cfg).omega,
                       omega_inc_gamma_expansion(s, d, cfg).omega,
                       "pole term h delta / (w s (s-1)), w = " +
                           std::to_string(d.field().unit_count)};
      });
  add("omega.functional_equation", "Omega_K(s) = Omega_K(1 - s) along one continued route",
      with({{"s", "2+1i"}, {"route", "integral_rep"}}), 1e-9,
      [](const Args& a, const PrecisionConfig& cfg) {
        const HeckeData& d = hecke_from(a);
        const ComplexPoint s(a.complex("s"));
        const std::string& route = a.text("route");
        std::function<OmegaValue(const ComplexPoint&)> eval;
        if (route == "integral_rep") {
          eval = [&](const ComplexPoint& p) { return omega_integral_rep(p, d, cfg); };
        } else if (route == "inc_gamma_expansion") {
          eval = [&](const ComplexPoint& p) { return omega_inc_gamma_expansion(p, d, cfg); };
        } else {
          throw UsageError("omega.functional_equation: route is integral_rep or inc_gamma_expansion");
        }
        return Outcome{eval(s).omega, eval(s.reflected()).omega, ""};
      });
  add("hecke.cosine_transform",
      "int_0^inf Omega_K(1/2+it) cos(xt) dt = pi (e^{-x/2} Psi(e^{-x}) - h delta e^{x/2} / w)",
      with({{"x", "1"}}), 1e-5, [](const Args& a, const PrecisionConfig& cfg) {
        const HeckeData& d = hecke_from(a);
        const HeckeTransform t = hecke_cosine_transform(a.real("x"), d, cfg);
        const Complex ratio = t.quadrature.value / t.closed.alternate;
        return Outcome{t.quadrature.value, t.closed.derived,
                       "quadrature / ((pi/2)(h delta e^{x/2}/w - e^{-x/2} Psi(e^{-x}))) = " +
                           fmt(ratio.real(), 10) + "; D-bar = w = " +
                           std::to_string(d.field().unit_count)};
      });
  add("frak_upsilon.cross_route",
      "int_0^inf Omega_K(1/2+it) Kbar(s,t) dt = pi (Omega(s) - sum chi beta^{-s} Gamma(s,beta) - h delta/(w(s-1)))",
      with({{"s", "2"}}), 1e-5, [](const Args& a, const PrecisionConfig& cfg) {
        const HeckeData& d = hecke_from(a);
        const ComplexPoint s(a.complex("s"));
        const Complex q = frak_upsilon_quadrature(s, d, cfg).value;
        const FrakUpsilonClosed c = frak_upsilon_closed_form(s, d, cfg);
        std::string notes = "quadrature / ((pi/2)(h delta/(w(s-1)) - Omega + sum)) = " +
                            fmt((q / c.forms.alternate).real(), 10);
        if (!c.warning.empty()) notes += "; " + c.warning;
        return Outcome{q, c.forms.derived, notes};
      });
  add("frak_upsilon.antisymmetry", "frak-Upsilon(s) = -frak-Upsilon(1 - s) by quadrature",
      with({{"s", "2"}}), 1e-5, [](const Args& a, const PrecisionConfig& cfg) {
        const HeckeData& d = hecke_from(a);
        const ComplexPoint s(a.complex("s"));
        return Outcome{frak_upsilon_quadrature(s, d, cfg).value,
                       -frak_upsilon_quadrature(s.reflected(), d, cfg).value, ""};
      });

  // --- I-dot, I-double-dot, kernel --------------------------------------------
  add("idot.contour_shift", "I-dot(t) is the same on two lines 0 < c < 1",
      {{"t", "1"}, {"c", "0.3"}, {"c2", "0.7"}}, 1e-8,
      [](const Args& a, const PrecisionConfig& cfg) {
        const Real t = a.real("t");
        return Outcome{i_dot(t, a.real("c"), cfg).value, i_dot(t, a.real("c2"), cfg).value, ""};
      });
  add("idot.cosine_reconstruction",
      "int_0^inf cos(xt) I-dot(t) dt = (pi/2)(2 psi(x^2) - 1/x)", {{"x", "1"}, {"c", "0.5"}},
      1e-5, [](const Args& a, const PrecisionConfig& cfg) {
        const Real x = a.real("x");
        const CosineReconstruction r = idot_cosine_transform(x, a.real("c"), cfg);
        const Real target = 2 * psi(ThetaArg(x * x), cfg) - 1 / x;
        return Outcome{r.integral.value, Complex(idot_cosine_normalization * target, 0),
                       "integral / (2 psi(x^2) - 1/x) = " +
                           fmt(r.integral.value.real() / target, 10) + "; truncated at U = " +
                           fmt(r.upper, 4) + " where |I-dot| <= " + fmt(r.envelope_at_upper, 3)};
      });
  add("iddot.companion", "I-double-dot(t) = kappa lambda(t)/(t^2+1/4), kappa the observed sign",
      {{"t", "1"}}, 1e-4, [](const Args& a, const PrecisionConfig& cfg) {
        const Real t = a.real("t");
        const Real lhs = i_ddot(t, cfg).value.real();
        const Real companion = i_ddot_companion(t, cfg);
        const int kappa = (lhs * companion < 0) ? -1 : 1;
        return Outcome{Complex(lhs, 0), Complex(kappa * companion, 0),
                       "kappa = " + std::to_string(kappa) + "; ratio = " + fmt(lhs / companion, 10)};
      });
  add("iddot.global_sign",
      "one sign kappa with I-double-dot(t) = kappa lambda(t)/(t^2+1/4) for every listed t",
      {{"ts", "0,1,2,5,10"}}, 1e-4, [](const Args& a, const PrecisionConfig& cfg) {
        const std::vector<Real> ts = a.real_list("ts");
        int kappa = 0;
        Real worst = -1;
        Outcome out{};
        for (const Real& t : ts) {
          const Real lhs = i_ddot(t, cfg).value.real();
          const Real companion = i_ddot_companion(t, cfg);
          if (kappa == 0) kappa = (lhs * companion < 0) ? -1 : 1;
          const Real diff = mp::abs(lhs - kappa * companion);
          if (diff > worst) {
            worst = diff;
            out.lhs = Complex(lhs, 0);
            out.rhs = Complex(kappa * companion, 0);
            out.notes = "worst t = " + fmt(t, 6);
          }
        }
        out.notes = "kappa = " + std::to_string(kappa) + " fixed at t = " + fmt(ts.front(), 6) +
                    "; " + out.notes;
        return out;
      });
  add("iddot.from_idot",
      "outer transform with the inner integral taken from contour I-dot = (pi/2) I-double-dot(t)",
      {{"t", "1"}, {"c", "0.5"}}, 1e-4, [](const Args& a, const PrecisionConfig& cfg) {
        const Real t = a.real("t");
        const IntegrationResult spot = i_ddot_from_idot({t}, a.real("c"), cfg).front();
        const Real closed = i_ddot(t, cfg).value.real();
        return Outcome{spot.value, Complex(idot_cosine_normalization * closed, 0),
                       "contour-route / closed-inner route = " +
                           fmt(spot.value.real() / closed, 10)};
      });
  add("kddot.even", "kddot(x) = kddot(-x), theta values summed term by term", {{"x", "1"}},
      1e-12, [](const Args& a, const PrecisionConfig& cfg) {
        const Real x = a.real("x");
        return Outcome{Complex(kddot_series(x, cfg), 0), Complex(kddot_series(-x, cfg), 0),
                       kddot_findings(cfg)};
      });
  add("kddot.lambda_relation", "kddot(x) = -(2/pi) int lambda(t) cos(xt)/(t^2+1/4) dt",
      {{"x", "1"}}, 1e-8, [](const Args& a, const PrecisionConfig& cfg) {
        const Real x = a.real("x");
        const TransformPair p = lambda_transform(x, cfg);
        return Outcome{Complex(kddot(x, cfg), 0), -Real(2) / constants::pi * p.quadrature.value,
                       kddot_findings(cfg)};
      });
  return r;
}

const std::vector<Entry>& registry() {
  static const std::vector<Entry> r = build_registry();
  return r;
}

const Entry* find_entry(const std::string& id) {
  for (const Entry& e : registry()) {
    if (e.info.id == id) return &e;
  }
  return nullptr;
}

}  // namespace

const std::vector<IdentityInfo>& identity_registry() {
  static const std::vector<IdentityInfo> infos = [] {
    std::vector<IdentityInfo> out;
    for (const Entry& e : registry()) out.push_back(e.info);
    return out;
  }();
  return infos;
}

const std::map<std::string, std::string>& identity_aliases() {
  static const std::map<std::string, std::string> aliases{
      {"eq_1_2", "xi.functional_equation"},
      {"eq_1_3", "lambda_transform.cross_route"},
      {"eq_1_15", "muntz.instance"},
      {"eq_1_16", "muntz.integrated"},
      {"eq_1_19", "xi.inc_gamma_expansion"},
      {"eq_2_2.functional_equation", "omega.functional_equation"},
      {"eq_2_3", "omega.route_agreement"},
      {"eq_2_6", "hecke.cosine_transform"},
      {"eq_3_3", "idot.cosine_reconstruction"},
      {"thm1.cross_route", "upsilon.cross_route"},
      {"thm1.antisymmetry", "upsilon.antisymmetry"},
      {"thm1.laplace", "upsilon.laplace_bridge"},
      {"thm2.cross_route", "frak_upsilon.cross_route"},
      {"thm3.kernel_even", "kddot.even"},
      {"thm3.sign", "iddot.global_sign"},
  };
  return aliases;
}

std::string canonical_identity(const std::string& id) {
  const auto& aliases = identity_aliases();
  if (auto it = aliases.find(id); it != aliases.end()) return it->second;
  return id;
}

IdentityReport run_identity(const std::string& identity_id, const Params& params,
                            const PrecisionConfig& cfg) {
  const std::string id = canonical_identity(identity_id);
  const Entry* entry = find_entry(id);
  if (entry == nullptr) {
    std::string listing;
    for (const Entry& e : registry()) listing += "\n  " + e.info.id;
    for (const auto& [alias, target] : identity_aliases()) listing += "\n  " + alias + " -> " + target;
    throw UsageError("unknown identity '" + identity_id + "'; registered:" + listing);
  }
  Params merged = entry->info.defaults;
  for (const auto& [key, value] : params) {
    if (!merged.count(key)) {
      std::string known;
      for (const auto& kv : entry->info.defaults) known += " " + kv.first;
      throw UsageError(id + ": unknown parameter '" + key + "' (parameters:" + known + ")");
    }
    merged[key] = value;
  }
  const Args args(id, merged);

  IdentityReport report;
  report.identity_id = id;
  report.parameters = merged;
  report.tolerance = Real(entry->info.tolerance);
  const auto start = std::chrono::steady_clock::now();
  try {
    const Outcome o = entry->run(args, budget(cfg, entry->info.tolerance));
    report.lhs = o.lhs;
    report.rhs = o.rhs;
    report.notes = o.notes;
    report.abs_diff = std::abs(o.lhs - o.rhs);
    const Real scale = std::max(std::abs(o.lhs), std::abs(o.rhs));
    report.rel_diff = scale > 0 ? report.abs_diff / scale : Real(0);
    report.passed = report.abs_diff <= report.tolerance || report.rel_diff <= report.tolerance;
  } catch (const UsageError&) {
    throw;
  } catch (const Error& e) {
    report.abs_diff = std::numeric_limits<Real>::quiet_NaN();
    report.rel_diff = std::numeric_limits<Real>::quiet_NaN();
    report.passed = false;
    report.notes = std::string("evaluation failed: ") + e.what();
  }
  report.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"riemann", "hecke", "section3", "all"};
  return names;
}

std::vector<std::pair<std::string, Params>> suite_plan(const std::string& suite) {
  std::vector<std::pair<std::string, Params>> plan;
  auto push = [&plan](const std::string& id, Params p) { plan.emplace_back(id, std::move(p)); };
  const std::string pi = "3.14159265358979323846264338327950288";
  if (suite == "riemann" || suite == "all") {
    for (const char* s : {"2.5+1i", "0.3-4i", "-3.7+0.5i"}) push("gamma.recurrence", {{"s", s}});
    for (const char* s : {"0.5", "2+3i", "7.5-2i"}) {
      for (const char* x : {"0.5", "3", "20"}) push("inc_gamma.split", {{"s", s}, {"x", x}});
    }
    for (const char* s : {"2", "0"}) push("zeta.special_value", {{"s", s}});
    for (const char* x : {"0.1", "0.5", "0.9", "1", "1.7", "3", "10"}) {
      push("theta.modular", {{"x", x}});
    }
    // deterministic pseudo-random points in |Re s - 1/2| <= 4, |Im s| <= 30
    std::mt19937_64 gen(20240601);
    std::uniform_real_distribution<double> re(-3.5, 4.5);
    std::uniform_real_distribution<double> im(-30.0, 30.0);
    for (int i = 0; i < 10; ++i) {
      std::ostringstream s;
      s.precision(6);
      const double a = re(gen);
      const double b = im(gen);
      s << a << (b < 0 ? "-" : "+") << std::abs(b) << "i";
      push("xi.functional_equation", {{"s", s.str()}});
    }
    for (const char* s : {"2", "0.3", "0.5+14.134725i", "3+4i", "-1.5+2i", "0.7-9i"}) {
      push("xi.inc_gamma_expansion", {{"s", s}});
    }
    for (const char* x : {"0", "0.5", "1", "2", "4"}) push("lambda_transform.cross_route", {{"x", x}});
    for (const char* s : {"2", "2.5", "3", "3+1i", "4+2i"}) {
      push("upsilon.cross_route", {{"s", s}});
      push("upsilon.laplace_bridge", {{"s", s}});
    }
    for (const char* s : {"2", "3+1i"}) push("upsilon.antisymmetry", {{"s", s}});
    for (const char* a : {pi.c_str(), "2"}) {
      for (const char* x : {"0.5", "1", "2"}) {
        push("muntz.instance", {{"x", x}, {"a", a}, {"sigma", "0.5"}});
      }
    }
    push("muntz.contour_shift", {{"x", "1"}, {"a", pi}, {"sigma", "0.3"}, {"sigma2", "0.7"}});
    push("muntz.contour_shift", {{"x", "2"}, {"a", pi}, {"sigma", "0.2"}, {"sigma2", "0.8"}});
    push("muntz.integrated", {{"a", pi}, {"z", "1"}, {"v", "2"}, {"sigma", "0.5"}});
    push("muntz.integrated", {{"a", pi}, {"z", "1"}, {"v", "3"}, {"sigma", "0.5"}});
    push("muntz.integrated", {{"a", pi}, {"z", "0.1"}, {"v", "10"}, {"sigma", "0.5"}});
    push("muntz.integrated", {{"a", "2"}, {"z", "0.5"}, {"v", "3+1i"}, {"sigma", "0.4"}});
    for (const char* v : {"2", "3"}) push("muntz.upsilon_bridge", {{"v", v}});
  }
  if (suite == "hecke" || suite == "all") {
    for (const char* D : {"-3", "-4", "-7", "-8", "-11", "-15", "-20"}) {
      push("quad_field.coefficients", {{"D", D}, {"n_max", "10000"}});
    }
    const std::vector<std::pair<std::string, std::string>> instances{
        {"-3", "trivial"}, {"-4", "trivial"}, {"-20", "trivial"}, {"-20", "sign"}};
    for (const auto& [D, chi] : instances) {
      const Params base{{"D", D}, {"chi", chi}};
      auto at = [&base](std::initializer_list<std::pair<const std::string, std::string>> extra) {
        Params p = base;
        for (const auto& kv : extra) p[kv.first] = kv.second;
        return p;
      };
      push("omega.series_agreement", at({{"s", "4"}}));
      for (const char* s : {"2", "3", "0.5+5i", "0.25"}) push("omega.route_agreement", at({{"s", s}}));
      for (const char* route : {"integral_rep", "inc_gamma_expansion"}) {
        push("omega.functional_equation", at({{"s", "2+1i"}, {"route", route}}));
      }
      for (const char* x : {"0", "1", "2"}) push("hecke.cosine_transform", at({{"x", x}}));
      for (const char* s : {"2", "3"}) push("frak_upsilon.cross_route", at({{"s", s}}));
      if (D != "-3") push("frak_upsilon.antisymmetry", at({{"s", "2"}}));
    }
  }
  if (suite == "section3" || suite == "all") {
    for (const char* t : {"0.5", "1", "5"}) {
      push("idot.contour_shift", {{"t", t}, {"c", "0.3"}, {"c2", "0.7"}});
    }
    for (const char* x : {"0.8", "1", "1.5"}) {
      push("idot.cosine_reconstruction", {{"x", x}, {"c", "0.5"}});
    }
    for (const char* t : {"0", "1", "2", "5", "10"}) push("iddot.companion", {{"t", t}});
    push("iddot.global_sign", {{"ts", "0,1,2,5,10"}});
    for (const char* t : {"0", "1", "2"}) push("iddot.from_idot", {{"t", t}, {"c", "0.5"}});
    for (const char* x : {"0.5", "1", "2", "3"}) push("kddot.even", {{"x", x}});
    for (const char* x : {"0", "1"}) push("kddot.lambda_relation", {{"x", x}});
  }
  if (plan.empty()) {
    std::string names;
    for (const auto& n : suite_names()) names += " " + n;
    throw UsageError("unknown suite '" + suite + "' (suites:" + names + ")");
  }
  return plan;
}

std::vector<IdentityReport> run_suite(const std::string& suite, const PrecisionConfig& cfg,
                                      int threads) {
  const auto plan = suite_plan(suite);
  std::vector<IdentityReport> reports(plan.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < plan.size(); i = next++) {
      reports[i] = run_identity(plan[i].first, plan[i].second, cfg);
    }
  };
  const int n = std::max(1, std::min<int>(threads, static_cast<int>(plan.size())));
  std::vector<std::thread> pool;
  for (int i = 1; i < n; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return reports;
}

namespace {

nlohmann::ordered_json number_or_null(const Real& x) {
  if (mp::isnan(x) || mp::isinf(x)) return nullptr;
  return static_cast<double>(x);
}

}  // namespace

std::string report_json_line(const IdentityReport& r, bool include_timing) {
  nlohmann::ordered_json j;
  j["schema"] = kReportSchemaVersion;
  j["identity_id"] = r.identity_id;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.parameters) params[k] = v;
  j["parameters"] = params;
  j["lhs"] = {{"re", format_real(r.lhs.real(), 25)}, {"im", format_real(r.lhs.imag(), 25)}};
  j["rhs"] = {{"re", format_real(r.rhs.real(), 25)}, {"im", format_real(r.rhs.imag(), 25)}};
  j["abs_diff"] = number_or_null(r.abs_diff);
  j["rel_diff"] = number_or_null(r.rel_diff);
  j["tolerance"] = static_cast<double>(r.tolerance);
  j["passed"] = r.passed;
  j["notes"] = r.notes;
  if (include_timing) j["wall_time"] = r.wall_time;
  return j.dump();
}

void write_csv_summary(std::ostream& out, const std::vector<IdentityReport>& reports) {
  auto quoted = [](const std::string& s) {
    std::string q = "\"";
    for (char c : s) {
      if (c == '"') q += '"';
      q += c;
    }
    return q + "\"";
  };
  out << "identity_id,parameters,abs_diff,rel_diff,tolerance,passed\n";
  for (const IdentityReport& r : reports) {
    std::string params;
    for (const auto& [k, v] : r.parameters) {
      if (!params.empty()) params += ";";
      params += k + "=" + v;
    }
    out << r.identity_id << ',' << quoted(params) << ',' << format_real(r.abs_diff, 6) << ','
        << format_real(r.rel_diff, 6) << ',' << format_real(r.tolerance, 6) << ','
        << (r.passed ? "true" : "false") << '\n';
  }
}

}  // namespace xiforge
