#include "xiforge/contour.hpp"

#include "xiforge/errors.hpp"
#include "xiforge/special.hpp"
#include "xiforge/theta.hpp"

#include <cmath>

namespace xiforge {

namespace mp = boost::multiprecision;

void MuntzParams::validate() const {
  if (!(a > 0)) throw DomainError("Muntz parameters: a must be positive");
  if (!(z > 0)) throw DomainError("Muntz parameters: z must be positive");
  if (!(sigma_line > 0 && sigma_line < 1)) {
    throw DomainError("Muntz parameters: the contour abscissa must lie in (0, 1)");
  }
  if (!(v.sigma() > 1)) throw DomainError("Muntz parameters: Re v must exceed 1");
}

namespace {

// Gamma(s/2) zeta(s)
Complex gamma_zeta(const Complex& s, const PrecisionConfig& cfg) {
  return gamma(ComplexPoint(s / Real(2)), cfg) * zeta(ComplexPoint(s), cfg);
}

}  // namespace

IntegrationResult muntz_instance(const Real& x, const MuntzParams& p, const PrecisionConfig& cfg) {
  p.validate();
  if (!(x > 0)) throw DomainError("muntz_instance: requires x > 0");
  const Real log_scale = mp::log(mp::sqrt(p.a) * x);
  auto f = [&](const Complex& s) { return gamma_zeta(s, cfg) * cexp(-s * log_scale); };
  return integrate_vertical_line(f, p.sigma_line, cfg);
}

Real muntz_theta_side(const Real& x, const Real& a, const PrecisionConfig& cfg) {
  if (!(x > 0) || !(a > 0)) throw DomainError("muntz_theta_side: requires x > 0 and a > 0");
  const Real eps = cfg.epsilon() / 10;
  Real sum = 0;
  for (long n = 1; n <= cfg.series_trunc_max; ++n) {
    const Real term = mp::exp(-a * Real(n) * Real(n) * x * x);
    sum += term;
    if (term <= eps * sum || term == 0) break;
  }
  return sum - mp::sqrt(constants::pi / a) / (2 * x);
}

IntegrationResult muntz_integrated(const MuntzParams& p, const PrecisionConfig& cfg) {
  p.validate();
  if (!(p.v.sigma() > p.sigma_line)) {
    throw DomainError("muntz_integrated: requires Re(v) > sigma_line");
  }
  const Complex v = p.v.value();
  const Real log_z = mp::log(p.z);
  const Real log_scale = mp::log(mp::sqrt(p.a) * p.z);
  auto f = [&](const Complex& s) {
    return gamma_zeta(s, cfg) * cexp(-s * log_scale) / (v - s);
  };
  IntegrationResult r = integrate_vertical_line(f, p.sigma_line, cfg);
  const Complex zv = cexp(v * log_z);
  r.value *= zv;
  r.abs_error_estimate *= std::abs(zv);
  return r;
}

Complex muntz_integrated_series(const MuntzParams& p, GammaArgReading reading,
                                const PrecisionConfig& cfg) {
  p.validate();
  const Complex v = p.v.value();
  const ComplexPoint half_v(v / Real(2));
  const Real w = reading == GammaArgReading::z_squared ? p.z * p.z : p.z;
  const Real reach = std::abs(half_v.value() - Real(1));
  const Real target = cfg.target_abs_tol / 10;

  // Direct lower incomplete gammas while the argument is moderate.
  Complex lower_sum{0, 0};
  Complex head{0, 0};  // sum of n^{-v} over the direct range
  long n = 1;
  for (;; ++n) {
    const Real x = p.a * w * Real(n) * Real(n);
    if (x > 2 * reach + 1) break;
    const Complex pw = cexp(-v * mp::log(Real(n)));
    head += pw;
    lower_sum += pw * lower_inc_gamma(half_v, x, cfg);
  }
  // Remaining terms: Gamma(v/2) (zeta(v) - head) minus the upper incomplete gammas.
  Complex upper_sum{0, 0};
  for (long m = n;; ++m) {
    if (m > cfg.series_trunc_max) {
      throw ConvergenceError("muntz_integrated_series: truncation exceeded series_trunc_max");
    }
    const Real x = p.a * w * Real(m) * Real(m);
    upper_sum += cexp(-v * mp::log(Real(m))) * upper_inc_gamma(half_v, x, cfg);
    const Real next = p.a * w * Real(m + 1) * Real(m + 1);
    const Real bound = mp::pow(Real(m + 1), -p.v.sigma()) * mp::pow(next, half_v.sigma() - 1) *
                       mp::exp(-next) / (1 - reach / next);
    if (2 * bound < target) break;
  }
  const Complex completed =
      gamma(half_v, cfg) * (zeta(p.v, cfg) - head) - upper_sum;
  const Complex prefactor = cexp(-half_v.value() * mp::log(p.a)) / Real(2);
  const Complex polar = cexp((v - Real(1)) * mp::log(p.z)) * mp::sqrt(constants::pi / p.a) /
                        (Real(2) * (v - Real(1)));
  return prefactor * (lower_sum + completed) - polar;
}

Complex idot_mellin(const Complex& s, const PrecisionConfig& cfg) {
  // 2 xi(s) / (s (s - 1)) = pi^{-s/2} Gamma(s/2) zeta(s), which stays finite at s = 0, 1
  const Complex completed = cexp(-s * constants::ln_pi / Real(2)) * gamma_zeta(s, cfg);
  return completed * gamma(ComplexPoint(s), cfg) * ccos(constants::pi * s / Real(2));
}

namespace {

void check_strip(const Real& c, const char* who) {
  if (!(c > 0 && c < 1)) {
    throw DomainError(std::string(who) + ": the line Re s = c must satisfy 0 < c < 1");
  }
}

}  // namespace

IntegrationResult i_dot(const Real& t, const Real& c, const PrecisionConfig& cfg) {
  check_strip(c, "i_dot");
  if (!(t > 0)) throw DomainError("i_dot: requires t > 0");
  const Real log_t = mp::log(t);
  auto f = [&](const Complex& s) { return idot_mellin(s, cfg) * cexp(-s * log_t); };
  return integrate_vertical_line(f, c, cfg);
}

IDotTable::IDotTable(const Real& c, const Real& t_lo, const Real& t_hi,
                     const PrecisionConfig& cfg)
    : t_lo_(t_lo), t_hi_(t_hi) {
  check_strip(c, "IDotTable");
  if (!(t_lo > 0 && t_hi >= t_lo)) throw DomainError("IDotTable: requires 0 < t_lo <= t_hi");
  const Real rate = std::max(mp::abs(mp::log(t_lo)), mp::abs(mp::log(t_hi)));
  table_ = std::make_shared<const LineTable>(
      [&](const Complex& s) { return idot_mellin(s, cfg); }, c, rate, cfg);
  fast_ = cfg.target_abs_tol >= Real("1e-15");
  if (fast_) {
    for (std::size_t j = 0; j < table_->nodes().size(); ++j) {
      fast_nodes_.push_back(static_cast<long double>(table_->nodes()[j]));
      fast_re_.push_back(static_cast<long double>(table_->weighted_values()[j].real()));
      fast_im_.push_back(static_cast<long double>(table_->weighted_values()[j].imag()));
    }
  }
}

Real IDotTable::operator()(const Real& t) const {
  if (!(t >= t_lo_ && t <= t_hi_)) throw DomainError("IDotTable: t outside the tabulated range");
  const Real log_t = mp::log(t);
  const Real amplitude = mp::exp(-table_->sigma() * log_t);
  const auto& nodes = table_->nodes();
  const auto& weighted = table_->weighted_values();
  // Only the real part survives: M(conj s) = conj M(s).
  if (fast_) {
    const long double lt = static_cast<long double>(log_t);
    long double acc = 0;
    for (std::size_t j = 0; j < fast_nodes_.size(); ++j) {
      const long double ph = fast_nodes_[j] * lt;
      acc += fast_re_[j] * std::cos(ph) + fast_im_[j] * std::sin(ph);
    }
    return amplitude * Real(acc) / constants::two_pi;
  }
  Real sum = 0;
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    Real phase = nodes[j] * log_t;
    phase -= constants::two_pi * mp::round(phase / constants::two_pi);
    const long double ph = static_cast<long double>(phase);
    sum += weighted[j].real() * Real(std::cos(ph)) + weighted[j].imag() * Real(std::sin(ph));
  }
  return amplitude * sum / constants::two_pi;
}

std::vector<CosineReconstruction> idot_cosine_transform(const std::vector<Real>& xs,
                                                        const Real& c,
                                                        const PrecisionConfig& cfg) {
  check_strip(c, "idot_cosine_transform");
  const Real tol = cfg.target_abs_tol;
  // Near 0, I-dot ~ log t, so [0, eps] contributes about eps (|log eps| + 2).
  Real eps = Real("1e-3");
  while (eps * (mp::abs(mp::log(eps)) + 2) > tol / 10) eps /= 10;
  const Real cap = 256;
  const IDotTable table(c, eps, cap, cfg.loosened(tol / 100));

  Real upper = 2;
  Real envelope = 0;
  for (;; upper *= 2) {
    envelope = 0;
    for (const char* f : {"1", "1.25", "1.5", "2"}) {
      envelope = std::max(envelope, mp::abs(table(upper * Real(f))));
    }
    if (envelope * upper < tol / 10 || upper * 2 > cap) break;
  }

  Real x_max = 1;
  for (const Real& x : xs) x_max = std::max(x_max, mp::abs(x));
  std::vector<Real> cuts;
  for (Real t = eps; t < 1; t *= 2) cuts.push_back(t);
  const long steps = static_cast<long>(mp::ceil((upper - 1) * 2 * x_max));
  for (long i = 0; i <= steps; ++i) cuts.push_back(1 + (upper - 1) * Real(i) / Real(steps));
  const FixedMesh mesh = fixed_mesh(cuts);
  std::vector<Real> samples;
  samples.reserve(mesh.nodes.size());
  for (const Real& t : mesh.nodes) samples.push_back(table(t));

  const Real dropped = eps * (mp::abs(mp::log(eps)) + 2) + envelope * upper;
  std::vector<CosineReconstruction> out;
  for (const Real& x : xs) {
    std::vector<Complex> values;
    values.reserve(samples.size());
    for (std::size_t j = 0; j < samples.size(); ++j) {
      values.emplace_back(mp::cos(x * mesh.nodes[j]) * samples[j], 0);
    }
    CosineReconstruction r;
    r.integral = integrate_samples(mesh, values);
    r.integral.abs_error_estimate += dropped;
    r.integral.evaluations += table.table().evaluations();
    r.integral.converged = r.integral.abs_error_estimate <= tol;
    if (!r.integral.converged) {
      r.integral.diagnostic = "cosine transform of I-dot: error estimate " +
                              format_real(r.integral.abs_error_estimate, 6) +
                              " above tolerance";
    }
    r.upper = upper;
    r.envelope_at_upper = envelope;
    out.push_back(std::move(r));
  }
  return out;
}

CosineReconstruction idot_cosine_transform(const Real& x, const Real& c,
                                           const PrecisionConfig& cfg) {
  return idot_cosine_transform(std::vector<Real>{x}, c, cfg).front();
}

}  // namespace xiforge
