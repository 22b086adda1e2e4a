#include "xiforge/quadrature.hpp"

#include "xiforge/errors.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace xiforge {

namespace mp = boost::multiprecision;

namespace {

// Kronrod 31 / Gauss 15 on [-1, 1]; index 0 is the centre, even indices are
// shared with the Gauss rule.
struct KronrodRule {
  static constexpr std::size_t kHalf = 16;
  std::array<Real, kHalf> nodes{};
  std::array<Real, kHalf> kronrod{};
  std::array<Real, kHalf> gauss_weight{};

  KronrodRule() {
    using boost::math::quadrature::gauss;
    using boost::math::quadrature::gauss_kronrod;
    const auto& x = gauss_kronrod<Real, 31>::abscissa();
    const auto& wk = gauss_kronrod<Real, 31>::weights();
    const auto& wg = gauss<Real, 15>::weights();
    for (std::size_t i = 0; i < kHalf; ++i) {
      nodes[i] = x[i];
      kronrod[i] = wk[i];
      gauss_weight[i] = (i % 2 == 0) ? wg[i / 2] : Real(0);
    }
  }
};

const KronrodRule& rule() {
  static const KronrodRule r;
  return r;
}

const Real& unit_roundoff() {
  static const Real eps = std::numeric_limits<Real>::epsilon();
  return eps;
}

struct Panel {
  Real a;
  Real b;
  Complex value;
  Real error;
};

Complex checked_eval(const RealFunction& f, const Real& x) {
  Complex v = f(x);
  if (mp::isnan(v.real()) || mp::isnan(v.imag())) {
    throw ConsistencyError("integrand returned NaN at x = " + format_real(x, 25));
  }
  return v;
}

using Samples = std::vector<std::pair<Real, Complex>>;

Panel evaluate_panel(const RealFunction& f, const Real& a, const Real& b, long& evaluations,
                     Samples* samples = nullptr) {
  const KronrodRule& r = rule();
  const Real centre = (a + b) / 2;
  const Real half = (b - a) / 2;
  Complex k{0, 0};
  Complex g{0, 0};
  Real l1 = 0;
  for (std::size_t i = 0; i < KronrodRule::kHalf; ++i) {
    if (i == 0) {
      const Complex v = checked_eval(f, centre);
      if (samples) samples->emplace_back(centre, v);
      k += v * r.kronrod[0];
      g += v * r.gauss_weight[0];
      l1 += std::abs(v) * r.kronrod[0];
      ++evaluations;
      continue;
    }
    const Real dx = half * r.nodes[i];
    const Complex vp = checked_eval(f, centre + dx);
    const Complex vm = checked_eval(f, centre - dx);
    evaluations += 2;
    if (samples) {
      samples->emplace_back(centre + dx, vp);
      samples->emplace_back(centre - dx, vm);
    }
    const Complex sum = vp + vm;
    k += sum * r.kronrod[i];
    g += sum * r.gauss_weight[i];
    l1 += (std::abs(vp) + std::abs(vm)) * r.kronrod[i];
  }
  k *= half;
  g *= half;
  l1 *= mp::abs(half);
  const Real roundoff = 50 * unit_roundoff() * l1;
  return {a, b, k, std::max(Real(std::abs(k - g)), roundoff)};
}

bool by_error(const Panel& lhs, const Panel& rhs) {
  if (lhs.error != rhs.error) return lhs.error < rhs.error;
  return lhs.a > rhs.a;
}

std::vector<Real> initial_cuts(const Real& a, const Real& b, const PrecisionConfig& cfg,
                               const QuadratureOptions& opts) {
  std::vector<Real> cuts{a, b};
  for (const Real& p : opts.breakpoints) {
    if (p > a && p < b) cuts.push_back(p);
  }
  if (opts.oscillation_frequency > 0) {
    const Real period = constants::pi / opts.oscillation_frequency;
    const long limit = std::max(1, cfg.max_subdivisions / 2);
    long pieces = static_cast<long>(mp::ceil((b - a) / period));
    pieces = std::clamp(pieces, 1L, limit);
    const Real width = (b - a) / pieces;
    for (long i = 1; i < pieces; ++i) cuts.push_back(a + width * i);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  return cuts;
}

}  // namespace

Real DecayModel::tail_bound(const Real& from) const {
  if (!(exp_rate > 0)) throw DomainError("DecayModel: exp_rate must be positive");
  if (!(from > 0)) return std::numeric_limits<Real>::infinity();
  // log-concavity of t^A gives t^A e^{-rt} <= T^A e^{-rT} e^{-(r - A/T)(t - T)}
  const Real effective = power_exponent > 0 ? exp_rate - power_exponent / from : exp_rate;
  if (!(effective > 0)) return std::numeric_limits<Real>::infinity();
  return scale * mp::pow(from, power_exponent) * mp::exp(-exp_rate * from) / effective;
}

DecayModel make_decay_model(const Real& power_exponent, const Real& exp_rate,
                            const PrecisionConfig& cfg, const Real& scale, const Real& start) {
  if (!(exp_rate > 0)) {
    throw DomainError("decay model needs a positive exponential rate to truncate");
  }
  DecayModel model{power_exponent, exp_rate, scale, 0};
  const Real target = cfg.target_abs_tol / 10;
  Real hi = std::max(Real(1), start + 1);
  int guard = 0;
  while (!(model.tail_bound(hi) < target)) {
    hi *= 2;
    if (++guard > 200) throw ConvergenceError("decay model: no finite truncation point");
  }
  Real lo = std::max(start, hi / 2);
  for (int i = 0; i < 60 && hi - lo > Real("1e-6") * hi; ++i) {
    const Real mid = (lo + hi) / 2;
    if (model.tail_bound(mid) < target) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  model.truncation_point = hi;
  return model;
}

IntegrationResult integrate_finite(const RealFunction& f, const Real& a, const Real& b,
                                   const PrecisionConfig& cfg, const QuadratureOptions& opts) {
  if (!(a < b)) throw DomainError("integrate_finite: requires a < b");
  IntegrationResult out;
  std::vector<Panel> heap;
  const auto cuts = initial_cuts(a, b, cfg, opts);
  for (std::size_t i = 1; i < cuts.size(); ++i) {
    heap.push_back(evaluate_panel(f, cuts[i - 1], cuts[i], out.evaluations));
  }
  std::make_heap(heap.begin(), heap.end(), by_error);

  auto total_error = [&heap] {
    Real e = 0;
    for (const Panel& p : heap) e += p.error;
    return e;
  };

  Real err = total_error();
  while (err > cfg.target_abs_tol) {
    if (static_cast<int>(heap.size()) >= cfg.max_subdivisions) {
      out.diagnostic = "subdivision limit reached";
      break;
    }
    std::pop_heap(heap.begin(), heap.end(), by_error);
    const Panel worst = heap.back();
    const Real floor = 50 * unit_roundoff() * (mp::abs(worst.value.real()) + mp::abs(worst.value.imag()));
    const Real mid = (worst.a + worst.b) / 2;
    if (worst.error <= floor || !(worst.a < mid && mid < worst.b)) {
      std::push_heap(heap.begin(), heap.end(), by_error);
      out.diagnostic = "round-off floor reached";
      break;
    }
    heap.pop_back();
    heap.push_back(evaluate_panel(f, worst.a, mid, out.evaluations));
    std::push_heap(heap.begin(), heap.end(), by_error);
    heap.push_back(evaluate_panel(f, mid, worst.b, out.evaluations));
    std::push_heap(heap.begin(), heap.end(), by_error);
    err = total_error();
  }

  // Sum in positional order so the result does not depend on heap layout.
  std::sort(heap.begin(), heap.end(), [](const Panel& l, const Panel& r) { return l.a < r.a; });
  for (const Panel& p : heap) {
    out.value += p.value;
    out.abs_error_estimate += p.error;
  }
  out.converged = out.abs_error_estimate <= cfg.target_abs_tol;
  return out;
}

IntegrationResult integrate_semi_infinite(const RealFunction& f, const Real& a,
                                          const DecayModel& decay, const PrecisionConfig& cfg,
                                          const QuadratureOptions& opts) {
  if (!(decay.exp_rate > 0)) {
    throw DomainError("integrate_semi_infinite: decay exp_rate must be positive");
  }
  Real upper = decay.truncation_point;
  if (!(upper > a)) upper = a + 1;
  const Real tail = decay.tail_bound(upper);
  PrecisionConfig inner = cfg;
  inner.target_abs_tol = std::max(cfg.target_abs_tol - tail, cfg.target_abs_tol / 2);
  IntegrationResult out = integrate_finite(f, a, upper, inner, opts);
  out.abs_error_estimate += tail;
  out.converged = out.abs_error_estimate <= cfg.target_abs_tol;
  return out;
}

IntegrationResult integrate_vertical_line(const ComplexFunction& f, const Real& sigma_line,
                                          const Real& t_max, const PrecisionConfig& cfg) {
  if (!(t_max > 0)) throw DomainError("integrate_vertical_line: t_max must be positive");
  auto along = [&](const Real& tau) { return f(Complex(sigma_line, tau)); };
  PrecisionConfig inner = cfg;
  inner.target_abs_tol = cfg.target_abs_tol * constants::two_pi;
  QuadratureOptions opts;
  opts.breakpoints.push_back(Real(0));
  IntegrationResult out = integrate_finite(along, -t_max, t_max, inner, opts);
  out.value /= constants::two_pi;
  out.abs_error_estimate /= constants::two_pi;
  out.converged = out.abs_error_estimate <= cfg.target_abs_tol;

  const Real edge = std::max(std::abs(f(Complex(sigma_line, t_max))),
                             std::abs(f(Complex(sigma_line, -t_max))));
  out.evaluations += 2;
  if (!(edge < cfg.target_abs_tol)) {
    out.converged = false;
    out.diagnostic = "integrand not negligible at |Im s| = t_max (" + format_real(edge, 6) +
                     " >= tolerance); increase t_max";
  }
  return out;
}

Real vertical_truncation(const ComplexFunction& f, const Real& sigma_line, const Real& threshold,
                         const Real& initial, const Real& limit) {
  auto small_beyond = [&](const Real& tau) {
    for (const char* factor : {"1", "1.1", "1.25", "1.5"}) {
      const Real at = tau * Real(factor);
      if (!(std::abs(f(Complex(sigma_line, at))) < threshold)) return false;
      if (!(std::abs(f(Complex(sigma_line, -at))) < threshold)) return false;
    }
    return true;
  };
  Real hi = initial;
  while (!small_beyond(hi)) {
    hi *= 2;
    if (hi > limit) return limit;
  }
  Real lo = hi / 2;
  if (lo < initial) return hi;
  for (int i = 0; i < 6; ++i) {
    const Real mid = (lo + hi) / 2;
    if (small_beyond(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

IntegrationResult integrate_vertical_line(const ComplexFunction& f, const Real& sigma_line,
                                          const PrecisionConfig& cfg) {
  const Real t_max = vertical_truncation(f, sigma_line, cfg.target_abs_tol / 100);
  return integrate_vertical_line(f, sigma_line, t_max, cfg);
}

LineTable::LineTable(const ComplexFunction& factor, const Real& sigma_line,
                     const Real& max_phase_rate, const PrecisionConfig& cfg)
    : sigma_(sigma_line) {
  t_max_ = vertical_truncation(factor, sigma_line, cfg.target_abs_tol / 100);
  const Real rate = std::max(Real(1), max_phase_rate);
  // a 31-point panel resolves e^{i w tau} to full precision while w * width <= 8
  const Real width = std::min(Real(1), 8 / rate);
  const long pieces = static_cast<long>(mp::ceil(2 * t_max_ / width));
  const Real step = 2 * t_max_ / pieces;
  const Real per_length = cfg.target_abs_tol * constants::two_pi / (2 * t_max_);

  auto along = [&](const Real& tau) { return factor(Complex(sigma_line, tau)); };
  const KronrodRule& r = rule();

  std::vector<std::pair<Real, Real>> work;
  for (long i = pieces - 1; i >= 0; --i) {
    work.emplace_back(-t_max_ + step * i, -t_max_ + step * (i + 1));
  }
  while (!work.empty()) {
    const auto [a, b] = work.back();
    work.pop_back();
    long evals = 0;
    Samples samples;
    const Panel p = evaluate_panel(along, a, b, evals, &samples);
    evaluations_ += evals;
    if (p.error > per_length * (b - a) && (b - a) > Real("1e-6")) {
      const Real mid = (a + b) / 2;
      work.emplace_back(mid, b);
      work.emplace_back(a, mid);
      continue;
    }
    const Real half = (b - a) / 2;
    for (std::size_t j = 0; j < samples.size(); ++j) {
      const std::size_t i = (j + 1) / 2;  // centre, then (+, -) pairs per node
      nodes_.push_back(samples[j].first);
      weighted_.push_back(half * r.kronrod[i] * samples[j].second);
    }
  }
}

Complex LineTable::integrate(const std::function<Complex(const Complex&)>& g) const {
  Complex sum{0, 0};
  for (std::size_t j = 0; j < nodes_.size(); ++j) {
    sum += weighted_[j] * g(Complex(sigma_, nodes_[j]));
  }
  return sum / constants::two_pi;
}

FixedMesh fixed_mesh(const std::vector<Real>& cuts) {
  if (cuts.size() < 2) throw DomainError("fixed_mesh: need at least two cuts");
  const KronrodRule& r = rule();
  FixedMesh mesh;
  for (std::size_t p = 0; p + 1 < cuts.size(); ++p) {
    const Real a = cuts[p];
    const Real b = cuts[p + 1];
    if (!(b > a)) throw DomainError("fixed_mesh: cuts must increase");
    const Real centre = (a + b) / 2;
    const Real half = (b - a) / 2;
    for (std::size_t i = 0; i < KronrodRule::kHalf; ++i) {
      for (int side : {1, -1}) {
        if (i == 0 && side < 0) continue;
        mesh.nodes.push_back(centre + side * half * r.nodes[i]);
        mesh.kronrod_weights.push_back(half * r.kronrod[i]);
        mesh.gauss_weights.push_back(half * r.gauss_weight[i]);
      }
    }
    ++mesh.panels;
  }
  return mesh;
}

IntegrationResult integrate_samples(const FixedMesh& mesh, const std::vector<Complex>& values) {
  if (values.size() != mesh.nodes.size()) {
    throw DomainError("integrate_samples: one value per mesh node required");
  }
  constexpr std::size_t per_panel = 2 * KronrodRule::kHalf - 1;
  IntegrationResult out;
  for (std::size_t p = 0; p < mesh.panels; ++p) {
    Complex k{0, 0};
    Complex g{0, 0};
    for (std::size_t j = p * per_panel; j < (p + 1) * per_panel; ++j) {
      k += mesh.kronrod_weights[j] * values[j];
      g += mesh.gauss_weights[j] * values[j];
    }
    out.value += k;
    out.abs_error_estimate += std::abs(k - g);
  }
  out.evaluations = static_cast<long>(values.size());
  out.converged = true;
  return out;
}

}  // namespace xiforge
