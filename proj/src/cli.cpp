#include "xiforge/cli.hpp"

#include "xiforge/contour.hpp"
#include "xiforge/errors.hpp"
#include "xiforge/lfun.hpp"
#include "xiforge/quad_field.hpp"
#include "xiforge/special.hpp"
#include "xiforge/theta.hpp"
#include "xiforge/transforms.hpp"
#include "xiforge/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <thread>

namespace xiforge {

namespace mp = boost::multiprecision;

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

long parse_long(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const long v = std::stol(value, &used);
    if (used == value.size()) return v;
  } catch (const std::exception&) {
  }
  throw UsageError("setting '" + key + "': expected an integer, got '" + value + "'");
}

Real parse_real(const std::string& key, const std::string& value) {
  const Complex z = parse_complex(value);
  if (z.imag() != 0) throw UsageError("setting '" + key + "': expected a real number");
  return z.real();
}

}  // namespace

void apply_settings(CliConfig& cfg, const std::map<std::string, std::string>& settings) {
  for (const auto& [key, value] : settings) {
    if (key == "precision_digits") {
      cfg.precision.working_digits = static_cast<int>(parse_long(key, value));
    } else if (key == "abs_tol") {
      cfg.precision.target_abs_tol = parse_real(key, value);
    } else if (key == "rel_tol") {
      cfg.precision.target_rel_tol = parse_real(key, value);
    } else if (key == "max_subdivisions") {
      cfg.precision.max_subdivisions = static_cast<int>(parse_long(key, value));
    } else if (key == "series_trunc_max") {
      cfg.precision.series_trunc_max = parse_long(key, value);
    } else if (key == "format") {
      if (value == "json") {
        cfg.format = OutputFormat::json;
      } else if (value == "csv") {
        cfg.format = OutputFormat::csv;
      } else if (value == "plain") {
        cfg.format = OutputFormat::plain;
      } else {
        throw UsageError("format must be json, csv or plain");
      }
    } else if (key == "cache_dir") {
      cfg.cache_dir = value;
    } else if (key == "threads") {
      if (value == "auto") {
        cfg.threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
      } else {
        cfg.threads = static_cast<int>(parse_long(key, value));
        if (cfg.threads < 1) throw UsageError("threads must be positive or 'auto'");
      }
    } else {
      throw UsageError("unknown setting '" + key + "'");
    }
  }
}

std::map<std::string, std::string> read_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file " + path.string());
  std::map<std::string, std::string> out;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw UsageError(path.string() + ":" + std::to_string(number) + ": expected key=value");
    }
    out[trim(t.substr(0, eq))] = trim(t.substr(eq + 1));
  }
  return out;
}

std::map<std::string, std::string> environment_settings() {
  static const std::pair<const char*, const char*> names[] = {
      {"XIFORGE_PRECISION_DIGITS", "precision_digits"},
      {"XIFORGE_ABS_TOL", "abs_tol"},
      {"XIFORGE_REL_TOL", "rel_tol"},
      {"XIFORGE_FORMAT", "format"},
      {"XIFORGE_CACHE_DIR", "cache_dir"},
      {"XIFORGE_THREADS", "threads"},
  };
  std::map<std::string, std::string> out;
  for (const auto& [env, key] : names) {
    if (const char* v = std::getenv(env)) out[key] = v;
  }
  return out;
}

std::vector<Real> parse_range(const std::string& range) {
  const auto first = range.find(':');
  const auto second = first == std::string::npos ? first : range.find(':', first + 1);
  if (second == std::string::npos) throw UsageError("range must be start:stop:step");
  const Real start = parse_real("range", range.substr(0, first));
  const Real stop = parse_real("range", range.substr(first + 1, second - first - 1));
  const Real step = parse_real("range", range.substr(second + 1));
  if (!(step > 0)) throw UsageError("range step must be positive");
  if (stop < start) throw UsageError("empty range " + range);
  const long count = static_cast<long>(mp::floor((stop - start) / step + Real("1e-9"))) + 1;
  if (count > 10000000) throw UsageError("range has too many points");
  std::vector<Real> grid;
  grid.reserve(count);
  for (long i = 0; i < count; ++i) grid.push_back(start + step * i);
  return grid;
}

namespace {

// ---------------------------------------------------------------------------
// eval

struct EvalResult {
  Complex value;
  Real error;
  std::string error_kind;  // "quadrature", "truncation" or "nominal"
};

struct EvalOptions {
  std::string chi = "trivial";
  std::string route = "inc_gamma_expansion";
  std::string c = "0.5";
  long n_max = 20000;
};

Real nominal(const Complex& v, const PrecisionConfig& cfg) {
  return std::max(cfg.target_abs_tol, cfg.epsilon() * std::abs(v));
}

EvalResult from_integration(const IntegrationResult& r) {
  return {r.value, r.abs_error_estimate, "quadrature"};
}

HeckeData hecke_for(long D, const EvalOptions& opts, const CliConfig& cli) {
  const QuadFieldData field = build_field(D);
  const HeckeCoefficients coeffs = load_or_build_coefficients(cli.cache_dir, field, opts.n_max);
  for (const ClassCharacter& chi : characters(field)) {
    if (chi.label == opts.chi) return HeckeData(field, chi, coeffs);
  }
  throw UsageError("no built-in character '" + opts.chi + "' for D = " + std::to_string(D));
}

struct EvalFunction {
  const char* name;
  const char* signature;
  std::size_t arity;
  std::function<EvalResult(const std::vector<Real>&, const EvalOptions&, const CliConfig&)> run;
};

const std::vector<EvalFunction>& eval_functions() {
  static const std::vector<EvalFunction> fns = {
      {"zeta", "sigma t", 2,
       [](const std::vector<Real>& a, const EvalOptions&, const CliConfig& c) {
         const Complex v = zeta(ComplexPoint(a[0], a[1]), c.precision);
         return EvalResult{v, nominal(v, c.precision), "nominal"};
       }},
      {"gamma", "sigma t", 2,
       [](const std::vector<Real>& a, const EvalOptions&, const CliConfig& c) {
         const Complex v = gamma(ComplexPoint(a[0], a[1]), c.precision);
         return EvalResult{v, nominal(v, c.precision), "nominal"};
       }},
      {"inc_gamma_upper", "sigma t x", 3,
       [](const std::vector<Real>& a, const EvalOptions&, const CliConfig& c) {
         const Complex v = upper_inc_gamma(ComplexPoint(a[0], a[1]), a[2], c.precision);
         return EvalResult{v, nominal(v, c.precision), "nominal"};
       }},
      {"inc_gamma_lower", "sigma t x", 3,
       [](const std::vector<Real>& a, const EvalOptions&, const CliConfig& c) {
         const Complex v = lower_inc_gamma(ComplexPoint(a[0], a[1]), a[2], c.precision);
         return EvalResult{v, nominal(v, c.precision), "nominal"};
       }},
      {"xi", "sigma t", 2,
       [](const std::vector<Real>& a, const EvalOptions&, const CliConfig& c) {
         const Complex v = xi_value(ComplexPoint(a[0], a[1]), c.precision);
         return EvalResult{v, nominal(v, c.precision), "nominal"};
       }},
      {"lambda", "t", 1,
       [](const std::vector<Real>& a, const EvalOptions&, const CliConfig& c) {
         const Complex v(lambda_big(a[0], c.precision), 0);
         return EvalResult{v, nominal(v, c.precision), "nominal"};
       }},
      {"psi", "x", 1,
       [](const std::vector<Real>& a, const EvalOptions&, const CliConfig& c) {
         const Complex v(psi(ThetaArg(a[0]), c.precision), 0);
         return EvalResult{v, nominal(v, c.precision), "nominal"};
       }},
      {"psi_hecke", "D x", 2,
       [](const std::vector<Real>& a, const EvalOptions& o, const CliConfig& c) {
         const HeckeData d = hecke_for(static_cast<long>(a[0]), o, c);
         const Complex v = psi_hecke(a[1], d.field(), d.c(), c.precision);
         return EvalResult{v, c.precision.target_abs_tol, "truncation"};
       }},
      {"l_series", "D sigma t", 3,
       [](const std::vector<Real>& a, const EvalOptions& o, const CliConfig& c) {
         const HeckeData d = hecke_for(static_cast<long>(a[0]), o, c);
         const LSeriesValue v = l_series(ComplexPoint(a[1], a[2]), d, c.precision);
         return EvalResult{v.value, v.tail_bound, "truncation"};
       }},
      {"omega", "D sigma t", 3,
       [](const std::vector<Real>& a, const EvalOptions& o, const CliConfig& c) {
         const HeckeData d = hecke_for(static_cast<long>(a[0]), o, c);
         const ComplexPoint s(a[1], a[2]);
         auto compute = [&]() -> OmegaValue {
           if (o.route == "series") return omega_from_series(s, d, c.precision);
           if (o.route == "integral_rep") return omega_integral_rep(s, d, c.precision);
           if (o.route == "inc_gamma_expansion") {
             return omega_inc_gamma_expansion(s, d, c.precision);
           }
           throw UsageError("--route must be series, integral_rep or inc_gamma_expansion");
         };
         const OmegaValue v = compute();
         return EvalResult{v.omega, v.error_estimate, to_string(v.route)};
       }},
      {"upsilon", "sigma t", 2,
       [](const std::vector<Real>& a, const EvalOptions&, const CliConfig& c) {
         return from_integration(upsilon_quadrature(ComplexPoint(a[0], a[1]), c.precision));
       }},
      {"frak_upsilon", "D sigma t", 3,
       [](const std::vector<Real>& a, const EvalOptions& o, const CliConfig& c) {
         const HeckeData d = hecke_for(static_cast<long>(a[0]), o, c);
         return from_integration(frak_upsilon_quadrature(ComplexPoint(a[1], a[2]), d, c.precision));
       }},
      {"lambda_transform", "x", 1,
       [](const std::vector<Real>& a, const EvalOptions&, const CliConfig& c) {
         return from_integration(lambda_transform(a[0], c.precision).quadrature);
       }},
      {"i_dot", "t", 1,
       [](const std::vector<Real>& a, const EvalOptions& o, const CliConfig& c) {
         return from_integration(i_dot(a[0], parse_real("c", o.c), c.precision));
       }},
      {"i_ddot", "t", 1,
       [](const std::vector<Real>& a, const EvalOptions&, const CliConfig& c) {
         return from_integration(i_ddot(a[0], c.precision));
       }},
  };
  return fns;
}

std::string function_listing() {
  std::string s = "functions:";
  for (const auto& f : eval_functions()) s += std::string("\n  ") + f.name + " " + f.signature;
  return s;
}

int cmd_eval(const std::string& name, const std::vector<std::string>& raw,
             const EvalOptions& opts, const CliConfig& cli, std::ostream& out) {
  const EvalFunction* fn = nullptr;
  for (const auto& f : eval_functions()) {
    if (name == f.name) fn = &f;
  }
  if (fn == nullptr) throw UsageError("unknown function '" + name + "'\n" + function_listing());
  std::vector<Real> args;
  for (const auto& r : raw) args.push_back(parse_real("argument", r));
  // a missing imaginary part defaults to 0 for the (sigma, t) forms
  if (args.size() + 1 == fn->arity && std::string(fn->signature).ends_with("sigma t")) {
    args.push_back(0);
  }
  if (args.size() != fn->arity) {
    throw UsageError(std::string(name) + " expects: " + fn->signature);
  }
  const EvalResult r = fn->run(args, opts, cli);
  const int digits = cli.precision.working_digits;
  switch (cli.format) {
    case OutputFormat::json: {
      nlohmann::ordered_json j;
      j["function"] = name;
      j["args"] = raw;
      j["value"] = {{"re", format_real(r.value.real(), digits)},
                    {"im", format_real(r.value.imag(), digits)}};
      j["error_estimate"] = static_cast<double>(r.error);
      j["error_kind"] = r.error_kind;
      out << j.dump() << '\n';
      break;
    }
    case OutputFormat::csv:
      out << "function,re,im,error_estimate,error_kind\n"
          << name << ',' << format_real(r.value.real(), digits) << ','
          << format_real(r.value.imag(), digits) << ',' << format_real(r.error, 6) << ','
          << r.error_kind << '\n';
      break;
    case OutputFormat::plain:
      if (r.value.imag() == 0) {
        out << format_real(r.value.real(), digits);
      } else {
        out << format_complex(r.value, digits);
      }
      out << "  (" << r.error_kind << " error " << format_real(r.error, 3) << ")\n";
      break;
  }
  return 0;
}

// ---------------------------------------------------------------------------
// verify

Params extra_params(const std::vector<std::string>& extras) {
  Params p;
  for (std::size_t i = 0; i < extras.size(); ++i) {
    std::string key = extras[i];
    if (!key.starts_with("--")) throw UsageError("unexpected argument '" + key + "'");
    key = key.substr(2);
    std::string value;
    if (const auto eq = key.find('='); eq != std::string::npos) {
      value = key.substr(eq + 1);
      key = key.substr(0, eq);
    } else if (i + 1 < extras.size()) {
      value = extras[++i];
    } else {
      throw UsageError("parameter --" + key + " needs a value");
    }
    p[key] = value;
  }
  return p;
}

int cmd_verify(const std::string& target, const Params& params, bool timing,
               const CliConfig& cli, std::ostream& out, std::ostream& err) {
  const auto& suites = suite_names();
  std::vector<IdentityReport> reports;
  if (std::find(suites.begin(), suites.end(), target) != suites.end()) {
    if (!params.empty()) throw UsageError("suites take no identity parameters");
    reports = run_suite(target, cli.precision, cli.threads);
  } else {
    reports.push_back(run_identity(target, params, cli.precision));
  }
  std::size_t failed = 0;
  for (const auto& r : reports) failed += r.passed ? 0 : 1;
  switch (cli.format) {
    case OutputFormat::csv:
      write_csv_summary(out, reports);
      break;
    case OutputFormat::json:
      for (const auto& r : reports) out << report_json_line(r, timing) << '\n';
      break;
    case OutputFormat::plain:
      for (const auto& r : reports) {
        out << (r.passed ? "PASS " : "FAIL ") << r.identity_id;
        for (const auto& [k, v] : r.parameters) out << ' ' << k << '=' << v;
        out << "  abs_diff=" << format_real(r.abs_diff, 3)
            << " tol=" << format_real(r.tolerance, 3);
        if (timing) out << " time=" << r.wall_time << 's';
        if (!r.notes.empty()) out << "  [" << r.notes << ']';
        out << '\n';
      }
      break;
  }
  err << reports.size() << " reports, " << failed << " failed\n";
  return failed == 0 ? 0 : 1;
}

// ---------------------------------------------------------------------------
// sweep

struct SweepFunction {
  const char* name;
  const char* axis;
  std::vector<const char*> columns;
  std::function<std::vector<Real>(const Real&, const CliConfig&, const Real& c)> row;
};

const std::vector<SweepFunction>& sweep_functions() {
  static const std::vector<SweepFunction> fns = {
      {"lambda", "t", {"lambda"},
       [](const Real& t, const CliConfig& c, const Real&) {
         return std::vector<Real>{lambda_big(t, c.precision)};
       }},
      {"psi", "x", {"psi"},
       [](const Real& x, const CliConfig& c, const Real&) {
         return std::vector<Real>{psi(ThetaArg(x), c.precision)};
       }},
      {"kddot", "x", {"kddot"},
       [](const Real& x, const CliConfig& c, const Real&) {
         return std::vector<Real>{kddot(x, c.precision)};
       }},
      {"lambda_closed", "x", {"Lambda"},
       [](const Real& x, const CliConfig& c, const Real&) {
         return std::vector<Real>{lambda_transform_closed(x, c.precision)};
       }},
      {"lambda_transform", "x", {"quadrature", "closed_form", "abs_diff"},
       [](const Real& x, const CliConfig& c, const Real&) {
         const TransformPair p = lambda_transform(x, c.precision);
         return std::vector<Real>{p.quadrature.value.real(), p.closed_form.real(),
                                  std::abs(p.quadrature.value - p.closed_form)};
       }},
      {"upsilon", "s", {"quadrature", "error_estimate"},
       [](const Real& s, const CliConfig& c, const Real&) {
         const IntegrationResult r = upsilon_quadrature(ComplexPoint(s, Real(0)), c.precision);
         return std::vector<Real>{r.value.real(), r.abs_error_estimate};
       }},
      {"upsilon_diff", "s", {"quadrature", "closed_form", "abs_diff"},
       [](const Real& s, const CliConfig& c, const Real&) {
         const ComplexPoint p(s, Real(0));
         const Complex q = upsilon_quadrature(p, c.precision).value;
         const Complex f = upsilon_closed_form(p, c.precision).value;
         return std::vector<Real>{q.real(), f.real(), std::abs(q - f)};
       }},
      {"i_dot", "t", {"i_dot", "error_estimate"},
       [](const Real& t, const CliConfig& c, const Real& line) {
         const IntegrationResult r = i_dot(t, line, c.precision);
         return std::vector<Real>{r.value.real(), r.abs_error_estimate};
       }},
      {"i_ddot", "t", {"i_ddot", "companion"},
       [](const Real& t, const CliConfig& c, const Real&) {
         return std::vector<Real>{i_ddot(t, c.precision).value.real(),
                                  i_ddot_companion(t, c.precision)};
       }},
      {"zeta_critical", "t", {"re", "im"},
       [](const Real& t, const CliConfig& c, const Real&) {
         const Complex z = zeta(ComplexPoint(constants::half, t), c.precision);
         return std::vector<Real>{z.real(), z.imag()};
       }},
  };
  return fns;
}

int cmd_sweep(const std::string& name, const std::string& range, const std::string& line,
              const std::string& output, const CliConfig& cli, std::ostream& out) {
  const SweepFunction* fn = nullptr;
  for (const auto& f : sweep_functions()) {
    if (name == f.name) fn = &f;
  }
  if (fn == nullptr) {
    std::string names;
    for (const auto& f : sweep_functions()) names += std::string(" ") + f.name;
    throw UsageError("unknown sweep function '" + name + "' (available:" + names + ")");
  }
  const std::vector<Real> grid = parse_range(range);
  const Real c = parse_real("c", line);
  std::vector<std::vector<Real>> rows(grid.size());
  std::vector<std::string> failures(grid.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < grid.size(); i = next++) {
      try {
        rows[i] = fn->row(grid[i], cli, c);
      } catch (const Error& e) {
        failures[i] = e.what();
      }
    }
  };
  const int n = std::max(1, std::min<int>(cli.threads, static_cast<int>(grid.size())));
  std::vector<std::thread> pool;
  for (int i = 1; i < n; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!failures[i].empty()) {
      throw DomainError("sweep " + name + " at " + fn->axis + " = " +
                        format_real(grid[i], 10) + ": " + failures[i]);
    }
  }

  std::ofstream file;
  if (!output.empty()) {
    file.open(output);
    if (!file) throw UsageError("cannot write " + output);
  }
  std::ostream& sink = output.empty() ? out : file;
  sink << fn->axis;
  for (const char* col : fn->columns) sink << ',' << col;
  sink << '\n';
  const int digits = std::min(cli.precision.working_digits, 25);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    sink << format_real(grid[i], 15);
    for (const Real& v : rows[i]) sink << ',' << format_real(v, digits);
    sink << '\n';
  }
  return 0;
}

// ---------------------------------------------------------------------------
// coeffs

int cmd_coeffs(long D, long n_max, const CliConfig& cli, std::ostream& out) {
  if (n_max < 1) throw UsageError("n_max must be positive");
  const QuadFieldData field = build_field(D);
  bool from_cache = false;
  const HeckeCoefficients c = load_or_build_coefficients(cli.cache_dir, field, n_max, &from_cache);
  const auto path = coefficient_cache_path(cli.cache_dir, D, n_max);
  std::vector<long> first;
  for (long n = 1; n <= std::min<long>(10, n_max); ++n) first.push_back(c.total(n));
  if (cli.format == OutputFormat::json) {
    nlohmann::ordered_json j;
    j["D"] = D;
    j["class_number"] = field.class_number;
    j["unit_count"] = field.unit_count;
    nlohmann::ordered_json forms = nlohmann::ordered_json::array();
    for (const auto& f : field.reduced_forms) forms.push_back({f.a, f.b, f.c});
    j["forms"] = forms;
    j["first_counts"] = first;
    j["cache"] = path.string();
    j["from_cache"] = from_cache;
    out << j.dump() << '\n';
    return 0;
  }
  out << "D = " << D << "  h = " << field.class_number << "  w = " << field.unit_count << '\n';
  for (const auto& f : field.reduced_forms) {
    out << "form (" << f.a << ", " << f.b << ", " << f.c << ")\n";
  }
  out << "counts n=1..";
  out << first.size() << ':';
  for (long v : first) out << ' ' << v;
  out << '\n' << (from_cache ? "read " : "wrote ") << path.string() << '\n';
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"xiforge: numerical checks of integral identities for the Riemann xi function "
               "and Hecke L-functions"};
  app.name("xiforge");
  app.require_subcommand(1);
  app.fallthrough();
  app.allow_extras();

  std::map<std::string, std::string> flags;
  std::string digits, abs_tol, rel_tol, format, cache_dir, threads, config_path;
  app.add_option("--precision-digits", digits, "working digits, 15..33 (default 30)");
  app.add_option("--abs-tol", abs_tol, "absolute tolerance (default 1e-20)");
  app.add_option("--rel-tol", rel_tol, "relative tolerance (default 1e-20)");
  app.add_option("--format", format, "json, csv or plain");
  app.add_option("--cache-dir", cache_dir, "coefficient cache directory");
  app.add_option("--threads", threads, "worker count or 'auto'");
  app.add_option("--config", config_path, "key=value settings file");

  EvalOptions eval_opts;
  std::string eval_name;
  std::vector<std::string> eval_args;
  auto* eval = app.add_subcommand("eval", "evaluate one function");
  eval->add_option("function", eval_name, "function name")->required();
  eval->add_option("args", eval_args, "numeric arguments");
  eval->add_option("--chi", eval_opts.chi, "class character label (trivial, sign)");
  eval->add_option("--route", eval_opts.route, "omega route");
  eval->add_option("--c", eval_opts.c, "line Re s = c for i_dot");
  eval->add_option("--n-max", eval_opts.n_max, "Hecke coefficient count");

  std::string verify_target;
  bool timing = false;
  auto* verify = app.add_subcommand("verify", "run an identity or a suite");
  verify->add_option("target", verify_target, "identity id, alias or suite")->required();
  verify->add_flag("--timing", timing, "include wall times");
  verify->allow_extras();

  std::string sweep_name, sweep_range, sweep_line = "0.5", sweep_output;
  auto* sweep = app.add_subcommand("sweep", "tabulate a function on a grid (CSV)");
  sweep->add_option("function", sweep_name)->required();
  sweep->add_option("range", sweep_range, "start:stop:step")->required();
  sweep->add_option("--c", sweep_line, "line Re s = c for i_dot");
  sweep->add_option("--output", sweep_output, "write CSV here instead of stdout");

  long coeff_D = 0;
  long coeff_n = 0;
  auto* coeffs = app.add_subcommand("coeffs", "build or refresh a coefficient cache");
  coeffs->add_option("D", coeff_D, "fundamental discriminant < 0")->required();
  coeffs->add_option("n_max", coeff_n, "largest norm")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);

    CliConfig cli;
    if (!config_path.empty()) apply_settings(cli, read_config_file(config_path));
    apply_settings(cli, environment_settings());
    if (!digits.empty()) flags["precision_digits"] = digits;
    if (!abs_tol.empty()) flags["abs_tol"] = abs_tol;
    if (!rel_tol.empty()) flags["rel_tol"] = rel_tol;
    if (!format.empty()) flags["format"] = format;
    if (!cache_dir.empty()) flags["cache_dir"] = cache_dir;
    if (!threads.empty()) flags["threads"] = threads;
    apply_settings(cli, flags);
    try {
      cli.precision.validate();
    } catch (const DomainError& e) {
      throw UsageError(e.what());
    }

    const std::vector<std::string> extras = app.remaining(true);
    if (!*verify && !extras.empty()) throw UsageError("unexpected argument '" + extras.front() + "'");

    if (*eval) return cmd_eval(eval_name, eval_args, eval_opts, cli, out);
    if (*verify) {
      return cmd_verify(verify_target, extra_params(extras), timing, cli, out, err);
    }
    if (*sweep) return cmd_sweep(sweep_name, sweep_range, sweep_line, sweep_output, cli, out);
    if (*coeffs) return cmd_coeffs(coeff_D, coeff_n, cli, out);
    return 2;
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n' << app.help();
    return 2;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace xiforge
