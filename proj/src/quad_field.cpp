#include "xiforge/quad_field.hpp"

#include "xiforge/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

namespace xiforge {

namespace {

long positive_mod(long a, long m) {
  const long r = a % m;
  return r < 0 ? r + m : r;
}

bool squarefree(long m) {
  m = std::labs(m);
  for (long p = 2; p * p <= m; ++p) {
    if (m % (p * p) == 0) return false;
  }
  return true;
}

int jacobi(long a, long n) {
  a = positive_mod(a, n);
  int result = 1;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      const long r = n % 8;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) result = -result;
    a %= n;
  }
  return n == 1 ? result : 0;
}

long isqrt(long v) {
  if (v <= 0) return 0;
  long r = static_cast<long>(std::sqrt(static_cast<double>(v)));
  while (r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  return r;
}

}  // namespace

std::int64_t HeckeCoefficients::total(long n) const {
  std::int64_t sum = 0;
  for (const auto& counts : per_class_counts) sum += counts.at(n);
  return sum;
}

bool is_fundamental_discriminant(long D) {
  if (D == 0 || D == 1) return false;
  const long r = positive_mod(D, 4);
  if (r == 1) return squarefree(D);
  if (r == 0) {
    const long m = D / 4;
    const long rm = positive_mod(m, 4);
    return (rm == 2 || rm == 3) && squarefree(m);
  }
  return false;
}

QuadFieldData build_field(long D) {
  if (D >= 0) throw DomainError("build_field: discriminant must be negative");
  if (-D > 1000000) throw DomainError("build_field: |D| above the 10^6 cap");
  if (!is_fundamental_discriminant(D)) {
    std::string why = "build_field: D = " + std::to_string(D) + " is not a fundamental discriminant";
    const long r = positive_mod(D, 4);
    if (r == 2 || r == 3) {
      why += " (D must be 0 or 1 mod 4)";
    } else {
      for (long f = 2; f * f <= -D; ++f) {
        const long core = D / (f * f);
        if (D % (f * f) == 0 && (positive_mod(core, 4) == 0 || positive_mod(core, 4) == 1)) {
          why += " (" + std::to_string(D) + " = " + std::to_string(f * f) + " * " +
                 std::to_string(core) + ")";
          break;
        }
      }
    }
    throw DomainError(why);
  }
  QuadFieldData field;
  field.D = D;
  field.unit_count = D == -3 ? 6 : (D == -4 ? 4 : 2);
  for (long a = 1; 3 * a * a <= -D; ++a) {
    for (long b = -a + 1; b <= a; ++b) {
      if (positive_mod(b - D, 2) != 0) continue;
      const long num = b * b - D;
      if (num % (4 * a) != 0) continue;
      const long c = num / (4 * a);
      if (c < a) continue;
      if (b < 0 && a == c) continue;
      if (std::gcd(std::gcd(a, std::labs(b)), c) != 1) continue;
      field.reduced_forms.push_back({a, b, c});
    }
  }
  std::sort(field.reduced_forms.begin(), field.reduced_forms.end(),
            [](const QuadraticForm& l, const QuadraticForm& r) {
              return std::tie(l.a, l.b, l.c) < std::tie(r.a, r.b, r.c);
            });
  field.class_number = static_cast<int>(field.reduced_forms.size());
  return field;
}

int kronecker(long D, long n) {
  if (n < 1) throw DomainError("kronecker: n must be positive");
  int result = 1;
  while (n % 2 == 0) {
    n /= 2;
    if (positive_mod(D, 2) == 0) return 0;
    const long r = positive_mod(D, 8);
    if (r == 3 || r == 5) result = -result;
  }
  if (n == 1) return result;
  return result * jacobi(D, n);
}

std::int64_t divisor_kronecker_sum(long D, long n) {
  std::int64_t sum = 0;
  for (long d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    sum += kronecker(D, d);
    if (d * d != n) sum += kronecker(D, n / d);
  }
  return sum;
}

HeckeCoefficients hecke_coefficients(const QuadFieldData& field, long n_max) {
  if (n_max < 1) throw DomainError("hecke_coefficients: n_max must be positive");
  HeckeCoefficients out;
  out.D = field.D;
  out.n_max = n_max;
  const long absD = -field.D;
  for (const QuadraticForm& f : field.reduced_forms) {
    std::vector<std::int64_t> counts(n_max + 1, 0);
    // f(x, y) >= |D| y^2 / (4a)
    const long y_max = isqrt(4 * f.a * n_max / absD) + 1;
    for (long y = -y_max; y <= y_max; ++y) {
      // a x^2 + b y x + c y^2 <= n_max
      const long disc = f.b * f.b * y * y - 4 * f.a * (f.c * y * y - n_max);
      if (disc < 0) continue;
      const double root = std::sqrt(static_cast<double>(disc));
      const long lo = static_cast<long>(std::floor((-f.b * y - root) / (2.0 * f.a))) - 1;
      const long hi = static_cast<long>(std::ceil((-f.b * y + root) / (2.0 * f.a))) + 1;
      for (long x = lo; x <= hi; ++x) {
        if (x == 0 && y == 0) continue;
        const long v = f(x, y);
        if (v >= 1 && v <= n_max) ++counts[v];
      }
    }
    for (long n = 1; n <= n_max; ++n) {
      if (counts[n] % field.unit_count != 0) {
        throw ConsistencyError("hecke_coefficients: representation count of form (" +
                               std::to_string(f.a) + "," + std::to_string(f.b) + "," +
                               std::to_string(f.c) + ") at n = " + std::to_string(n) +
                               " not divisible by the unit count");
      }
      counts[n] /= field.unit_count;
    }
    out.per_class_counts.push_back(std::move(counts));
  }
  return out;
}

std::vector<ClassCharacter> characters(const QuadFieldData& field) {
  std::vector<ClassCharacter> out;
  ClassCharacter trivial;
  trivial.values.assign(field.class_number, Complex(1, 0));
  trivial.is_trivial = true;
  trivial.delta = 1;
  trivial.label = "trivial";
  out.push_back(trivial);
  if (field.class_number == 1) return out;
  if (field.class_number == 2) {
    ClassCharacter sign;
    sign.values = {Complex(1, 0), Complex(-1, 0)};
    sign.is_trivial = false;
    sign.delta = 0;
    sign.label = "sign";
    out.push_back(sign);
    return out;
  }
  throw DomainError("characters: built-in tables cover class numbers 1 and 2; D = " +
                    std::to_string(field.D) + " has h = " + std::to_string(field.class_number) +
                    ", supply a table");
}

ClassCharacter make_character(const QuadFieldData& field, std::vector<Complex> values,
                              std::string label) {
  const Real tol("1e-12");
  if (static_cast<int>(values.size()) != field.class_number) {
    throw DomainError("character table must have one value per reduced form");
  }
  bool trivial = true;
  Complex sum{0, 0};
  for (const Complex& v : values) {
    if (boost::multiprecision::abs(std::abs(v) - 1) > tol) {
      throw DomainError("character values must have unit modulus");
    }
    if (std::abs(v - Complex(1, 0)) > tol) trivial = false;
    sum += v;
  }
  if (std::abs(values.front() - Complex(1, 0)) > tol) {
    throw DomainError("character must be 1 on the principal class");
  }
  const Complex expected = trivial ? Complex(Real(field.class_number), 0) : Complex(0, 0);
  if (std::abs(sum - expected) > tol) {
    throw DomainError("character table violates orthogonality (sum of values " +
                      format_complex(sum, 8) + ")");
  }
  ClassCharacter chi;
  chi.values = std::move(values);
  chi.is_trivial = trivial;
  chi.delta = trivial ? 1 : 0;
  chi.label = std::move(label);
  return chi;
}

std::vector<Complex> character_coefficients(const HeckeCoefficients& coeffs,
                                            const ClassCharacter& chi, long n) {
  if (chi.values.size() != coeffs.per_class_counts.size()) {
    throw DomainError("character and coefficient table disagree on the class number");
  }
  if (n > coeffs.n_max) {
    throw InsufficientCoefficients("extend coefficients to n_max >= " + std::to_string(n), n);
  }
  std::vector<Complex> c(n + 1, Complex(0, 0));
  for (std::size_t f = 0; f < chi.values.size(); ++f) {
    const auto& counts = coeffs.per_class_counts[f];
    for (long k = 1; k <= n; ++k) {
      if (counts[k] != 0) c[k] += chi.values[f] * Real(counts[k]);
    }
  }
  return c;
}

void validate_coefficients(const QuadFieldData& field, const HeckeCoefficients& coeffs) {
  if (coeffs.D != field.D ||
      static_cast<int>(coeffs.per_class_counts.size()) != field.class_number) {
    throw ConsistencyError("coefficient table does not belong to this field");
  }
  for (long n = 1; n <= coeffs.n_max; ++n) {
    if (coeffs.total(n) != divisor_kronecker_sum(field.D, n)) {
      throw ConsistencyError("coefficient identity fails at n = " + std::to_string(n));
    }
  }
}

std::filesystem::path coefficient_cache_path(const std::filesystem::path& dir, long D, long n_max) {
  return dir / ("hecke_D" + std::to_string(D) + "_n" + std::to_string(n_max) + ".txt");
}

void write_coefficient_cache(const std::filesystem::path& path, const QuadFieldData& field,
                             const HeckeCoefficients& coeffs) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  const auto tmp = std::filesystem::path(path.string() + ".tmp");
  {
    std::ofstream out(tmp);
    if (!out) throw Error("cannot write coefficient cache " + tmp.string());
    out << "# xiforge hecke coefficients v1\n";
    out << "D " << field.D << "\n";
    out << "n_max " << coeffs.n_max << "\n";
    out << "unit_count " << field.unit_count << "\n";
    out << "forms " << field.class_number << "\n";
    for (const QuadraticForm& f : field.reduced_forms) {
      out << "form " << f.a << " " << f.b << " " << f.c << "\n";
    }
    out << "# n";
    for (int f = 0; f < field.class_number; ++f) out << " count" << f;
    out << "\n";
    for (long n = 1; n <= coeffs.n_max; ++n) {
      out << n;
      for (const auto& counts : coeffs.per_class_counts) out << " " << counts[n];
      out << "\n";
    }
    if (!out) throw Error("failed writing coefficient cache " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

HeckeCoefficients read_coefficient_cache(const std::filesystem::path& path,
                                         const QuadFieldData& field, long n_max) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open coefficient cache " + path.string());
  auto next_data_line = [&in](std::string& line) {
    while (std::getline(in, line)) {
      if (!line.empty() && line[0] != '#') return true;
    }
    return false;
  };
  auto expect = [&](const std::string& key) {
    std::string line;
    if (!next_data_line(line)) throw Error("coefficient cache truncated before '" + key + "'");
    std::istringstream fields(line);
    std::string k;
    long v = 0;
    if (!(fields >> k >> v) || k != key) throw Error("coefficient cache: expected '" + key + "'");
    return v;
  };
  if (expect("D") != field.D) throw Error("coefficient cache header mismatch: D");
  if (expect("n_max") != n_max) throw Error("coefficient cache header mismatch: n_max");
  if (expect("unit_count") != field.unit_count) throw Error("coefficient cache header mismatch: unit_count");
  if (expect("forms") != field.class_number) throw Error("coefficient cache header mismatch: forms");
  for (const QuadraticForm& f : field.reduced_forms) {
    std::string line;
    if (!next_data_line(line)) throw Error("coefficient cache truncated in form list");
    std::istringstream fields(line);
    std::string k;
    QuadraticForm g;
    if (!(fields >> k >> g.a >> g.b >> g.c) || k != "form" || !(g == f)) {
      throw Error("coefficient cache header mismatch: form list");
    }
  }
  HeckeCoefficients out;
  out.D = field.D;
  out.n_max = n_max;
  out.per_class_counts.assign(field.class_number, std::vector<std::int64_t>(n_max + 1, 0));
  for (long n = 1; n <= n_max; ++n) {
    std::string line;
    if (!next_data_line(line)) throw Error("coefficient cache truncated at n = " + std::to_string(n));
    std::istringstream fields(line);
    long idx = 0;
    if (!(fields >> idx) || idx != n) throw Error("coefficient cache: bad row index at n = " + std::to_string(n));
    for (auto& counts : out.per_class_counts) {
      if (!(fields >> counts[n])) throw Error("coefficient cache: short row at n = " + std::to_string(n));
    }
  }
  return out;
}

HeckeCoefficients load_or_build_coefficients(const std::filesystem::path& dir,
                                             const QuadFieldData& field, long n_max,
                                             bool* from_cache) {
  const auto path = coefficient_cache_path(dir, field.D, n_max);
  if (std::filesystem::exists(path)) {
    try {
      HeckeCoefficients cached = read_coefficient_cache(path, field, n_max);
      validate_coefficients(field, cached);
      if (from_cache) *from_cache = true;
      return cached;
    } catch (const Error&) {
      // stale or corrupt: fall through and regenerate
    }
  }
  HeckeCoefficients fresh = hecke_coefficients(field, n_max);
  validate_coefficients(field, fresh);
  write_coefficient_cache(path, field, fresh);
  if (from_cache) *from_cache = false;
  return fresh;
}

}  // namespace xiforge
