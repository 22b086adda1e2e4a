#pragma once

#include "xiforge/real.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace xiforge {

/// Binary quadratic form a x^2 + b x y + c y^2.
struct QuadraticForm {
  long a = 0;
  long b = 0;
  long c = 0;

  long discriminant() const { return b * b - 4 * a * c; }
  long operator()(long x, long y) const { return a * x * x + b * x * y + c * y * y; }
  bool operator==(const QuadraticForm&) const = default;
};

/// Arithmetic data of the imaginary quadratic field of discriminant D.
/// Ideal classes are represented by reduced forms; index 0 is the principal form.
struct QuadFieldData {
  long D = 0;
  int unit_count = 0;    // number of roots of unity w: 6, 4 or 2
  int class_number = 0;  // h
  std::vector<QuadraticForm> reduced_forms;
};

/// A character of the class group as a table of values on reduced forms.
struct ClassCharacter {
  std::vector<Complex> values;
  bool is_trivial = true;
  int delta = 1;  // 1 iff trivial
  std::string label;
};

/// Ideal counts by norm, split by class.
struct HeckeCoefficients {
  long D = 0;
  long n_max = 0;
  /// per_class_counts[f][n] for n = 0..n_max (entry 0 unused, kept at 0).
  std::vector<std::vector<std::int64_t>> per_class_counts;

  /// Sum over classes of the counts at norm n.
  std::int64_t total(long n) const;
};

bool is_fundamental_discriminant(long D);

/// Builds the field data for a negative fundamental discriminant, |D| <= 10^6.
QuadFieldData build_field(long D);

/// Kronecker symbol (D / n) for n >= 1.
int kronecker(long D, long n);

/// Representation counts of each reduced form divided by the unit count.
HeckeCoefficients hecke_coefficients(const QuadFieldData& field, long n_max);

/// Built-in characters: the trivial one, plus the sign character when h = 2.
/// Throws DomainError for h > 2 (supply a table through make_character).
std::vector<ClassCharacter> characters(const QuadFieldData& field);

/// Validates a user-supplied character table (unit modulus, value 1 on the
/// principal class, orthogonality to the trivial character).
ClassCharacter make_character(const QuadFieldData& field, std::vector<Complex> values,
                              std::string label = "user");

/// c_chi(n) = sum_f chi(f) count_f(n) for n = 0..n (entry 0 is 0).
std::vector<Complex> character_coefficients(const HeckeCoefficients& coeffs,
                                            const ClassCharacter& chi, long n);

/// Sum over d | n of kronecker(D, d).
std::int64_t divisor_kronecker_sum(long D, long n);

/// Throws ConsistencyError unless every total count equals the divisor sum.
void validate_coefficients(const QuadFieldData& field, const HeckeCoefficients& coeffs);

// --- coefficient cache -------------------------------------------------------

/// Writes the columnar cache file (see docs/formats.md).
void write_coefficient_cache(const std::filesystem::path& path, const QuadFieldData& field,
                             const HeckeCoefficients& coeffs);

/// Reads a cache file; throws Error if it is malformed or its header does not
/// match (D, n_max, reduced forms) of `field`.
HeckeCoefficients read_coefficient_cache(const std::filesystem::path& path,
                                         const QuadFieldData& field, long n_max);

/// File name used for (D, n_max) inside a cache directory.
std::filesystem::path coefficient_cache_path(const std::filesystem::path& dir, long D, long n_max);

/// Read-through cache: loads and revalidates the file when its header
/// matches, otherwise regenerates and rewrites it.
HeckeCoefficients load_or_build_coefficients(const std::filesystem::path& dir,
                                             const QuadFieldData& field, long n_max,
                                             bool* from_cache = nullptr);

}  // namespace xiforge
