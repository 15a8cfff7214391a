#pragma once

#include <compare>
#include <complex>
#include <cstdint>
#include <vector>

namespace rdlab {

// Divisibility chain s_0 = 1 | s_1 | ... | s_M with strict growth. Every
// filtration in the project is indexed against one of these.
class Scale {
 public:
  explicit Scale(std::vector<std::int64_t> stages);

  int depth() const { return static_cast<int>(s_.size()) - 1; }  // M
  std::int64_t at(int m) const;                                  // s_m
  const std::vector<std::int64_t>& stages() const { return s_; }

 private:
  std::vector<std::int64_t> s_;
};

// Root of unity exp(2*pi*i*num/s_level) held in lowest-level form:
// 0 <= num < s_level, and level is minimal (level 0 iff num == 0).
// Exact integers throughout; the complex value is materialized on demand.
struct Character {
  int level = 0;
  std::int64_t num = 0;

  friend bool operator==(const Character&, const Character&) = default;
  friend std::strong_ordering operator<=>(const Character&, const Character&) = default;
};

// Lowest-level form of exp(2*pi*i*j/s_m). Throws on stage out of range.
Character canonicalize(std::int64_t j, int m, const Scale& scale);

Character char_mul(Character a, Character b, const Scale& scale);
Character char_inv(Character z, const Scale& scale);

// Index of z inside the cyclic group of order s_m; requires z.level <= m.
std::int64_t char_index(Character z, int m, const Scale& scale);

// Canonical level of the stage-m index j (level of exp(2*pi*i*j/s_m)).
int level_of_index(std::int64_t j, int m, const Scale& scale);

// z^x as a complex number, phase reduced with integer arithmetic first.
std::complex<double> char_value(Character z, std::int64_t x, const Scale& scale);

// All characters of canonical level exactly n; n = 0 gives {1}.
// Size is s_n - s_{n-1} for n >= 1.
std::vector<Character> shell(int n, const Scale& scale);

// Weights lambda_0 < lambda_1 < ... < lambda_M plus the projection bound
// Omega and a growth certificate (c, beta). The two flags are recomputed
// from the data on construction and never read from configuration:
//   rd_admissible:  lambda_n >= 2*Omega*(n+1) for all n
//   fast_growth:    s_m <= c * lambda_m^beta  for all m
struct LengthSequence {
  std::vector<double> lam;
  double omega = 1.0;
  double c = 1.0;
  double beta = 1.0;
  bool rd_admissible = false;
  bool fast_growth = false;

  static LengthSequence make(std::vector<double> lam, double omega, double c,
                             double beta, const Scale& scale);
  // lambda_n = 2 * Omega * ratio^n
  static LengthSequence geometric(double ratio, double omega, double c,
                                  double beta, const Scale& scale);

  double at(int n) const;
  int depth() const { return static_cast<int>(lam.size()) - 1; }
};

// lambda(z) = lam[level(z)]. Non-Archimedean:
// length_of(z*w) <= max(length_of(z), length_of(w)).
double length_of(Character z, const LengthSequence& lengths);

}  // namespace rdlab
