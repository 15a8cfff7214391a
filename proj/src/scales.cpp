#include "rdlab/scales.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

namespace rdlab {

Scale::Scale(std::vector<std::int64_t> stages) : s_(std::move(stages)) {
  if (s_.empty()) throw std::invalid_argument("scale: empty stage list");
  if (s_[0] != 1) throw std::invalid_argument("scale: s_0 must be 1");
  for (std::size_t m = 1; m < s_.size(); ++m) {
    if (s_[m] <= s_[m - 1] || s_[m] % s_[m - 1] != 0) {
      throw std::invalid_argument("scale: stages must strictly increase and divide");
    }
  }
}

std::int64_t Scale::at(int m) const {
  if (m < 0 || m > depth()) throw std::out_of_range("scale: stage " + std::to_string(m));
  return s_[static_cast<std::size_t>(m)];
}

Character canonicalize(std::int64_t j, int m, const Scale& scale) {
  const std::int64_t sm = scale.at(m);
  if (j < 0 || j >= sm) throw std::out_of_range("canonicalize: index outside [0, s_m)");
  if (j == 0) return {0, 0};
  const std::int64_t g = std::gcd(j, sm);
  const std::int64_t order = sm / g;  // order of the root of unity
  int level = 0;
  while (scale.at(level) % order != 0) ++level;
  return {level, (j / g) * (scale.at(level) / order)};
}

std::int64_t char_index(Character z, int m, const Scale& scale) {
  if (z.level > m) throw std::out_of_range("char_index: level above stage");
  return z.num * (scale.at(m) / scale.at(z.level));
}

int level_of_index(std::int64_t j, int m, const Scale& scale) {
  return canonicalize(j, m, scale).level;
}

Character char_mul(Character a, Character b, const Scale& scale) {
  const int m = std::max(a.level, b.level);
  const std::int64_t sm = scale.at(m);
  const std::int64_t j = (char_index(a, m, scale) + char_index(b, m, scale)) % sm;
  return canonicalize(j, m, scale);
}

Character char_inv(Character z, const Scale& scale) {
  if (z.num == 0) return {0, 0};
  const std::int64_t s = scale.at(z.level);
  return canonicalize(s - z.num, z.level, scale);
}

std::complex<double> char_value(Character z, std::int64_t x, const Scale& scale) {
  const std::int64_t s = scale.at(z.level);
  std::int64_t e = (z.num * (x % s)) % s;
  if (e < 0) e += s;
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(e) /
                             static_cast<double>(s));
}

std::vector<Character> shell(int n, const Scale& scale) {
  if (n < 0 || n > scale.depth()) throw std::out_of_range("shell: stage out of range");
  if (n == 0) return {Character{0, 0}};
  std::vector<Character> out;
  const std::int64_t sn = scale.at(n);
  for (std::int64_t j = 1; j < sn; ++j) {
    const Character z = canonicalize(j, n, scale);
    if (z.level == n) out.push_back(z);
  }
  return out;
}

LengthSequence LengthSequence::make(std::vector<double> lam, double omega, double c,
                                    double beta, const Scale& scale) {
  if (lam.size() != static_cast<std::size_t>(scale.depth() + 1)) {
    throw std::invalid_argument("length sequence: need one weight per stage");
  }
  if (omega < 1.0) throw std::invalid_argument("length sequence: Omega must be >= 1");
  if (c <= 0.0 || beta <= 0.0) throw std::invalid_argument("length sequence: bad certificate");
  for (std::size_t n = 0; n < lam.size(); ++n) {
    if (!(lam[n] > 0.0)) throw std::invalid_argument("length sequence: weights must be positive");
    if (n > 0 && !(lam[n] > lam[n - 1])) {
      throw std::invalid_argument("length sequence: weights must strictly increase");
    }
  }
  LengthSequence out;
  out.lam = std::move(lam);
  out.omega = omega;
  out.c = c;
  out.beta = beta;
  out.rd_admissible = true;
  out.fast_growth = true;
  for (std::size_t n = 0; n < out.lam.size(); ++n) {
    if (out.lam[n] < 2.0 * omega * static_cast<double>(n + 1) - 1e-12) {
      out.rd_admissible = false;
    }
    const double sn = static_cast<double>(scale.at(static_cast<int>(n)));
    if (sn > c * std::pow(out.lam[n], beta) * (1.0 + 1e-12)) {
      out.fast_growth = false;
    }
  }
  return out;
}

LengthSequence LengthSequence::geometric(double ratio, double omega, double c,
                                         double beta, const Scale& scale) {
  std::vector<double> lam(static_cast<std::size_t>(scale.depth() + 1));
  double v = 2.0 * omega;
  for (auto& x : lam) {
    x = v;
    v *= ratio;
  }
  return make(std::move(lam), omega, c, beta, scale);
}

double LengthSequence::at(int n) const {
  if (n < 0 || n > depth()) throw std::out_of_range("length sequence: stage out of range");
  return lam[static_cast<std::size_t>(n)];
}

double length_of(Character z, const LengthSequence& lengths) {
  return lengths.at(z.level);
}

}  // namespace rdlab
