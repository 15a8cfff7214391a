#pragma once

#include <map>
#include <string>
#include <vector>

#include "rdlab/numerics.hpp"
#include "rdlab/random.hpp"
#include "rdlab/scales.hpp"

namespace rdlab {

// Function on Z/s_m seen as a stage-m element. Both caches are kept coherent
// eagerly: values[x] = sum_j coeffs[j] exp(2 pi i j x / s_m).
struct OdometerElement {
  int stage = 0;
  CVector values;
  CVector coeffs;
};

// Finite stages of the continuous functions on the odometer group, with the
// shift and flip automorphisms and the shift-averaging expectation.
class OdometerAlgebra {
 public:
  using Element = OdometerElement;

  explicit OdometerAlgebra(Scale scale);

  std::string name() const { return "odometer"; }
  bool grid_approximate() const { return false; }
  int stages() const { return scale_.depth(); }
  double omega() const { return 1.0; }
  const Scale& scale() const { return scale_; }

  Element from_values(CVector values, int m) const;
  Element from_coeff_vector(CVector coeffs, int m) const;
  Element from_coeffs(const std::map<Character, Cplx>& coeffs, int m) const;
  std::map<Character, Cplx> coeff_map(const Element& a) const;
  Element character_fn(Character z, int m) const;  // chi_z as a stage-m element

  int stage_of(const Element& a) const { return a.stage; }
  Element zero(int m) const;
  Element unit() const;
  Element embed(const Element& a, int m) const;  // periodic replication
  Element add(const Element& a, const Element& b) const;
  Element sub(const Element& a, const Element& b) const;
  Element scaled(const Element& a, Cplx s) const;
  Element mul(const Element& a, const Element& b) const;  // pointwise values
  Element mul_convolution(const Element& a, const Element& b) const;  // oracle route
  Element adjoint(const Element& a) const;

  // alpha^k: f(x) -> f(x+k); on coefficients multiplies by z^k.
  Element shift_alpha(const Element& a, std::int64_t k) const;
  // kappa: f(x) -> f(-x); swaps coefficients z <-> z^{-1}.
  Element flip_kappa(const Element& a) const;

  // E_{m,n}. Computed twice, by shift averaging and by coefficient
  // restriction to G_n; disagreement beyond 1e-12 is an implementation bug
  // and throws.
  Element expectation(const Element& a, int n) const;
  // Max deviation between the two routes, for the oracle reports.
  double expectation_routes_gap(const Element& a, int n) const;

  double cstar_norm(const Element& a) const;  // exact sup over s_m points
  double star_norm(const Element& a, double N, const LengthSequence& L) const;

  Element exp_self_adjoint(const Element& a, double t) const;

  int level_of(int m, std::int64_t j) const { return levels_[static_cast<std::size_t>(m)][static_cast<std::size_t>(j)]; }

  Element random_element(Rng& rng, int stage, const std::vector<double>& level_scale) const;
  Element random_self_adjoint(Rng& rng, int stage, const std::vector<double>& level_scale) const;
  Element random_block(Rng& rng, int n, const std::vector<double>& level_scale) const;

 private:
  Element make(CVector values, CVector coeffs, int m) const;
  std::pair<Element, double> expectation_impl(const Element& a, int n) const;
  int check_stage(int m) const;

  Scale scale_;
  std::vector<std::vector<int>> levels_;  // levels_[m][j] = canonical level of j at stage m
};

}  // namespace rdlab
