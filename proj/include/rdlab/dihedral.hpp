#pragma once

#include <string>
#include <vector>

#include "rdlab/numerics.hpp"
#include "rdlab/odometer.hpp"
#include "rdlab/random.hpp"
#include "rdlab/scales.hpp"

namespace rdlab {

// a = f + v g with f, g at a common stage. The split is unique because
// a + gamma(a) = 2f and v(a - gamma(a)) = 2g.
struct SDElement {
  OdometerElement f;
  OdometerElement g;
};

// Finite stages of the flip crossed product: relations v* = v, v^2 = 1,
// v f v = kappa(f). Norms go through the regular covariant representation on
// two copies of the s_n-point function space; the flip action has fixed
// points, so a single copy would shrink norms.
class DihedralAlgebra {
 public:
  using Element = SDElement;

  explicit DihedralAlgebra(Scale scale) : odo_(std::move(scale)) {}

  std::string name() const { return "dihedral"; }
  bool grid_approximate() const { return false; }
  int stages() const { return odo_.stages(); }
  double omega() const { return 2.0; }
  const Scale& scale() const { return odo_.scale(); }
  const OdometerAlgebra& functions() const { return odo_; }

  Element make(OdometerElement f, OdometerElement g) const;
  Element flip_unitary(int m) const;  // v at stage m

  int stage_of(const Element& a) const { return a.f.stage; }
  Element zero(int m) const { return {odo_.zero(m), odo_.zero(m)}; }
  Element unit() const { return {odo_.unit(), odo_.zero(0)}; }
  Element embed(const Element& a, int m) const { return {odo_.embed(a.f, m), odo_.embed(a.g, m)}; }
  Element add(const Element& a, const Element& b) const;
  Element sub(const Element& a, const Element& b) const;
  Element scaled(const Element& a, Cplx s) const { return {odo_.scaled(a.f, s), odo_.scaled(a.g, s)}; }
  Element mul(const Element& a, const Element& b) const;
  Element adjoint(const Element& a) const;
  Element gamma(const Element& a) const { return {a.f, odo_.scaled(a.g, -1.0)}; }

  // Block form [[M_f, M_{kappa g}], [M_g, M_{kappa f}]] of size 2 s_n.
  Matrix represent(const Element& a) const;

  Element expectation(const Element& a, int n) const;

  double cstar_norm(const Element& a) const { return spectral_norm(represent(a)); }
  double hash_norm(const Element& a, double N, const LengthSequence& L) const;

  bool is_self_adjoint(const Element& a, double tol = 1e-10) const;
  Element exp_self_adjoint(const Element& a, double t) const;

  Element random_element(Rng& rng, int stage, const std::vector<double>& level_scale) const;
  Element random_self_adjoint(Rng& rng, int stage, const std::vector<double>& level_scale) const;
  Element random_block(Rng& rng, int n, const std::vector<double>& level_scale) const;

 private:
  OdometerAlgebra odo_;
};

}  // namespace rdlab
