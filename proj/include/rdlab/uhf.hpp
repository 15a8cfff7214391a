#pragma once

#include <string>
#include <vector>

#include "rdlab/numerics.hpp"
#include "rdlab/random.hpp"
#include "rdlab/scales.hpp"

namespace rdlab {

// Stage-n element as its coefficient matrix against the matrix units
// P_{(n,x,y)}; the carrier is the dense matrix, the l^2(Z) picture exists
// only as the window oracle.
struct UhfElement {
  int stage = 0;
  Matrix mat;
};

class UhfAlgebra {
 public:
  using Element = UhfElement;

  explicit UhfAlgebra(Scale scale) : scale_(std::move(scale)) {}

  std::string name() const { return "uhf"; }
  bool grid_approximate() const { return false; }
  int stages() const { return scale_.depth(); }
  double omega() const { return 1.0; }
  const Scale& scale() const { return scale_; }

  Element from_matrix(Matrix m, int stage) const;
  Element matrix_unit(int n, std::int64_t x, std::int64_t y) const;

  // Defining operator P_{(n,x,y)} restricted to basis vectors E_{-W}..E_W.
  Matrix window_rep(int n, std::int64_t x, std::int64_t y, std::int64_t W) const;

  int stage_of(const Element& a) const { return a.stage; }
  Element zero(int m) const;
  Element unit() const { return {0, Matrix::Ones(1, 1)}; }
  Element embed(const Element& a, int m) const;  // block-diagonal replication
  Element add(const Element& a, const Element& b) const;
  Element sub(const Element& a, const Element& b) const;
  Element scaled(const Element& a, Cplx s) const { return {a.stage, s * a.mat}; }
  Element mul(const Element& a, const Element& b) const;
  Element adjoint(const Element& a) const { return {a.stage, a.mat.adjoint()}; }

  // Corner compression: top-left s_n block reinterpreted at stage n.
  Element expectation(const Element& a, int n) const;

  // Component of a in B_n, read through the canonical matrix-unit
  // coefficients (corner minus replicated lower corner); supported on the
  // index shell [0,s_n)^2 \ [0,s_{n-1})^2 exactly.
  Element shell_component(const Element& a, int n) const;

  double cstar_norm(const Element& a) const { return spectral_norm(a.mat); }
  double percent_norm(const Element& a, double N, const LengthSequence& L) const;

  Element exp_self_adjoint(const Element& a, double t) const;
  Cplx trace_state(const Element& a) const;

  Element random_element(Rng& rng, int stage, const std::vector<double>& level_scale) const;
  Element random_self_adjoint(Rng& rng, int stage, const std::vector<double>& level_scale) const;
  Element random_block(Rng& rng, int n, const std::vector<double>& level_scale) const;

 private:
  int check_stage(int m) const;
  Scale scale_;
};

}  // namespace rdlab
