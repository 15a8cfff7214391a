#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "rdlab/numerics.hpp"
#include "rdlab/random.hpp"

namespace rdlab {

// Reference fixture: convergent sequences with finite deviation support.
// An element is limit + sum_k coords[k] * delta_k; keeping the limit term
// gives the filtration a genuine unit in stage 0, which the exponential
// checks need. Stage n holds deviations supported in [0, n].
struct SequenceElement {
  Cplx limit = 0.0;
  std::vector<Cplx> coords;
};

class SequenceAlgebra {
 public:
  using Element = SequenceElement;

  explicit SequenceAlgebra(int depth) : depth_(depth) {
    if (depth < 0) throw std::invalid_argument("sequence algebra: negative depth");
  }

  std::string name() const { return "sequences"; }
  bool grid_approximate() const { return false; }
  int stages() const { return depth_; }
  double omega() const { return 1.0; }

  int stage_of(const Element& a) const { return static_cast<int>(a.coords.size()) - 1; }

  Element zero(int m) const { return {0.0, std::vector<Cplx>(check_stage(m) + 1, 0.0)}; }
  Element unit() const { return {1.0, {0.0}}; }

  Element embed(const Element& a, int m) const {
    if (m < stage_of(a)) throw std::invalid_argument("sequence embed: stage shrink");
    Element out = a;
    out.coords.resize(static_cast<std::size_t>(check_stage(m)) + 1, 0.0);
    return out;
  }

  Element add(const Element& a, const Element& b) const { return zip(a, b, +1.0); }
  Element sub(const Element& a, const Element& b) const { return zip(a, b, -1.0); }

  Element scaled(const Element& a, Cplx s) const {
    Element out = a;
    out.limit *= s;
    for (auto& x : out.coords) x *= s;
    return out;
  }

  Element mul(const Element& a, const Element& b) const {
    const int m = std::max(stage_of(a), stage_of(b));
    const Element x = embed(a, m);
    const Element y = embed(b, m);
    Element out = zero(m);
    out.limit = x.limit * y.limit;
    for (std::size_t k = 0; k < x.coords.size(); ++k) {
      out.coords[k] = x.limit * y.coords[k] + y.limit * x.coords[k] + x.coords[k] * y.coords[k];
    }
    return out;
  }

  Element adjoint(const Element& a) const {
    Element out = a;
    out.limit = std::conj(out.limit);
    for (auto& x : out.coords) x = std::conj(x);
    return out;
  }

  // Coordinate truncation; fixes the limit term.
  Element expectation(const Element& a, int n) const {
    if (n < 0 || n > stage_of(a)) throw std::invalid_argument("sequence expectation: bad stage");
    Element out = a;
    out.coords.resize(static_cast<std::size_t>(n) + 1);
    return out;
  }

  double cstar_norm(const Element& a) const {
    double best = std::abs(a.limit);
    for (const auto& x : a.coords) best = std::max(best, std::abs(a.limit + x));
    return best;
  }

  Element exp_self_adjoint(const Element& a, double t) const {
    require_self_adjoint(a);
    Element out = zero(stage_of(a));
    const Cplx base = std::polar(1.0, t * a.limit.real());
    out.limit = base;
    for (std::size_t k = 0; k < a.coords.size(); ++k) {
      out.coords[k] = std::polar(1.0, t * (a.limit.real() + a.coords[k].real())) - base;
    }
    return out;
  }

  Element random_element(Rng& rng, int stage, const std::vector<double>& level_scale) const {
    Element out = zero(check_stage(stage));
    for (std::size_t k = 0; k < out.coords.size(); ++k) {
      out.coords[k] = rng.cgauss() * level_scale.at(k);
    }
    return out;
  }

  Element random_self_adjoint(Rng& rng, int stage, const std::vector<double>& level_scale) const {
    Element out = zero(check_stage(stage));
    for (std::size_t k = 0; k < out.coords.size(); ++k) {
      out.coords[k] = rng.gauss() * level_scale.at(k);
    }
    return out;
  }

  // Element of B_n = ker E_{n-1} (B_0 = A_0).
  Element random_block(Rng& rng, int n, const std::vector<double>& level_scale) const {
    Element out = zero(check_stage(n));
    out.coords[static_cast<std::size_t>(n)] = rng.cgauss() * level_scale.at(static_cast<std::size_t>(n));
    if (n == 0) out.limit = rng.cgauss() * level_scale.at(0);
    return out;
  }

 private:
  int check_stage(int m) const {
    if (m < 0 || m > depth_) throw std::invalid_argument("sequence algebra: stage out of range");
    return m;
  }

  Element zip(const Element& a, const Element& b, double sign) const {
    const int m = std::max(stage_of(a), stage_of(b));
    Element x = embed(a, m);
    const Element y = embed(b, m);
    x.limit += sign * y.limit;
    for (std::size_t k = 0; k < x.coords.size(); ++k) x.coords[k] += sign * y.coords[k];
    return x;
  }

  void require_self_adjoint(const Element& a) const {
    if (std::abs(a.limit.imag()) > 1e-10) {
      throw std::invalid_argument("sequence exp: element is not self-adjoint");
    }
    for (const auto& x : a.coords) {
      if (std::abs(x.imag()) > 1e-10) {
        throw std::invalid_argument("sequence exp: element is not self-adjoint");
      }
    }
  }

  int depth_;
};

}  // namespace rdlab
