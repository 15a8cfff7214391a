#include "rdlab/uhf.hpp"

#include <cmath>
#include <stdexcept>

namespace rdlab {

int UhfAlgebra::check_stage(int m) const {
  if (m < 0 || m > scale_.depth()) throw std::invalid_argument("uhf: stage out of range");
  return m;
}

UhfElement UhfAlgebra::from_matrix(Matrix m, int stage) const {
  check_stage(stage);
  if (m.rows() != scale_.at(stage) || m.cols() != scale_.at(stage)) {
    throw std::invalid_argument("uhf: matrix size != s_n");
  }
  if (!finite_entries(m)) throw std::invalid_argument("uhf: non-finite entries");
  return {stage, std::move(m)};
}

UhfElement UhfAlgebra::matrix_unit(int n, std::int64_t x, std::int64_t y) const {
  const std::int64_t s = scale_.at(check_stage(n));
  if (x < 0 || x >= s || y < 0 || y >= s) throw std::out_of_range("uhf: matrix unit index");
  Matrix m = Matrix::Zero(s, s);
  m(x, y) = 1.0;
  return {n, std::move(m)};
}

Matrix UhfAlgebra::window_rep(int n, std::int64_t x, std::int64_t y, std::int64_t W) const {
  const std::int64_t s = scale_.at(check_stage(n));
  if (W < s) throw std::invalid_argument("uhf window_rep: W must be >= s_n");
  const std::int64_t L = 2 * W + 1;
  Matrix m = Matrix::Zero(L, L);
  for (std::int64_t k = -W; k <= W; ++k) {
    if (((k - y) % s + s) % s != 0) continue;
    const std::int64_t l = k + x - y;
    if (l >= -W && l <= W) m(l + W, k + W) = 1.0;
  }
  return m;
}

UhfElement UhfAlgebra::zero(int m) const {
  const std::int64_t s = scale_.at(check_stage(m));
  return {m, Matrix::Zero(s, s)};
}

UhfElement UhfAlgebra::embed(const Element& a, int m) const {
  check_stage(m);
  if (m < a.stage) throw std::invalid_argument("uhf embed: stage shrink");
  if (m == a.stage) return a;
  const std::int64_t sn = scale_.at(a.stage);
  const std::int64_t sm = scale_.at(m);
  Matrix out = Matrix::Zero(sm, sm);
  for (std::int64_t off = 0; off < sm; off += sn) {
    out.block(off, off, sn, sn) = a.mat;
  }
  return {m, std::move(out)};
}

UhfElement UhfAlgebra::add(const Element& a, const Element& b) const {
  const int m = std::max(a.stage, b.stage);
  return {m, embed(a, m).mat + embed(b, m).mat};
}

UhfElement UhfAlgebra::sub(const Element& a, const Element& b) const {
  const int m = std::max(a.stage, b.stage);
  return {m, embed(a, m).mat - embed(b, m).mat};
}

UhfElement UhfAlgebra::mul(const Element& a, const Element& b) const {
  const int m = std::max(a.stage, b.stage);
  return {m, embed(a, m).mat * embed(b, m).mat};
}

UhfElement UhfAlgebra::expectation(const Element& a, int n) const {
  check_stage(n);
  if (n > a.stage) throw std::invalid_argument("uhf expectation: target above stage");
  if (n == a.stage) return a;
  const std::int64_t sn = scale_.at(n);
  return {n, a.mat.topLeftCorner(sn, sn)};
}

UhfElement UhfAlgebra::shell_component(const Element& a, int n) const {
  check_stage(n);
  if (n > a.stage) throw std::invalid_argument("uhf shell: target above stage");
  const std::int64_t sn = scale_.at(n);
  Matrix block = a.mat.topLeftCorner(sn, sn);
  if (n > 0) {
    const std::int64_t sp = scale_.at(n - 1);
    const Matrix corner = a.mat.topLeftCorner(sp, sp);
    for (std::int64_t off = 0; off < sn; off += sp) {
      block.block(off, off, sp, sp) -= corner;
    }
  }
  return {n, std::move(block)};
}

double UhfAlgebra::percent_norm(const Element& a, double N, const LengthSequence& L) const {
  double acc = 0.0;
  for (int n = 0; n <= a.stage; ++n) {
    const Element blk = shell_component(a, n);
    acc += blk.mat.cwiseAbs().sum() * std::pow(L.at(n), N);
  }
  return acc;
}

UhfElement UhfAlgebra::exp_self_adjoint(const Element& a, double t) const {
  return {a.stage, exp_i_hermitian(a.mat, t)};
}

Cplx UhfAlgebra::trace_state(const Element& a) const {
  return a.mat.trace() / static_cast<double>(scale_.at(a.stage));
}

UhfElement UhfAlgebra::random_element(Rng& rng, int stage,
                                      const std::vector<double>& level_scale) const {
  // Sum of independent shell blocks; the canonical decomposition recovers
  // exactly these blocks, so the damping profile is a genuine level profile.
  Element acc = zero(check_stage(stage));
  for (int n = 0; n <= stage; ++n) {
    acc = add(acc, random_block(rng, n, level_scale));
  }
  return acc;
}

UhfElement UhfAlgebra::random_self_adjoint(Rng& rng, int stage,
                                           const std::vector<double>& level_scale) const {
  const Element x = random_element(rng, stage, level_scale);
  return scaled(add(x, adjoint(x)), 0.5);
}

UhfElement UhfAlgebra::random_block(Rng& rng, int n,
                                    const std::vector<double>& level_scale) const {
  const std::int64_t sn = scale_.at(check_stage(n));
  const std::int64_t sp = n > 0 ? scale_.at(n - 1) : 0;
  Matrix m = Matrix::Zero(sn, sn);
  const double w = level_scale.at(static_cast<std::size_t>(n));
  for (std::int64_t x = 0; x < sn; ++x) {
    for (std::int64_t y = 0; y < sn; ++y) {
      if (n > 0 && x < sp && y < sp) continue;  // corner belongs to lower shells
      m(x, y) = rng.cgauss() * w;
    }
  }
  return {n, std::move(m)};
}

}  // namespace rdlab
