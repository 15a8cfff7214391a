#include "rdlab/dihedral.hpp"

#include <stdexcept>

namespace rdlab {

SDElement DihedralAlgebra::make(OdometerElement f, OdometerElement g) const {
  if (f.stage != g.stage) {
    const int m = std::max(f.stage, g.stage);
    return {odo_.embed(f, m), odo_.embed(g, m)};
  }
  return {std::move(f), std::move(g)};
}

SDElement DihedralAlgebra::flip_unitary(int m) const {
  return {odo_.zero(m), odo_.embed(odo_.unit(), m)};
}

SDElement DihedralAlgebra::add(const Element& a, const Element& b) const {
  return {odo_.add(a.f, b.f), odo_.add(a.g, b.g)};
}

SDElement DihedralAlgebra::sub(const Element& a, const Element& b) const {
  return {odo_.sub(a.f, b.f), odo_.sub(a.g, b.g)};
}

SDElement DihedralAlgebra::mul(const Element& a, const Element& b) const {
  // (f1 + v g1)(f2 + v g2) = (f1 f2 + kappa(g1) g2) + v (g1 f2 + kappa(f1) g2)
  const int m = std::max(stage_of(a), stage_of(b));
  const Element x = embed(a, m);
  const Element y = embed(b, m);
  auto f = odo_.add(odo_.mul(x.f, y.f), odo_.mul(odo_.flip_kappa(x.g), y.g));
  auto g = odo_.add(odo_.mul(x.g, y.f), odo_.mul(odo_.flip_kappa(x.f), y.g));
  return {std::move(f), std::move(g)};
}

SDElement DihedralAlgebra::adjoint(const Element& a) const {
  return {odo_.adjoint(a.f), odo_.flip_kappa(odo_.adjoint(a.g))};
}

Matrix DihedralAlgebra::represent(const Element& a) const {
  const std::int64_t s = scale().at(stage_of(a));
  Matrix out = Matrix::Zero(2 * s, 2 * s);
  const auto kf = odo_.flip_kappa(a.f);
  const auto kg = odo_.flip_kappa(a.g);
  for (std::int64_t x = 0; x < s; ++x) {
    out(x, x) = a.f.values(x);
    out(x, s + x) = kg.values(x);
    out(s + x, x) = a.g.values(x);
    out(s + x, s + x) = kf.values(x);
  }
  return out;
}

SDElement DihedralAlgebra::expectation(const Element& a, int n) const {
  return {odo_.expectation(a.f, n), odo_.expectation(a.g, n)};
}

double DihedralAlgebra::hash_norm(const Element& a, double N, const LengthSequence& L) const {
  return odo_.star_norm(a.f, N, L) + odo_.star_norm(a.g, N, L);
}

bool DihedralAlgebra::is_self_adjoint(const Element& a, double tol) const {
  const auto d = sub(a, adjoint(a));
  const double scale_norm = std::max(1.0, cstar_norm(a));
  return cstar_norm(d) <= tol * scale_norm;
}

SDElement DihedralAlgebra::exp_self_adjoint(const Element& a, double t) const {
  if (!is_self_adjoint(a)) {
    throw std::invalid_argument("dihedral exp: element is not self-adjoint");
  }
  const int m = stage_of(a);
  const std::int64_t s = scale().at(m);
  const Matrix u = exp_i_hermitian(represent(a), t);
  // The representation image of A_m is closed under exponentials, so u has
  // the same block-diagonal shape; read the components back off.
  CVector fv(s), gv(s);
  for (std::int64_t x = 0; x < s; ++x) {
    fv(x) = u(x, x);
    gv(x) = u(s + x, x);
  }
  Element out = {odo_.from_values(std::move(fv), m), odo_.from_values(std::move(gv), m)};
  const double residual = (represent(out) - u).norm();
  if (residual > 1e-9 * std::max(1.0, u.norm())) {
    throw std::runtime_error("dihedral exp: component extraction residual too large");
  }
  return out;
}

SDElement DihedralAlgebra::random_element(Rng& rng, int stage,
                                          const std::vector<double>& level_scale) const {
  auto f = odo_.random_element(rng, stage, level_scale);
  auto g = odo_.random_element(rng, stage, level_scale);
  return {std::move(f), std::move(g)};
}

SDElement DihedralAlgebra::random_self_adjoint(Rng& rng, int stage,
                                               const std::vector<double>& level_scale) const {
  // Self-adjointness needs f real-valued and g = kappa(conj g).
  auto f = odo_.random_self_adjoint(rng, stage, level_scale);
  auto h = odo_.random_element(rng, stage, level_scale);
  auto g = odo_.scaled(odo_.add(h, odo_.flip_kappa(odo_.adjoint(h))), 0.5);
  return {std::move(f), std::move(g)};
}

SDElement DihedralAlgebra::random_block(Rng& rng, int n,
                                        const std::vector<double>& level_scale) const {
  auto f = odo_.random_block(rng, n, level_scale);
  auto g = odo_.random_block(rng, n, level_scale);
  return {std::move(f), std::move(g)};
}

}  // namespace rdlab
