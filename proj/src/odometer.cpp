#include "rdlab/odometer.hpp"

#include <cmath>
#include <stdexcept>

namespace rdlab {

namespace {

std::vector<Cplx> to_std(const CVector& v) {
  return {v.data(), v.data() + v.size()};
}

CVector to_eigen(const std::vector<Cplx>& v) {
  CVector out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out(static_cast<Eigen::Index>(i)) = v[i];
  return out;
}

}  // namespace

OdometerAlgebra::OdometerAlgebra(Scale scale) : scale_(std::move(scale)) {
  levels_.resize(static_cast<std::size_t>(scale_.depth()) + 1);
  for (int m = 0; m <= scale_.depth(); ++m) {
    const std::int64_t sm = scale_.at(m);
    auto& tbl = levels_[static_cast<std::size_t>(m)];
    tbl.resize(static_cast<std::size_t>(sm));
    for (std::int64_t j = 0; j < sm; ++j) {
      tbl[static_cast<std::size_t>(j)] = canonicalize(j, m, scale_).level;
    }
  }
}

int OdometerAlgebra::check_stage(int m) const {
  if (m < 0 || m > scale_.depth()) throw std::invalid_argument("odometer: stage out of range");
  return m;
}

OdometerElement OdometerAlgebra::make(CVector values, CVector coeffs, int m) const {
  if (!values.allFinite() || !coeffs.allFinite()) {
    throw std::invalid_argument("odometer: non-finite entries");
  }
  return {m, std::move(values), std::move(coeffs)};
}

OdometerElement OdometerAlgebra::from_values(CVector values, int m) const {
  check_stage(m);
  if (values.size() != scale_.at(m)) throw std::invalid_argument("odometer: value count != s_m");
  auto coeffs = to_eigen(dft_cyclic(to_std(values), /*forward=*/true));
  return make(std::move(values), std::move(coeffs), m);
}

OdometerElement OdometerAlgebra::from_coeff_vector(CVector coeffs, int m) const {
  check_stage(m);
  if (coeffs.size() != scale_.at(m)) throw std::invalid_argument("odometer: coeff count != s_m");
  auto values = to_eigen(dft_cyclic(to_std(coeffs), /*forward=*/false));
  return make(std::move(values), std::move(coeffs), m);
}

OdometerElement OdometerAlgebra::from_coeffs(const std::map<Character, Cplx>& coeffs,
                                             int m) const {
  check_stage(m);
  CVector dense = CVector::Zero(scale_.at(m));
  for (const auto& [z, c] : coeffs) {
    if (z.level > m) throw std::invalid_argument("odometer: coefficient support outside G_m");
    dense(char_index(z, m, scale_)) += c;
  }
  return from_coeff_vector(std::move(dense), m);
}

std::map<Character, Cplx> OdometerAlgebra::coeff_map(const Element& a) const {
  std::map<Character, Cplx> out;
  for (std::int64_t j = 0; j < a.coeffs.size(); ++j) {
    const Cplx c = a.coeffs(j);
    if (std::abs(c) > 0.0) out[canonicalize(j, a.stage, scale_)] = c;
  }
  return out;
}

OdometerElement OdometerAlgebra::character_fn(Character z, int m) const {
  CVector dense = CVector::Zero(scale_.at(check_stage(m)));
  dense(char_index(z, m, scale_)) = 1.0;
  return from_coeff_vector(std::move(dense), m);
}

OdometerElement OdometerAlgebra::zero(int m) const {
  const std::int64_t sm = scale_.at(check_stage(m));
  return {m, CVector::Zero(sm), CVector::Zero(sm)};
}

OdometerElement OdometerAlgebra::unit() const {
  return {0, CVector::Ones(1), CVector::Ones(1)};
}

OdometerElement OdometerAlgebra::embed(const Element& a, int m) const {
  check_stage(m);
  if (m < a.stage) throw std::invalid_argument("odometer embed: stage shrink");
  if (m == a.stage) return a;
  const std::int64_t sm = scale_.at(m);
  const std::int64_t sn = scale_.at(a.stage);
  CVector values(sm);
  for (std::int64_t x = 0; x < sm; ++x) values(x) = a.values(x % sn);
  CVector coeffs = CVector::Zero(sm);
  const std::int64_t ratio = sm / sn;
  for (std::int64_t j = 0; j < sn; ++j) coeffs(j * ratio) = a.coeffs(j);
  return make(std::move(values), std::move(coeffs), m);
}

OdometerElement OdometerAlgebra::add(const Element& a, const Element& b) const {
  const int m = std::max(a.stage, b.stage);
  const Element x = embed(a, m);
  const Element y = embed(b, m);
  return make(x.values + y.values, x.coeffs + y.coeffs, m);
}

OdometerElement OdometerAlgebra::sub(const Element& a, const Element& b) const {
  return add(a, scaled(b, -1.0));
}

OdometerElement OdometerAlgebra::scaled(const Element& a, Cplx s) const {
  return make(s * a.values, s * a.coeffs, a.stage);
}

OdometerElement OdometerAlgebra::mul(const Element& a, const Element& b) const {
  const int m = std::max(a.stage, b.stage);
  const Element x = embed(a, m);
  const Element y = embed(b, m);
  return from_values(x.values.cwiseProduct(y.values), m);
}

OdometerElement OdometerAlgebra::mul_convolution(const Element& a, const Element& b) const {
  const int m = std::max(a.stage, b.stage);
  const Element x = embed(a, m);
  const Element y = embed(b, m);
  const std::int64_t sm = scale_.at(m);
  CVector conv = CVector::Zero(sm);
  for (std::int64_t u = 0; u < sm; ++u) {
    for (std::int64_t v = 0; v < sm; ++v) {
      conv((u + v) % sm) += x.coeffs(u) * y.coeffs(v);
    }
  }
  return from_coeff_vector(std::move(conv), m);
}

OdometerElement OdometerAlgebra::adjoint(const Element& a) const {
  return from_values(a.values.conjugate(), a.stage);
}

OdometerElement OdometerAlgebra::shift_alpha(const Element& a, std::int64_t k) const {
  const std::int64_t sm = scale_.at(a.stage);
  CVector values(sm);
  for (std::int64_t x = 0; x < sm; ++x) {
    values(x) = a.values(((x + k) % sm + sm) % sm);
  }
  return from_values(std::move(values), a.stage);
}

OdometerElement OdometerAlgebra::flip_kappa(const Element& a) const {
  const std::int64_t sm = scale_.at(a.stage);
  CVector values(sm);
  for (std::int64_t x = 0; x < sm; ++x) {
    values(x) = a.values(((-x) % sm + sm) % sm);
  }
  return from_values(std::move(values), a.stage);
}

std::pair<OdometerElement, double> OdometerAlgebra::expectation_impl(const Element& a,
                                                                     int n) const {
  check_stage(n);
  if (n > a.stage) throw std::invalid_argument("odometer expectation: target above stage");
  if (n == a.stage) return {a, 0.0};
  const std::int64_t sm = scale_.at(a.stage);
  const std::int64_t sn = scale_.at(n);
  const std::int64_t ratio = sm / sn;

  // Route 1: average over the shift subgroup {0, s_n, 2 s_n, ...}.
  CVector avg = CVector::Zero(sn);
  for (std::int64_t x = 0; x < sn; ++x) {
    Cplx acc = 0.0;
    for (std::int64_t j = 0; j < ratio; ++j) acc += a.values((x + j * sn) % sm);
    avg(x) = acc / static_cast<double>(ratio);
  }

  // Route 2: restrict coefficients to G_n.
  CVector coeffs(sn);
  for (std::int64_t j = 0; j < sn; ++j) coeffs(j) = a.coeffs(j * ratio);
  Element restricted = from_coeff_vector(std::move(coeffs), n);

  const double gap = (restricted.values - avg).cwiseAbs().maxCoeff();
  return {std::move(restricted), gap};
}

OdometerElement OdometerAlgebra::expectation(const Element& a, int n) const {
  auto [restricted, gap] = expectation_impl(a, n);
  const double scale = std::max(1.0, a.values.size() == 0 ? 0.0 : a.values.cwiseAbs().maxCoeff());
  if (gap > 1e-12 * scale) {
    throw std::runtime_error("odometer expectation: averaging and restriction disagree");
  }
  return std::move(restricted);
}

double OdometerAlgebra::expectation_routes_gap(const Element& a, int n) const {
  return expectation_impl(a, n).second;
}

double OdometerAlgebra::cstar_norm(const Element& a) const {
  return a.values.size() == 0 ? 0.0 : a.values.cwiseAbs().maxCoeff();
}

double OdometerAlgebra::star_norm(const Element& a, double N, const LengthSequence& L) const {
  double acc = 0.0;
  for (std::int64_t j = 0; j < a.coeffs.size(); ++j) {
    acc += std::abs(a.coeffs(j)) * std::pow(L.at(level_of(a.stage, j)), N);
  }
  return acc;
}

OdometerElement OdometerAlgebra::exp_self_adjoint(const Element& a, double t) const {
  if (a.values.size() > 0 && a.values.imag().cwiseAbs().maxCoeff() > 1e-10) {
    throw std::invalid_argument("odometer exp: element is not real-valued");
  }
  CVector values(a.values.size());
  for (std::int64_t x = 0; x < a.values.size(); ++x) {
    values(x) = std::polar(1.0, t * a.values(x).real());
  }
  return from_values(std::move(values), a.stage);
}

OdometerElement OdometerAlgebra::random_element(Rng& rng, int stage,
                                                const std::vector<double>& level_scale) const {
  const std::int64_t sm = scale_.at(check_stage(stage));
  CVector coeffs(sm);
  for (std::int64_t j = 0; j < sm; ++j) {
    coeffs(j) = rng.cgauss() * level_scale.at(static_cast<std::size_t>(level_of(stage, j)));
  }
  return from_coeff_vector(std::move(coeffs), stage);
}

OdometerElement OdometerAlgebra::random_self_adjoint(
    Rng& rng, int stage, const std::vector<double>& level_scale) const {
  // Hermitian coefficient symmetry c_{-j} = conj(c_j) keeps values real while
  // the damping profile stays a function of the level.
  const std::int64_t sm = scale_.at(check_stage(stage));
  CVector coeffs = CVector::Zero(sm);
  for (std::int64_t j = 0; j <= sm / 2; ++j) {
    const double w = level_scale.at(static_cast<std::size_t>(level_of(stage, j)));
    if (j == 0 || 2 * j == sm) {
      coeffs(j) = rng.gauss() * w;
    } else {
      const Cplx c = rng.cgauss() * w;
      coeffs(j) = c;
      coeffs(sm - j) = std::conj(c);
    }
  }
  return from_coeff_vector(std::move(coeffs), stage);
}

OdometerElement OdometerAlgebra::random_block(Rng& rng, int n,
                                              const std::vector<double>& level_scale) const {
  const std::int64_t sn = scale_.at(check_stage(n));
  CVector coeffs = CVector::Zero(sn);
  for (std::int64_t j = 0; j < sn; ++j) {
    if (level_of(n, j) == n) {
      coeffs(j) = rng.cgauss() * level_scale.at(static_cast<std::size_t>(n));
    }
  }
  return from_coeff_vector(std::move(coeffs), n);
}

}  // namespace rdlab
