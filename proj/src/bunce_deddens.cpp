#include "rdlab/bunce_deddens.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rdlab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// exp(2 pi i e / s) with the phase reduced in integers first.
Cplx unit_phase(std::int64_t e, std::int64_t s) {
  e %= s;
  if (e < 0) e += s;
  return std::polar(1.0, kTwoPi * static_cast<double>(e) / static_cast<double>(s));
}

void prune(Laurent& p) {
  for (auto it = p.begin(); it != p.end();) {
    if (std::abs(it->second) == 0.0) {
      it = p.erase(it);
    } else {
      ++it;
    }
  }
}

}  // namespace

BunceDeddensAlgebra::BunceDeddensAlgebra(Scale scale)
    : BunceDeddensAlgebra(std::move(scale), Options()) {}

BunceDeddensAlgebra::BunceDeddensAlgebra(Scale scale, Options opt)
    : scale_(std::move(scale)), opt_(opt) {
  levels_.resize(static_cast<std::size_t>(scale_.depth()) + 1);
  roots_.resize(levels_.size());
  for (int m = 0; m <= scale_.depth(); ++m) {
    const std::int64_t sm = scale_.at(m);
    auto& tbl = levels_[static_cast<std::size_t>(m)];
    tbl.resize(static_cast<std::size_t>(sm));
    auto& rt = roots_[static_cast<std::size_t>(m)];
    rt.resize(static_cast<std::size_t>(sm));
    for (std::int64_t j = 0; j < sm; ++j) {
      tbl[static_cast<std::size_t>(j)] = canonicalize(j, m, scale_).level;
      rt[static_cast<std::size_t>(j)] = unit_phase(j, sm);
    }
  }
}

// Cached exp(2 pi i e / s_m); the hot loops would otherwise spend their time
// in sin/cos.
Cplx BunceDeddensAlgebra::root(int m, std::int64_t e) const {
  const auto& rt = roots_[static_cast<std::size_t>(m)];
  const std::int64_t s = static_cast<std::int64_t>(rt.size());
  e %= s;
  if (e < 0) e += s;
  return rt[static_cast<std::size_t>(e)];
}

int BunceDeddensAlgebra::check_stage(int m) const {
  if (m < 0 || m > scale_.depth()) throw std::invalid_argument("bd: stage out of range");
  return m;
}

BdElement BunceDeddensAlgebra::from_terms(std::vector<Laurent> terms, int stage) const {
  check_stage(stage);
  if (terms.size() != static_cast<std::size_t>(scale_.at(stage))) {
    throw std::invalid_argument("bd: term count != s_n");
  }
  for (auto& p : terms) {
    prune(p);
    for (const auto& [k, c] : p) {
      if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
        throw std::invalid_argument("bd: non-finite coefficient");
      }
    }
  }
  return {stage, std::move(terms)};
}

BdElement BunceDeddensAlgebra::single_term(Character z, Laurent p, int m) const {
  check_stage(m);
  if (z.level > m) throw std::invalid_argument("bd: character outside G_m");
  std::vector<Laurent> terms(static_cast<std::size_t>(scale_.at(m)));
  terms[static_cast<std::size_t>(char_index(z, m, scale_))] = std::move(p);
  return from_terms(std::move(terms), m);
}

BdElement BunceDeddensAlgebra::shift_power(int k, int m) const {
  return single_term({0, 0}, {{k, 1.0}}, m);
}

BdElement BunceDeddensAlgebra::multiplier(Character z, int m) const {
  return single_term(z, {{0, 1.0}}, m);
}

BdElement BunceDeddensAlgebra::zero(int m) const {
  return {check_stage(m), std::vector<Laurent>(static_cast<std::size_t>(scale_.at(m)))};
}

BdElement BunceDeddensAlgebra::unit() const { return single_term({0, 0}, {{0, 1.0}}, 0); }

BdElement BunceDeddensAlgebra::embed(const Element& a, int m) const {
  check_stage(m);
  if (m < a.stage) throw std::invalid_argument("bd embed: stage shrink");
  if (m == a.stage) return a;
  const std::int64_t ratio = scale_.at(m) / scale_.at(a.stage);
  std::vector<Laurent> terms(static_cast<std::size_t>(scale_.at(m)));
  for (std::size_t j = 0; j < a.terms.size(); ++j) {
    terms[j * static_cast<std::size_t>(ratio)] = a.terms[j];
  }
  return {m, std::move(terms)};
}

BdElement BunceDeddensAlgebra::add(const Element& a, const Element& b) const {
  const int m = std::max(a.stage, b.stage);
  Element x = embed(a, m);
  const Element y = embed(b, m);
  for (std::size_t j = 0; j < x.terms.size(); ++j) {
    for (const auto& [k, c] : y.terms[j]) x.terms[j][k] += c;
    prune(x.terms[j]);
  }
  return x;
}

BdElement BunceDeddensAlgebra::sub(const Element& a, const Element& b) const {
  return add(a, scaled(b, -1.0));
}

BdElement BunceDeddensAlgebra::scaled(const Element& a, Cplx s) const {
  Element out = a;
  for (auto& p : out.terms) {
    for (auto& [k, c] : p) c *= s;
    prune(p);
  }
  return out;
}

BdElement BunceDeddensAlgebra::mul(const Element& a, const Element& b) const {
  // (P(U) M_{chi_z})(Q(U) M_{chi_w}) = P(U) Q(z U) M_{chi_{zw}}: with
  // U E_l = E_{l+1} and M_f E_l = f(l) E_l the commutation reads
  // M_{chi_z} U^k = z^k U^k M_{chi_z}, so Q's k-th coefficient picks up z^k.
  const int m = std::max(a.stage, b.stage);
  const Element x = embed(a, m);
  const Element y = embed(b, m);
  const std::int64_t sm = scale_.at(m);
  std::vector<Laurent> terms(static_cast<std::size_t>(sm));
  for (std::int64_t j1 = 0; j1 < sm; ++j1) {
    const Laurent& p = x.terms[static_cast<std::size_t>(j1)];
    if (p.empty()) continue;
    for (std::int64_t j2 = 0; j2 < sm; ++j2) {
      const Laurent& q = y.terms[static_cast<std::size_t>(j2)];
      if (q.empty()) continue;
      Laurent& out = terms[static_cast<std::size_t>((j1 + j2) % sm)];
      for (const auto& [k1, c1] : p) {
        for (const auto& [k2, c2] : q) {
          out[k1 + k2] += c1 * c2 * root(m, j1 * k2);
        }
      }
    }
  }
  return from_terms(std::move(terms), m);
}

BdElement BunceDeddensAlgebra::adjoint(const Element& a) const {
  // (P(U) M_{chi_z})* = sum_k conj(p_k) conj(z)^{-k} U^{-k} M_{chi_{z^{-1}}}.
  const std::int64_t sm = scale_.at(a.stage);
  std::vector<Laurent> terms(static_cast<std::size_t>(sm));
  for (std::int64_t j = 0; j < sm; ++j) {
    const Laurent& p = a.terms[static_cast<std::size_t>(j)];
    if (p.empty()) continue;
    Laurent& out = terms[static_cast<std::size_t>((sm - j) % sm)];
    for (const auto& [k, c] : p) {
      out[-k] += std::conj(c) * root(a.stage, j * k);
    }
  }
  return from_terms(std::move(terms), a.stage);
}

std::pair<BdElement, double> BunceDeddensAlgebra::expectation_impl(const Element& a,
                                                                    int n) const {
  check_stage(n);
  if (n > a.stage) throw std::invalid_argument("bd expectation: target above stage");
  if (n == a.stage) return {a, 0.0};
  const std::int64_t sm = scale_.at(a.stage);
  const std::int64_t sn = scale_.at(n);
  const std::int64_t ratio = sm / sn;

  // Route 1: average of U^{j s_n} a U^{-j s_n}; conjugation scales the term
  // of index i by its character value at j s_n. Route 2 keeps exactly the
  // characters of G_n, i.e. the indices divisible by ratio.
  double gap = 0.0;
  for (std::int64_t i = 0; i < sm; ++i) {
    const Laurent& p = a.terms[static_cast<std::size_t>(i)];
    if (p.empty()) continue;
    Cplx factor = 0.0;
    for (std::int64_t j = 0; j < ratio; ++j) factor += root(a.stage, i * j * sn);
    factor /= static_cast<double>(ratio);
    const Cplx want = i % ratio == 0 ? Cplx(1.0) : Cplx(0.0);
    for (const auto& [k, c] : p) {
      gap = std::max(gap, std::abs(c * factor - c * want));
    }
  }

  std::vector<Laurent> restricted(static_cast<std::size_t>(sn));
  for (std::int64_t j = 0; j < sn; ++j) {
    restricted[static_cast<std::size_t>(j)] = a.terms[static_cast<std::size_t>(j * ratio)];
  }
  return {from_terms(std::move(restricted), n), gap};
}

BdElement BunceDeddensAlgebra::expectation(const Element& a, int n) const {
  auto [restricted, gap] = expectation_impl(a, n);
  double max_mag = 0.0;
  for (const auto& p : a.terms) {
    for (const auto& [k, c] : p) max_mag = std::max(max_mag, std::abs(c));
  }
  if (gap > 1e-12 * std::max(1.0, max_mag)) {
    throw std::runtime_error("bd expectation: averaging and restriction disagree");
  }
  return std::move(restricted);
}

double BunceDeddensAlgebra::expectation_routes_gap(const Element& a, int n) const {
  return expectation_impl(a, n).second;
}

Laurent BunceDeddensAlgebra::extract_coefficient(const Element& a, Character w) const {
  // (1/s_n) sum_j U^j (a M_{conj chi_w}) U^{-j} collapses to the w-term.
  if (w.level > a.stage) throw std::invalid_argument("bd extract: character above stage");
  const std::int64_t sm = scale_.at(a.stage);
  const Element b = mul(a, multiplier(char_inv(w, scale_), a.stage));
  Laurent out;
  for (std::int64_t i = 0; i < sm; ++i) {
    const Laurent& p = b.terms[static_cast<std::size_t>(i)];
    if (p.empty()) continue;
    Cplx factor = 0.0;
    for (std::int64_t j = 0; j < sm; ++j) factor += root(a.stage, i * j);
    factor /= static_cast<double>(sm);
    for (const auto& [k, c] : p) out[k] += c * factor;
  }
  prune(out);
  return out;
}

BdElement BunceDeddensAlgebra::delta_L(const Element& a) const {
  Element out = a;
  for (auto& p : out.terms) {
    Laurent d;
    for (const auto& [k, c] : p) {
      if (k != 0) d[k] = static_cast<double>(k) * c;
    }
    p = std::move(d);
  }
  return out;
}

Matrix BunceDeddensAlgebra::bloch_matrix(const Element& a, double theta) const {
  const std::int64_t s = scale_.at(a.stage);
  Matrix out = Matrix::Zero(s, s);
  for (std::int64_t j = 0; j < s; ++j) {
    const Laurent& p = a.terms[static_cast<std::size_t>(j)];
    for (const auto& [k, c] : p) {
      for (std::int64_t r = 0; r < s; ++r) {
        const std::int64_t total = r + k;
        std::int64_t rp = total % s;
        if (rp < 0) rp += s;
        const std::int64_t q = (total - rp) / s;
        out(rp, r) += c * std::polar(1.0, theta * static_cast<double>(q)) *
                      root(a.stage, j * r);
      }
    }
  }
  return out;
}

int BunceDeddensAlgebra::laurent_degree(const Element& a) const {
  int deg = 0;
  for (const auto& p : a.terms) {
    for (const auto& [k, c] : p) deg = std::max(deg, std::abs(k));
  }
  return deg;
}

double BunceDeddensAlgebra::cstar_norm(const Element& a) const {
  bool empty = true;
  for (const auto& p : a.terms) {
    if (!p.empty()) empty = false;
  }
  if (empty) return 0.0;
  return sweep_spectral_max([&](double th) { return bloch_matrix(a, th); },
                            opt_.theta_grid, opt_.refine_rounds);
}

void BunceDeddensAlgebra::window_apply(const Element& a, const CVector& in, CVector& out,
                                       std::int64_t W) const {
  const std::int64_t s = scale_.at(a.stage);
  out.setZero();
  for (std::int64_t j = 0; j < s; ++j) {
    const Laurent& p = a.terms[static_cast<std::size_t>(j)];
    for (const auto& [k, c] : p) {
      for (std::int64_t x = -W; x <= W; ++x) {
        const std::int64_t y = x - k;
        if (y < -W || y > W) continue;
        out(x + W) += c * root(a.stage, j * y) * in(y + W);
      }
    }
  }
}

Matrix BunceDeddensAlgebra::window_matrix(const Element& a, std::int64_t W) const {
  const std::int64_t s = scale_.at(a.stage);
  const std::int64_t L = 2 * W + 1;
  Matrix out = Matrix::Zero(L, L);
  for (std::int64_t j = 0; j < s; ++j) {
    const Laurent& p = a.terms[static_cast<std::size_t>(j)];
    for (const auto& [k, c] : p) {
      for (std::int64_t y = -W; y <= W; ++y) {
        const std::int64_t x = y + k;
        if (x < -W || x > W) continue;
        out(x + W, y + W) += c * root(a.stage, j * y);
      }
    }
  }
  return out;
}

double BunceDeddensAlgebra::window_norm(const Element& a, std::int64_t W, int iters) const {
  const std::int64_t s = scale_.at(a.stage);
  const std::int64_t L = 2 * W + 1;
  const Element adj = adjoint(a);

  // Warm start from the truncated Bloch wave at the sweep's best angle; the
  // window spectrum is clustered near its top, so a cold start converges far
  // too slowly.
  double best_theta = 0.0;
  double best = -1.0;
  for (int k = 0; k < opt_.theta_grid; ++k) {
    const double th = kTwoPi * k / opt_.theta_grid;
    const double v = power_norm_estimate(bloch_matrix(a, th), 120, 1e-12);
    if (v > best) {
      best = v;
      best_theta = th;
    }
  }
  const Matrix fiber = bloch_matrix(a, best_theta);
  Eigen::SelfAdjointEigenSolver<Matrix> es(fiber.adjoint() * fiber);
  const CVector top = es.eigenvectors().col(es.eigenvectors().cols() - 1);
  CVector start(L);
  for (std::int64_t x = -W; x <= W; ++x) {
    std::int64_t r = x % s;
    if (r < 0) r += s;
    const std::int64_t q = (x - r) / s;
    start(x + W) = std::polar(1.0, best_theta * static_cast<double>(q)) * top(r);
  }
  start /= start.norm();

  // Lanczos with full reorthogonalization on (P a P)* (P a P); the clustered
  // spectrum defeats plain power iteration. The returned value is the honest
  // Rayleigh quotient of the leading Ritz vector, a certified lower bound.
  const int steps = std::max(4, std::min<int>(iters, static_cast<int>(L) - 1));
  std::vector<CVector> basis;
  basis.reserve(static_cast<std::size_t>(steps));
  std::vector<double> alpha, beta;
  CVector v = start, tmp(L), hv(L);
  CVector prev = CVector::Zero(L);
  double last_beta = 0.0;
  for (int k = 0; k < steps; ++k) {
    basis.push_back(v);
    window_apply(a, v, tmp, W);
    window_apply(adj, tmp, hv, W);
    const double ak = std::real(v.dot(hv));
    alpha.push_back(ak);
    hv -= ak * v;
    if (k > 0) hv -= last_beta * prev;
    for (const auto& b : basis) hv -= b.dot(hv) * b;
    const double bk = hv.norm();
    if (bk < 1e-13) break;
    beta.push_back(bk);
    last_beta = bk;
    prev = v;
    v = hv / bk;
  }
  const int k = static_cast<int>(alpha.size());
  Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(k, k);
  for (int i = 0; i < k; ++i) {
    tri(i, i) = alpha[static_cast<std::size_t>(i)];
    if (i + 1 < k) {
      tri(i, i + 1) = beta[static_cast<std::size_t>(i)];
      tri(i + 1, i) = beta[static_cast<std::size_t>(i)];
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tes(tri);
  const Eigen::VectorXd z = tes.eigenvectors().col(k - 1);
  CVector ritz = CVector::Zero(L);
  for (int i = 0; i < k; ++i) ritz += z(i) * basis[static_cast<std::size_t>(i)];
  const double nr = ritz.norm();
  if (nr <= 0.0) return 0.0;
  window_apply(a, ritz, tmp, W);
  return tmp.norm() / nr;
}

NormBracket BunceDeddensAlgebra::norm_bracket(const Element& a) const {
  NormBracket out;
  out.estimate = cstar_norm(a);
  out.lower_bound = window_norm(a, opt_.window, opt_.window_iters);
  return out;
}

SupBracket BunceDeddensAlgebra::norm_0N(const Element& a, double N,
                                        const LengthSequence& L) const {
  SupBracket acc;
  const int deg = laurent_degree(a);
  const CircleGrid grid{64 * (deg + 1)};
  for (std::size_t j = 0; j < a.terms.size(); ++j) {
    if (a.terms[j].empty()) continue;
    const auto sup = circle_sup(a.terms[j], grid, opt_.refine_rounds);
    const double w = std::pow(L.at(level_of(a.stage, static_cast<std::int64_t>(j))), N);
    acc.estimate += sup.estimate * w;
    acc.upper_bound += sup.upper_bound * w;
  }
  return acc;
}

double BunceDeddensAlgebra::norm_MN(const Element& a, int M, double N,
                                    const LengthSequence& L) const {
  // Binomial identity: sum_j C(M, j) ||delta^j a||_{0,N}.
  double acc = 0.0;
  Element d = a;
  double binom = 1.0;
  for (int j = 0; j <= M; ++j) {
    if (j > 0) {
      d = delta_L(d);
      binom = binom * static_cast<double>(M - j + 1) / static_cast<double>(j);
    }
    acc += binom * norm_0N(d, N, L).estimate;
  }
  return acc;
}

bool BunceDeddensAlgebra::is_self_adjoint(const Element& a, double tol) const {
  const std::int64_t W = 2 * (laurent_degree(a) + scale_.at(a.stage)) + 4;
  const Matrix m = window_matrix(a, W);
  const double scale_norm = std::max(m.norm(), 1e-300);
  return (m - m.adjoint()).norm() <= tol * scale_norm;
}

BlochExponential BunceDeddensAlgebra::exponential(const Element& a, double t) const {
  if (!is_self_adjoint(a)) {
    throw std::invalid_argument("bd exponential: element is not self-adjoint");
  }
  const std::int64_t s = scale_.at(a.stage);
  BlochExponential out;
  out.stage = a.stage;
  out.t = t;
  out.grid = opt_.exp_theta_grid;
  out.mats.resize(static_cast<std::size_t>(out.grid));
  out.coeffs.resize(static_cast<std::size_t>(out.grid));
  for (int kk = 0; kk < out.grid; ++kk) {
    const double theta = kTwoPi * kk / out.grid;
    const Cplx wrap = std::polar(1.0, theta);
    const Matrix u = exp_i_hermitian(bloch_matrix(a, theta), t);
    // c_{r,z}(theta) via the Hilbert-Schmidt expansion in U_theta^r D_z.
    Matrix c = Matrix::Zero(s, s);
    for (std::int64_t rt = 0; rt < s; ++rt) {
      for (std::int64_t j = 0; j < s; ++j) {
        Cplx acc = 0.0;
        for (std::int64_t r = 0; r < s; ++r) {
          const std::int64_t rp = (r + rt) % s;
          Cplx basis = root(a.stage, j * r);
          if (r + rt >= s) basis *= wrap;
          acc += std::conj(basis) * u(rp, r);
        }
        c(rt, j) = acc / static_cast<double>(s);
      }
    }
    // The basis is exactly orthogonal, so reconstruction is roundoff only;
    // spot-check two angles to catch logic bugs without paying per sample.
    if (kk == 0 || kk == out.grid / 2) {
      Matrix recon = Matrix::Zero(s, s);
      for (std::int64_t rt = 0; rt < s; ++rt) {
        for (std::int64_t j = 0; j < s; ++j) {
          const Cplx cc = c(rt, j);
          if (std::abs(cc) == 0.0) continue;
          for (std::int64_t r = 0; r < s; ++r) {
            const std::int64_t rp = (r + rt) % s;
            Cplx basis = root(a.stage, j * r);
            if (r + rt >= s) basis *= wrap;
            recon(rp, r) += cc * basis;
          }
        }
      }
      if ((recon - u).norm() > 1e-8 * std::max(1.0, u.norm())) {
        throw std::runtime_error("bd exponential: basis expansion residual too large");
      }
    }
    out.mats[static_cast<std::size_t>(kk)] = u;
    out.coeffs[static_cast<std::size_t>(kk)] = std::move(c);
  }
  return out;
}

std::vector<double> BunceDeddensAlgebra::exponential_block_norms_of(
    const BlochExponential& e) const {
  const std::int64_t s = scale_.at(e.stage);
  std::vector<double> norms(static_cast<std::size_t>(e.stage) + 1, 0.0);
  for (int n = 0; n <= e.stage; ++n) {
    CVector warm;
    double best = 0.0;
    for (int kk = 0; kk < e.grid; ++kk) {
      const Cplx wrap = std::polar(1.0, kTwoPi * kk / e.grid);
      Matrix blk = Matrix::Zero(s, s);
      const Matrix& c = e.coeffs[static_cast<std::size_t>(kk)];
      for (std::int64_t j = 0; j < s; ++j) {
        if (level_of(e.stage, j) != n) continue;
        for (std::int64_t rt = 0; rt < s; ++rt) {
          const Cplx cc = c(rt, j);
          if (std::abs(cc) == 0.0) continue;
          for (std::int64_t r = 0; r < s; ++r) {
            const std::int64_t rp = (r + rt) % s;
            Cplx basis = root(e.stage, j * r);
            if (r + rt >= s) basis *= wrap;
            blk(rp, r) += cc * basis;
          }
        }
      }
      // Small fibers get the exact solve; larger ones a few warm-started
      // power steps. Either way the value is a lower estimate, which is the
      // safe side for every check that consumes exponential norms.
      if (s <= 8) {
        best = std::max(best, spectral_norm(blk));
      } else {
        best = std::max(best, power_norm_estimate(blk, 12, 1e-9, &warm));
      }
    }
    norms[static_cast<std::size_t>(n)] = best;
  }
  return norms;
}

std::vector<double> BunceDeddensAlgebra::sampled_exponential_block_norms(const Element& a,
                                                                         double t) const {
  return exponential_block_norms_of(exponential(a, t));
}

std::vector<std::vector<double>> BunceDeddensAlgebra::sampled_exponential_block_norm_table(
    const Element& a, const std::vector<double>& ts) const {
  if (!is_self_adjoint(a)) {
    throw std::invalid_argument("bd exponential: element is not self-adjoint");
  }
  const std::int64_t s = scale_.at(a.stage);
  const int g = opt_.exp_theta_grid;
  const int levels = a.stage + 1;

  std::vector<Eigen::SelfAdjointEigenSolver<Matrix>> fibers;
  fibers.reserve(static_cast<std::size_t>(g));
  for (int kk = 0; kk < g; ++kk) {
    const Matrix h = bloch_matrix(a, kTwoPi * kk / g);
    fibers.emplace_back(0.5 * (h + h.adjoint()));
  }

  // F(r, j) = root(j r) is the symmetric character matrix; expansion and
  // reassembly against the U_theta^rt D_z basis are plain products with it.
  Matrix fourier(s, s);
  for (std::int64_t r = 0; r < s; ++r) {
    for (std::int64_t j = 0; j < s; ++j) fourier(r, j) = root(a.stage, j * r);
  }
  std::vector<std::vector<std::int64_t>> shell_cols(static_cast<std::size_t>(levels));
  for (std::int64_t j = 0; j < s; ++j) {
    shell_cols[static_cast<std::size_t>(level_of(a.stage, j))].push_back(j);
  }

  std::vector<std::vector<double>> table(ts.size(),
                                         std::vector<double>(static_cast<std::size_t>(levels), 0.0));
  std::vector<CVector> warm(static_cast<std::size_t>(levels));
  Matrix u(s, s), gathered(s, s), coeff(s, s), blk(s, s);
  CVector phases(s);
  for (int kk = 0; kk < g; ++kk) {
    const auto& es = fibers[static_cast<std::size_t>(kk)];
    const Cplx wrap = std::polar(1.0, kTwoPi * kk / g);
    const Cplx unwrap = std::conj(wrap);
    for (std::size_t ti = 0; ti < ts.size(); ++ti) {
      const double t = ts[ti];
      for (std::int64_t i = 0; i < s; ++i) {
        phases(i) = std::polar(1.0, t * es.eigenvalues()(i));
      }
      u.noalias() = es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
      // gathered(rt, r) = conj(wrap factor) * u((r+rt)%s, r)
      for (std::int64_t rt = 0; rt < s; ++rt) {
        for (std::int64_t r = 0; r < s; ++r) {
          const std::int64_t rp = (r + rt) % s;
          gathered(rt, r) = (r + rt >= s ? unwrap : Cplx(1.0)) * u(rp, r);
        }
      }
      coeff.noalias() = gathered * fourier.conjugate() / static_cast<double>(s);
      for (int n = 0; n < levels; ++n) {
        const auto& cols = shell_cols[static_cast<std::size_t>(n)];
        const std::int64_t cnt = static_cast<std::int64_t>(cols.size());
        Matrix csub(s, cnt), fsub(cnt, s);
        for (std::int64_t i = 0; i < cnt; ++i) {
          csub.col(i) = coeff.col(cols[static_cast<std::size_t>(i)]);
          fsub.row(i) = fourier.row(cols[static_cast<std::size_t>(i)]);
        }
        gathered.noalias() = csub * fsub;  // (rt, r) sums over the level's characters
        for (std::int64_t r = 0; r < s; ++r) {
          for (std::int64_t rt = 0; rt < s; ++rt) {
            const std::int64_t rp = (r + rt) % s;
            blk(rp, r) = (r + rt >= s ? wrap : Cplx(1.0)) * gathered(rt, r);
          }
        }
        double& slot = table[ti][static_cast<std::size_t>(n)];
        if (s <= 8) {
          slot = std::max(slot, spectral_norm(blk));
        } else {
          slot = std::max(slot, power_norm_estimate(blk, 8, 1e-9,
                                                    &warm[static_cast<std::size_t>(n)]));
        }
      }
    }
  }
  return table;
}

double BunceDeddensAlgebra::exp_norm_MN(const BlochExponential& e, int M, double N,
                                        const LengthSequence& L) const {
  // Aliased Laurent coefficients of each coefficient function from the
  // theta-grid Fourier data; delta_L^p then scales coefficient k by k^p and
  // the C^0 estimates are sampled on the g*s circle grid.
  const std::int64_t s = scale_.at(e.stage);
  const int g = e.grid;
  double total = 0.0;
  for (std::int64_t j = 0; j < s; ++j) {
    // theta-DFT per r of c_{r,j}(theta_k): Laurent exponent k = r + q*s.
    std::map<int, Cplx> laurent;
    for (std::int64_t rt = 0; rt < s; ++rt) {
      std::vector<Cplx> samples(static_cast<std::size_t>(g));
      for (int kk = 0; kk < g; ++kk) {
        samples[static_cast<std::size_t>(kk)] = e.coeffs[static_cast<std::size_t>(kk)](rt, j);
      }
      const auto hat = dft_cyclic(samples, /*forward=*/true);
      for (int q = 0; q < g; ++q) {
        const int qs = q <= g / 2 ? q : q - g;  // signed frequency
        const Cplx c = hat[static_cast<std::size_t>(q)];
        if (std::abs(c) > 1e-300) {
          laurent[static_cast<int>(rt) + qs * static_cast<int>(s)] += c;
        }
      }
    }
    const double w = std::pow(L.at(level_of(e.stage, j)), N);
    double binom = 1.0;
    for (int p = 0; p <= M; ++p) {
      if (p > 0) binom = binom * static_cast<double>(M - p + 1) / static_cast<double>(p);
      std::map<int, Cplx> dp;
      for (const auto& [k, c] : laurent) {
        const double factor = std::pow(static_cast<double>(k), p);
        if (factor != 0.0) dp[k] = c * factor;
      }
      const CircleGrid grid{g * static_cast<int>(s)};
      total += binom * w * circle_sup(dp, grid, /*refine_rounds=*/1).estimate;
    }
  }
  return total;
}

BdElement BunceDeddensAlgebra::random_element(Rng& rng, int stage,
                                              const std::vector<double>& level_scale) const {
  const std::int64_t sm = scale_.at(check_stage(stage));
  std::vector<Laurent> terms(static_cast<std::size_t>(sm));
  for (std::int64_t j = 0; j < sm; ++j) {
    const double w = level_scale.at(static_cast<std::size_t>(level_of(stage, j)));
    for (int k = -opt_.laurent_degree; k <= opt_.laurent_degree; ++k) {
      terms[static_cast<std::size_t>(j)][k] = rng.cgauss() * w;
    }
  }
  return from_terms(std::move(terms), stage);
}

BdElement BunceDeddensAlgebra::random_self_adjoint(
    Rng& rng, int stage, const std::vector<double>& level_scale) const {
  const Element x = random_element(rng, stage, level_scale);
  return scaled(add(x, adjoint(x)), 0.5);
}

BdElement BunceDeddensAlgebra::random_block(Rng& rng, int n,
                                            const std::vector<double>& level_scale) const {
  const std::int64_t sn = scale_.at(check_stage(n));
  std::vector<Laurent> terms(static_cast<std::size_t>(sn));
  const double w = level_scale.at(static_cast<std::size_t>(n));
  for (std::int64_t j = 0; j < sn; ++j) {
    if (level_of(n, j) != n) continue;
    for (int k = -opt_.laurent_degree; k <= opt_.laurent_degree; ++k) {
      terms[static_cast<std::size_t>(j)][k] = rng.cgauss() * w;
    }
  }
  return from_terms(std::move(terms), n);
}

}  // namespace rdlab
