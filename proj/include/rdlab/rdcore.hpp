#pragma once

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

#include "rdlab/report.hpp"
#include "rdlab/scales.hpp"

namespace rdlab {

// Generic machinery over a filtered algebra instance. An instance provides:
//
//   using Element;
//   std::string name();            bool grid_approximate();
//   int stages();                  double omega();
//   int stage_of(a);
//   Element zero(m), unit();
//   Element embed(a, m), add, sub, scaled, mul, adjoint;
//   Element expectation(a, n);     // E_{m,n} onto stage n, n <= stage_of(a)
//   double cstar_norm(a);
//   Element exp_self_adjoint(a, t) // or sampled_exponential_block_norms(a, t)
//
// Instances are immutable after construction; everything here is a pure
// function of its arguments, so verifier batches can run sample-parallel.

template <class Alg>
struct BlockVector {
  int stage = 0;
  std::vector<typename Alg::Element> blocks;  // blocks[n] lives at stage n
  std::vector<double> norms;                  // cached block C*-norms
};

namespace detail {

inline std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

}  // namespace detail

// a_0 = E_0(a), a_n = E_n(a) - E_{n-1}(a). With validate set, the kernel and
// reconstruction invariants are checked and a contract violation throws
// instead of silently corrupting downstream norms.
template <class Alg>
BlockVector<Alg> block_decompose(const Alg& alg, const typename Alg::Element& a,
                                 bool validate = false) {
  const int m = alg.stage_of(a);
  BlockVector<Alg> bv;
  bv.stage = m;
  bv.blocks.reserve(static_cast<std::size_t>(m) + 1);
  typename Alg::Element prev = alg.expectation(a, 0);
  bv.blocks.push_back(prev);
  for (int n = 1; n <= m; ++n) {
    typename Alg::Element cur = alg.expectation(a, n);
    bv.blocks.push_back(alg.sub(cur, alg.embed(prev, n)));
    prev = std::move(cur);
  }
  bv.norms.reserve(bv.blocks.size());
  for (const auto& blk : bv.blocks) bv.norms.push_back(alg.cstar_norm(blk));

  if (validate) {
    const double scale = std::max(1.0, alg.cstar_norm(a));
    typename Alg::Element recon = alg.embed(bv.blocks[0], m);
    for (int n = 1; n <= m; ++n) recon = alg.add(recon, alg.embed(bv.blocks[n], m));
    if (alg.cstar_norm(alg.sub(recon, a)) > 1e-10 * scale) {
      throw std::runtime_error(alg.name() + ": block reconstruction failed");
    }
    for (int n = 1; n <= m; ++n) {
      if (alg.cstar_norm(alg.expectation(bv.blocks[n], n - 1)) > 1e-9 * scale) {
        throw std::runtime_error(alg.name() + ": block escapes ker E_{n-1}");
      }
    }
  }
  return bv;
}

inline double rd_norm(const std::vector<double>& block_norms, double N,
                      const LengthSequence& L) {
  double acc = 0.0;
  for (std::size_t n = 0; n < block_norms.size(); ++n) {
    acc += block_norms[n] * std::pow(L.at(static_cast<int>(n)), N);
  }
  return acc;
}

inline double tail_rd_norm(const std::vector<double>& block_norms, int n, double N,
                           const LengthSequence& L) {
  double acc = 0.0;
  for (std::size_t k = static_cast<std::size_t>(n) + 1; k < block_norms.size(); ++k) {
    acc += block_norms[k] * std::pow(L.at(static_cast<int>(k)), N);
  }
  return acc;
}

template <class Alg>
typename Alg::Element head_of(const Alg& alg, const BlockVector<Alg>& bv, int n) {
  typename Alg::Element acc = alg.embed(bv.blocks.at(0), n);
  for (int k = 1; k <= n; ++k) acc = alg.add(acc, alg.embed(bv.blocks.at(k), n));
  return acc;
}

template <class Alg>
typename Alg::Element tail_of(const Alg& alg, const BlockVector<Alg>& bv, int n) {
  typename Alg::Element acc = alg.zero(bv.stage);
  for (int k = n + 1; k <= bv.stage; ++k) {
    acc = alg.add(acc, alg.embed(bv.blocks.at(k), bv.stage));
  }
  return acc;
}

// Block C*-norms of exp(i t a) at the stage of a. Exact per instance except
// where the instance only offers grid-sampled exponentials.
template <class Alg>
std::vector<double> exponential_block_norms(const Alg& alg, const typename Alg::Element& a,
                                            double t) {
  if constexpr (requires(const Alg& g, const typename Alg::Element& x) {
                  g.sampled_exponential_block_norms(x, 0.0);
                }) {
    return alg.sampled_exponential_block_norms(a, t);
  } else {
    return block_decompose(alg, alg.exp_self_adjoint(a, t)).norms;
  }
}

// ---- verifiers -------------------------------------------------------------

// ab stays in B_max(n,m) when n != m: E_{max-1}(ab) vanishes.
template <class Alg>
VerificationReport verify_block_product(const Alg& alg, const typename Alg::Element& a,
                                        int n, const typename Alg::Element& b, int m,
                                        std::string params, double tol_base) {
  const double na = alg.cstar_norm(a);
  const double nb = alg.cstar_norm(b);
  const int top = std::max(n, m);
  if (n == m || top == 0) {
    auto r = VerificationReport::bound("block_product_same_level", alg.name(),
                                       std::move(params), 0.0, 0.0, 0.0,
                                       alg.grid_approximate(),
                                       "membership in A_n only; no kernel claim");
    return r;
  }
  if (na < 1e-14 || nb < 1e-14) {
    return VerificationReport::bound("block_product_kernel", alg.name(), std::move(params),
                                     0.0, 0.0, tol_base, alg.grid_approximate(),
                                     "degenerate-zero");
  }
  const auto ab = alg.mul(a, b);
  const double lhs = alg.cstar_norm(alg.expectation(ab, top - 1));
  const double tol = tol_base * std::max(1.0, na) * std::max(1.0, nb);
  return VerificationReport::bound("block_product_kernel", alg.name(), std::move(params),
                                   lhs, 0.0, tol, alg.grid_approximate());
}

// ||a||_N <= ||a|| * lambda_n^{N+1} for a in A_n.
template <class Alg>
VerificationReport verify_stage_norm_bound(const Alg& alg, const LengthSequence& L,
                                           const typename Alg::Element& a, int N,
                                           std::string params, double tol_base) {
  const int n = alg.stage_of(a);
  const double norm = alg.cstar_norm(a);
  if (norm < 1e-14) {
    return VerificationReport::bound("stage_norm_bound", alg.name(), std::move(params),
                                     0.0, 0.0, tol_base, alg.grid_approximate(),
                                     "degenerate-zero");
  }
  const auto bv = block_decompose(alg, a);
  const double lhs = rd_norm(bv.norms, N, L);
  const double rhs = norm * std::pow(L.at(n), N + 1);
  return VerificationReport::bound("stage_norm_bound", alg.name(), std::move(params), lhs,
                                   rhs, tol_base * std::max(1.0, norm),
                                   alg.grid_approximate());
}

// ||ab||_N <= ||a||_N ||b||_N for N >= 1; for N = 0 the mixed bound
// ||ab||_0 <= min(||a||_1 ||b||_0, ||a||_0 ||b||_1).
template <class Alg>
VerificationReport verify_submultiplicative(const Alg& alg, const LengthSequence& L,
                                            const typename Alg::Element& a,
                                            const typename Alg::Element& b, int N,
                                            std::string params, double tol_base) {
  const double na = alg.cstar_norm(a);
  const double nb = alg.cstar_norm(b);
  const char* check = N >= 1 ? "submultiplicative" : "submultiplicative_mixed0";
  if (na < 1e-14 || nb < 1e-14) {
    return VerificationReport::bound(check, alg.name(), std::move(params), 0.0, 0.0,
                                     tol_base, alg.grid_approximate(), "degenerate-zero");
  }
  const auto bva = block_decompose(alg, a);
  const auto bvb = block_decompose(alg, b);
  const auto bvab = block_decompose(alg, alg.mul(a, b));
  double lhs = 0.0;
  double rhs = 0.0;
  if (N >= 1) {
    lhs = rd_norm(bvab.norms, N, L);
    rhs = rd_norm(bva.norms, N, L) * rd_norm(bvb.norms, N, L);
  } else {
    lhs = rd_norm(bvab.norms, 0, L);
    rhs = std::min(rd_norm(bva.norms, 1, L) * rd_norm(bvb.norms, 0, L),
                   rd_norm(bva.norms, 0, L) * rd_norm(bvb.norms, 1, L));
  }
  const double tol = tol_base * std::max(1.0, na) * std::max(1.0, nb);
  return VerificationReport::bound(check, alg.name(), std::move(params), lhs, rhs, tol,
                                   alg.grid_approximate());
}

// ||a_{>n}||_N <= lambda_{n+1}^{-alpha} ||a_{>n}||_{N+alpha}; both sides read
// off the same block vector.
template <class Alg>
VerificationReport verify_tail_bound(const Alg& alg, const LengthSequence& L,
                                     const typename Alg::Element& a, int n, int N,
                                     double alpha, std::string params, double tol_base) {
  const auto bv = block_decompose(alg, a);
  const double lhs = tail_rd_norm(bv.norms, n, N, L);
  double rhs_weighted = 0.0;
  for (std::size_t k = static_cast<std::size_t>(n) + 1; k < bv.norms.size(); ++k) {
    rhs_weighted += bv.norms[k] * std::pow(L.at(static_cast<int>(k)), N + alpha);
  }
  const double rhs = rhs_weighted / std::pow(L.at(n + 1), alpha);
  const double tol = tol_base * std::max(1.0, alg.cstar_norm(a));
  return VerificationReport::bound("tail_bound", alg.name(), std::move(params), lhs, rhs,
                                   tol, alg.grid_approximate());
}

// ||e^{i a_{<=n}}||_N <= lambda_n^{N+1}.
template <class Alg>
VerificationReport verify_head_exponential(const Alg& alg, const LengthSequence& L,
                                           const typename Alg::Element& a, int n, int N,
                                           std::string params, double tol_base) {
  const auto bv = block_decompose(alg, a);
  const auto head = head_of(alg, bv, n);
  const auto exp_norms = exponential_block_norms(alg, head, 1.0);
  const double lhs = rd_norm(exp_norms, N, L);
  const double rhs = std::pow(L.at(n), N + 1);
  return VerificationReport::bound("head_exponential", alg.name(), std::move(params), lhs,
                                   rhs, tol_base * rhs, alg.grid_approximate());
}

// ||a_{<=n} b_{>n}||_N <= ||a_{<=n}||_0 ||b_{>n}||_N, both orders.
template <class Alg>
std::vector<VerificationReport> verify_head_tail_product(
    const Alg& alg, const LengthSequence& L, const typename Alg::Element& a,
    const typename Alg::Element& b, int n, int N, const std::string& params,
    double tol_base) {
  const auto bva = block_decompose(alg, a);
  const auto bvb = block_decompose(alg, b);
  const auto head = alg.embed(head_of(alg, bva, n), bvb.stage);
  const auto tail = tail_of(alg, bvb, n);
  double head0 = 0.0;
  for (int k = 0; k <= n; ++k) head0 += bva.norms[static_cast<std::size_t>(k)];
  const double tailN = tail_rd_norm(bvb.norms, n, N, L);
  const double rhs = head0 * tailN;
  const double tol =
      tol_base * std::max(1.0, alg.cstar_norm(a)) * std::max(1.0, alg.cstar_norm(b));

  std::vector<VerificationReport> out;
  const auto bv_ht = block_decompose(alg, alg.mul(head, tail));
  out.push_back(VerificationReport::bound("head_tail_product", alg.name(),
                                          params + " order=head*tail",
                                          rd_norm(bv_ht.norms, N, L), rhs, tol,
                                          alg.grid_approximate()));
  const auto bv_th = block_decompose(alg, alg.mul(tail, head));
  out.push_back(VerificationReport::bound("head_tail_product", alg.name(),
                                          params + " order=tail*head",
                                          rd_norm(bv_th.norms, N, L), rhs, tol,
                                          alg.grid_approximate()));
  return out;
}

// ||e^{ita}||_N <= lambda_n^{N+1} exp(|t| lambda_n^2 ||a_{>n}||_N), compared
// in logs: the right side overflows doubles long before the inequality gets
// interesting.
template <class Alg>
VerificationReport verify_trotter_log(const Alg& alg, const LengthSequence& L,
                                      const typename Alg::Element& a, double t, int n,
                                      int N, std::string params, double tol_base) {
  const auto bv = block_decompose(alg, a);
  const auto exp_norms = exponential_block_norms(alg, a, t);
  const double lhs_log = std::log(rd_norm(exp_norms, N, L));
  const double rhs_log = (N + 1) * std::log(L.at(n)) +
                         std::abs(t) * L.at(n) * L.at(n) * tail_rd_norm(bv.norms, n, N, L);
  return VerificationReport::bound("trotter_bound_log", alg.name(), std::move(params),
                                   lhs_log, rhs_log, tol_base, alg.grid_approximate());
}

struct PbeResult {
  std::vector<VerificationReport> reports;
  double fitted_slope = 0.0;
};

// ||e^{ita}||_N <= |t|^{N+1} e^{||a||_{N+3}} across a log-spaced t grid, in
// logs, plus the fitted log-log growth exponent.
template <class Alg>
PbeResult pbe_experiment(const Alg& alg, const LengthSequence& L,
                         const typename Alg::Element& a, int N,
                         const std::vector<double>& t_grid, const std::string& params,
                         double tol_base, double slope_allowance = 0.1) {
  PbeResult out;
  const auto bv = block_decompose(alg, a);
  const double a_n3 = rd_norm(bv.norms, N + 3, L);
  const double norm_a = alg.cstar_norm(a);
  std::vector<double> xs;
  std::vector<double> ys;
  std::vector<std::vector<double>> norm_table;
  if (norm_a >= 1e-14) {
    if constexpr (requires { alg.sampled_exponential_block_norm_table(a, t_grid); }) {
      norm_table = alg.sampled_exponential_block_norm_table(a, t_grid);
    } else {
      for (double t : t_grid) norm_table.push_back(exponential_block_norms(alg, a, t));
    }
  }
  for (std::size_t ti = 0; ti < t_grid.size(); ++ti) {
    const double t = t_grid[ti];
    std::string point = params + " t=" + detail::fmt(t);
    if (norm_a < 1e-14) {
      out.reports.push_back(VerificationReport::bound("pbe_bound_log", alg.name(),
                                                      std::move(point), 0.0, 0.0, tol_base,
                                                      alg.grid_approximate(),
                                                      "degenerate-zero"));
      xs.push_back(std::log(t));
      ys.push_back(0.0);
      continue;
    }
    const double lhs_log = std::log(rd_norm(norm_table[ti], N, L));
    const double rhs_log = (N + 1) * std::log(t) + a_n3;
    out.reports.push_back(VerificationReport::bound("pbe_bound_log", alg.name(),
                                                    std::move(point), lhs_log, rhs_log,
                                                    tol_base, alg.grid_approximate()));
    xs.push_back(std::log(t));
    ys.push_back(lhs_log);
  }
  // Least-squares slope of log ||e^{ita}||_N against log t.
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const double cnt = static_cast<double>(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  const double denom = cnt * sxx - sx * sx;
  out.fitted_slope = denom > 0.0 ? (cnt * sxy - sx * sy) / denom : 0.0;
  out.reports.push_back(VerificationReport::bound(
      "pbe_slope", alg.name(), params, out.fitted_slope, static_cast<double>(N + 1),
      slope_allowance, alg.grid_approximate(),
      "fitted log-log growth exponent vs expected degree"));
  return out;
}

}  // namespace rdlab
