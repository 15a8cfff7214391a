#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rdlab/parallel.hpp"
#include "rdlab/random.hpp"
#include "rdlab/rdcore.hpp"
#include "rdlab/report.hpp"

namespace rdlab {

// Batched sampling drivers behind both the CLI verbs and the acceptance
// suite. Sample k derives its generator from (seed, check id, k), so report
// payloads are identical for any jobs setting.
struct SuiteContext {
  int stage = 5;
  int samples = 200;
  std::uint64_t seed = 12345;
  int jobs = 1;
  std::vector<double> level_scale;
  double tol_exact = 1e-9;
  double tol_grid = 1e-6;
};

namespace check_id {
inline constexpr std::uint64_t contract = 1;
inline constexpr std::uint64_t block_product = 2;
inline constexpr std::uint64_t stage_norm = 3;
inline constexpr std::uint64_t submult = 4;
inline constexpr std::uint64_t tail = 5;
inline constexpr std::uint64_t head_exp = 6;
inline constexpr std::uint64_t head_tail = 7;
inline constexpr std::uint64_t trotter = 8;
inline constexpr std::uint64_t pbe = 9;
inline constexpr std::uint64_t equivalence = 10;
inline constexpr std::uint64_t leibniz = 11;
inline constexpr std::uint64_t oracle = 12;
}  // namespace check_id

template <class Alg>
double suite_tol(const Alg& alg, const SuiteContext& ctx) {
  return alg.grid_approximate() ? ctx.tol_grid : ctx.tol_exact;
}

// Exponential-bound right sides, shared by the one-shot verifiers and the
// batched drivers so the formulas cannot drift apart.
inline double trotter_rhs_log(const LengthSequence& L, int n, int N, double t,
                              double tail_norm) {
  return (N + 1) * std::log(L.at(n)) + std::abs(t) * L.at(n) * L.at(n) * tail_norm;
}

inline double pbe_rhs_log(int N, double t, double norm_n3) {
  return (N + 1) * std::log(t) + norm_n3;
}

template <class Body>
void sample_batch(int samples, int jobs, std::vector<VerificationReport>& out, Body&& body) {
  std::vector<std::vector<VerificationReport>> slots(static_cast<std::size_t>(samples));
  parallel_for(static_cast<std::size_t>(samples), jobs,
               [&](std::size_t k) { slots[k] = body(k); });
  for (auto& s : slots) {
    for (auto& r : s) out.push_back(std::move(r));
  }
}

// Projection, Omega bound, bimodularity, star compatibility, reconstruction.
template <class Alg>
void drive_contract(const Alg& alg, const SuiteContext& ctx,
                    std::vector<VerificationReport>& out) {
  const double tol = suite_tol(alg, ctx);
  sample_batch(ctx.samples, ctx.jobs, out, [&](std::size_t k) {
    Rng rng(mix_seed(ctx.seed, check_id::contract, k));
    std::vector<VerificationReport> r;
    const auto a = alg.random_element(rng, ctx.stage, ctx.level_scale);
    const double na = alg.cstar_norm(a);
    const int n = ctx.stage == 0
                      ? 0
                      : static_cast<int>(rng.bits() % static_cast<std::uint64_t>(ctx.stage));
    const std::string params = "stage=" + std::to_string(ctx.stage) + " n=" + std::to_string(n) +
                               " sample=" + std::to_string(k);

    const auto e1 = alg.expectation(a, n);
    const auto e2 = alg.expectation(alg.embed(e1, ctx.stage), n);
    r.push_back(VerificationReport::bound(
        "contract_projection", alg.name(), params, alg.cstar_norm(alg.sub(e2, e1)), 0.0,
        tol * std::max(1.0, na), alg.grid_approximate()));
    r.push_back(VerificationReport::bound("contract_omega", alg.name(), params,
                                          alg.cstar_norm(e1), alg.omega() * na,
                                          tol * std::max(1.0, na), alg.grid_approximate()));

    const auto b = alg.random_element(rng, n, ctx.level_scale);
    const double nb = alg.cstar_norm(b);
    const double tol2 = tol * std::max(1.0, na) * std::max(1.0, nb);
    const auto eb = alg.embed(b, ctx.stage);
    r.push_back(VerificationReport::bound(
        "contract_bimodular", alg.name(), params + " order=right",
        alg.cstar_norm(alg.sub(alg.expectation(alg.mul(a, eb), n), alg.mul(e1, b))), 0.0,
        tol2, alg.grid_approximate()));
    r.push_back(VerificationReport::bound(
        "contract_bimodular", alg.name(), params + " order=left",
        alg.cstar_norm(alg.sub(alg.expectation(alg.mul(eb, a), n), alg.mul(b, e1))), 0.0,
        tol2, alg.grid_approximate()));

    const auto bv = block_decompose(alg, a);
    const auto bv_star = block_decompose(alg, alg.adjoint(a));
    double star_gap = 0.0;
    for (std::size_t j = 0; j < bv.blocks.size(); ++j) {
      star_gap = std::max(star_gap, alg.cstar_norm(alg.sub(bv_star.blocks[j],
                                                           alg.adjoint(bv.blocks[j]))));
    }
    r.push_back(VerificationReport::bound("contract_star_blocks", alg.name(), params,
                                          star_gap, 0.0, tol * std::max(1.0, na),
                                          alg.grid_approximate()));

    auto recon = alg.embed(bv.blocks[0], ctx.stage);
    for (int j = 1; j <= ctx.stage; ++j) {
      recon = alg.add(recon, alg.embed(bv.blocks[static_cast<std::size_t>(j)], ctx.stage));
    }
    r.push_back(VerificationReport::bound("contract_reconstruction", alg.name(), params,
                                          alg.cstar_norm(alg.sub(recon, a)), 0.0,
                                          tol * std::max(1.0, na), alg.grid_approximate()));
    return r;
  });
}

template <class Alg>
void drive_block_products(const Alg& alg, const SuiteContext& ctx,
                          std::vector<VerificationReport>& out) {
  if (ctx.stage < 1) return;
  const double tol = suite_tol(alg, ctx);
  sample_batch(ctx.samples, ctx.jobs, out, [&](std::size_t k) {
    Rng rng(mix_seed(ctx.seed, check_id::block_product, k));
    const auto levels = static_cast<std::uint64_t>(ctx.stage) + 1;
    const int n = static_cast<int>(rng.bits() % levels);
    int m = static_cast<int>(rng.bits() % levels);
    while (m == n) m = static_cast<int>(rng.bits() % levels);
    const auto a = alg.random_block(rng, n, ctx.level_scale);
    const auto b = alg.random_block(rng, m, ctx.level_scale);
    const std::string params = "n=" + std::to_string(n) + " m=" + std::to_string(m) +
                               " sample=" + std::to_string(k);
    return std::vector<VerificationReport>{
        verify_block_product(alg, a, n, b, m, params, tol)};
  });
}

template <class Alg>
void drive_stage_norm(const Alg& alg, const LengthSequence& L, const SuiteContext& ctx,
                      const std::vector<int>& ns, const std::vector<int>& Ns,
                      std::vector<VerificationReport>& out) {
  if (!L.rd_admissible) {
    out.push_back(VerificationReport::skip("stage_norm_bound", alg.name(),
                                           "rd_admissible=false: lambda_n < 2*Omega*(n+1)"));
    return;
  }
  const double tol = suite_tol(alg, ctx);
  for (int n : ns) {
    if (n > alg.stages()) continue;
    sample_batch(ctx.samples, ctx.jobs, out, [&](std::size_t k) {
      Rng rng(mix_seed(ctx.seed, check_id::stage_norm, mix_seed(k, n)));
      const auto a = alg.random_element(rng, n, ctx.level_scale);
      const double norm = alg.cstar_norm(a);
      std::vector<VerificationReport> r;
      const auto bv = block_decompose(alg, a);
      for (int N : Ns) {
        const std::string params = "n=" + std::to_string(n) + " N=" + std::to_string(N) +
                                   " sample=" + std::to_string(k);
        const double lhs = rd_norm(bv.norms, N, L);
        const double rhs = norm * std::pow(L.at(n), N + 1);
        r.push_back(VerificationReport::bound("stage_norm_bound", alg.name(), params, lhs,
                                              rhs, tol * std::max(1.0, norm),
                                              alg.grid_approximate()));
      }
      return r;
    });
  }
}

template <class Alg>
void drive_submultiplicative(const Alg& alg, const LengthSequence& L, const SuiteContext& ctx,
                             const std::vector<int>& Ns,
                             std::vector<VerificationReport>& out) {
  if (!L.rd_admissible) {
    out.push_back(VerificationReport::skip("submultiplicative", alg.name(),
                                           "rd_admissible=false: lambda_n < 2*Omega*(n+1)"));
    return;
  }
  const double tol = suite_tol(alg, ctx);
  sample_batch(ctx.samples, ctx.jobs, out, [&](std::size_t k) {
    Rng rng(mix_seed(ctx.seed, check_id::submult, k));
    const auto a = alg.random_element(rng, ctx.stage, ctx.level_scale);
    const auto b = alg.random_element(rng, ctx.stage, ctx.level_scale);
    const double na = alg.cstar_norm(a);
    const double nb = alg.cstar_norm(b);
    const double tol2 = tol * std::max(1.0, na) * std::max(1.0, nb);
    const auto bva = block_decompose(alg, a);
    const auto bvb = block_decompose(alg, b);
    const auto bvab = block_decompose(alg, alg.mul(a, b));
    std::vector<VerificationReport> r;
    for (int N : Ns) {
      const std::string params = "stage=" + std::to_string(ctx.stage) +
                                 " N=" + std::to_string(N) + " sample=" + std::to_string(k);
      if (N >= 1) {
        r.push_back(VerificationReport::bound(
            "submultiplicative", alg.name(), params, rd_norm(bvab.norms, N, L),
            rd_norm(bva.norms, N, L) * rd_norm(bvb.norms, N, L), tol2,
            alg.grid_approximate()));
      } else {
        const double rhs = std::min(rd_norm(bva.norms, 1, L) * rd_norm(bvb.norms, 0, L),
                                    rd_norm(bva.norms, 0, L) * rd_norm(bvb.norms, 1, L));
        r.push_back(VerificationReport::bound("submultiplicative_mixed0", alg.name(), params,
                                              rd_norm(bvab.norms, 0, L), rhs, tol2,
                                              alg.grid_approximate()));
      }
    }
    return r;
  });
}

template <class Alg>
void drive_tail_bound(const Alg& alg, const LengthSequence& L, const SuiteContext& ctx,
                      int stage, const std::vector<int>& ns, const std::vector<int>& Ns,
                      double alpha, std::vector<VerificationReport>& out) {
  const double tol = suite_tol(alg, ctx);
  sample_batch(ctx.samples, ctx.jobs, out, [&](std::size_t k) {
    Rng rng(mix_seed(ctx.seed, check_id::tail, k));
    const auto a = alg.random_element(rng, stage, ctx.level_scale);
    const auto bv = block_decompose(alg, a);
    const double scale = std::max(1.0, alg.cstar_norm(a));
    std::vector<VerificationReport> r;
    for (int n : ns) {
      if (n + 1 > L.depth() || n >= stage) continue;
      for (int N : Ns) {
        const std::string params = "stage=" + std::to_string(stage) + " n=" + std::to_string(n) +
                                   " N=" + std::to_string(N) + " alpha=" + detail::fmt(alpha) +
                                   " sample=" + std::to_string(k);
        double rhs_weighted = 0.0;
        for (std::size_t j = static_cast<std::size_t>(n) + 1; j < bv.norms.size(); ++j) {
          rhs_weighted += bv.norms[j] * std::pow(L.at(static_cast<int>(j)), N + alpha);
        }
        r.push_back(VerificationReport::bound(
            "tail_bound", alg.name(), params, tail_rd_norm(bv.norms, n, N, L),
            rhs_weighted / std::pow(L.at(n + 1), alpha), tol * scale,
            alg.grid_approximate()));
      }
    }
    return r;
  });
}

template <class Alg>
void drive_head_exponential(const Alg& alg, const LengthSequence& L, const SuiteContext& ctx,
                            int stage, const std::vector<int>& ns, const std::vector<int>& Ns,
                            std::vector<VerificationReport>& out) {
  if (!L.rd_admissible) {
    out.push_back(VerificationReport::skip("head_exponential", alg.name(),
                                           "rd_admissible=false: lambda_n < 2*Omega*(n+1)"));
    return;
  }
  const double tol = suite_tol(alg, ctx);
  sample_batch(ctx.samples, ctx.jobs, out, [&](std::size_t k) {
    Rng rng(mix_seed(ctx.seed, check_id::head_exp, k));
    const auto a = alg.random_self_adjoint(rng, stage, ctx.level_scale);
    const auto bv = block_decompose(alg, a);
    std::vector<VerificationReport> r;
    for (int n : ns) {
      if (n > stage) continue;
      const auto head = head_of(alg, bv, n);
      const auto exp_norms = exponential_block_norms(alg, head, 1.0);
      for (int N : Ns) {
        const std::string params = "stage=" + std::to_string(stage) + " n=" + std::to_string(n) +
                                   " N=" + std::to_string(N) + " sample=" + std::to_string(k);
        const double rhs = std::pow(L.at(n), N + 1);
        r.push_back(VerificationReport::bound("head_exponential", alg.name(), params,
                                              rd_norm(exp_norms, N, L), rhs, tol * rhs,
                                              alg.grid_approximate()));
      }
    }
    return r;
  });
}

template <class Alg>
void drive_head_tail_product(const Alg& alg, const LengthSequence& L, const SuiteContext& ctx,
                             int stage, const std::vector<int>& ns, const std::vector<int>& Ns,
                             std::vector<VerificationReport>& out) {
  const double tol = suite_tol(alg, ctx);
  sample_batch(ctx.samples, ctx.jobs, out, [&](std::size_t k) {
    Rng rng(mix_seed(ctx.seed, check_id::head_tail, k));
    const auto a = alg.random_element(rng, stage, ctx.level_scale);
    const auto b = alg.random_element(rng, stage, ctx.level_scale);
    const double tol2 = tol * std::max(1.0, alg.cstar_norm(a)) *
                        std::max(1.0, alg.cstar_norm(b));
    const auto bva = block_decompose(alg, a);
    const auto bvb = block_decompose(alg, b);
    std::vector<VerificationReport> r;
    for (int n : ns) {
      if (n >= stage) continue;
      const auto head = alg.embed(head_of(alg, bva, n), stage);
      const auto tail = tail_of(alg, bvb, n);
      double head0 = 0.0;
      for (int j = 0; j <= n; ++j) head0 += bva.norms[static_cast<std::size_t>(j)];
      const auto bv_ht = block_decompose(alg, alg.mul(head, tail));
      const auto bv_th = block_decompose(alg, alg.mul(tail, head));
      for (int N : Ns) {
        const std::string params = "stage=" + std::to_string(stage) + " n=" + std::to_string(n) +
                                   " N=" + std::to_string(N) + " sample=" + std::to_string(k);
        const double rhs = head0 * tail_rd_norm(bvb.norms, n, N, L);
        r.push_back(VerificationReport::bound("head_tail_product", alg.name(),
                                              params + " order=head*tail",
                                              rd_norm(bv_ht.norms, N, L), rhs, tol2,
                                              alg.grid_approximate()));
        r.push_back(VerificationReport::bound("head_tail_product", alg.name(),
                                              params + " order=tail*head",
                                              rd_norm(bv_th.norms, N, L), rhs, tol2,
                                              alg.grid_approximate()));
      }
    }
    return r;
  });
}

template <class Alg>
void drive_trotter(const Alg& alg, const LengthSequence& L, const SuiteContext& ctx,
                   int stage, const std::vector<double>& ts, const std::vector<int>& ns,
                   int N, std::vector<VerificationReport>& out) {
  if (!L.rd_admissible) {
    out.push_back(VerificationReport::skip("trotter_bound_log", alg.name(),
                                           "rd_admissible=false: lambda_n < 2*Omega*(n+1)"));
    return;
  }
  const double tol = suite_tol(alg, ctx);
  sample_batch(ctx.samples, ctx.jobs, out, [&](std::size_t k) {
    Rng rng(mix_seed(ctx.seed, check_id::trotter, k));
    const auto a = alg.random_self_adjoint(rng, stage, ctx.level_scale);
    const auto bv = block_decompose(alg, a);
    std::vector<VerificationReport> r;
    for (double t : ts) {
      const auto exp_norms = exponential_block_norms(alg, a, t);
      const double lhs_log = std::log(rd_norm(exp_norms, N, L));
      for (int n : ns) {
        if (n >= stage) continue;
        const std::string params = "stage=" + std::to_string(stage) + " n=" + std::to_string(n) +
                                   " N=" + std::to_string(N) + " t=" + detail::fmt(t) +
                                   " sample=" + std::to_string(k);
        const double rhs_log = trotter_rhs_log(L, n, N, t, tail_rd_norm(bv.norms, n, N, L));
        r.push_back(VerificationReport::bound("trotter_bound_log", alg.name(), params,
                                              lhs_log, rhs_log, tol,
                                              alg.grid_approximate()));
      }
    }
    return r;
  });
}

template <class Alg>
void drive_pbe(const Alg& alg, const LengthSequence& L, const SuiteContext& ctx, int stage,
               int N, const std::vector<double>& t_grid,
               std::vector<VerificationReport>& out) {
  if (!L.rd_admissible) {
    out.push_back(VerificationReport::skip("pbe_bound_log", alg.name(),
                                           "rd_admissible=false: lambda_n < 2*Omega*(n+1)"));
    return;
  }
  if (N + 3 > L.depth()) {
    out.push_back(VerificationReport::skip("pbe_bound_log", alg.name(),
                                           "N+3 exceeds the configured weight range"));
    return;
  }
  const double tol = suite_tol(alg, ctx);
  sample_batch(ctx.samples, ctx.jobs, out, [&](std::size_t k) {
    Rng rng(mix_seed(ctx.seed, check_id::pbe, k));
    const auto a = alg.random_self_adjoint(rng, stage, ctx.level_scale);
    const std::string params = "stage=" + std::to_string(stage) + " N=" + std::to_string(N) +
                               " sample=" + std::to_string(k);
    return pbe_experiment(alg, L, a, N, t_grid, params, tol).reports;
  });
}

// normA(a, N) <= C * normB(a, N + shift) on random samples. salt keeps the
// random streams of different directions apart without relying on the
// platform's string hash.
template <class Alg, class NormA, class NormB>
void drive_norm_equivalence(const Alg& alg, const SuiteContext& ctx, const std::string& check,
                            std::uint64_t salt, NormA&& normA, NormB&& normB, double C,
                            double shift, const std::vector<int>& Ns,
                            std::vector<VerificationReport>& out) {
  const double tol = suite_tol(alg, ctx);
  sample_batch(ctx.samples, ctx.jobs, out, [&](std::size_t k) {
    Rng rng(mix_seed(ctx.seed, check_id::equivalence, mix_seed(k, salt)));
    const auto a = alg.random_element(rng, ctx.stage, ctx.level_scale);
    const double scale = std::max(1.0, alg.cstar_norm(a));
    std::vector<VerificationReport> r;
    for (int N : Ns) {
      const std::string params = "stage=" + std::to_string(ctx.stage) + " N=" + std::to_string(N) +
                                 " C=" + detail::fmt(C) + " shift=" + detail::fmt(shift) +
                                 " sample=" + std::to_string(k);
      r.push_back(VerificationReport::bound(check, alg.name(), params, normA(a, N),
                                            C * normB(a, N + shift), tol * scale,
                                            alg.grid_approximate()));
    }
    return r;
  });
}

}  // namespace rdlab
