#include "rdlab/runner.hpp"

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <stdexcept>

#include "rdlab/suite.hpp"

namespace rdlab {

namespace {

using nlohmann::json;

struct Instances {
  Scale scale;
  LengthSequence lengths;
  SuiteContext ctx;
  explicit Instances(const ExperimentConfig& cfg)
      : scale(cfg.make_scale()), lengths(cfg.make_lengths()) {
    ctx.stage = cfg.stage;
    ctx.samples = cfg.samples;
    ctx.seed = cfg.seed;
    ctx.jobs = cfg.jobs;
    ctx.level_scale = cfg.make_level_scale(lengths);
  }
};

BunceDeddensAlgebra::Options bd_options(const ExperimentConfig& cfg) {
  BunceDeddensAlgebra::Options opt;
  opt.theta_grid = cfg.bd_theta_grid;
  opt.exp_theta_grid = cfg.bd_exp_theta_grid;
  opt.window = cfg.bd_window;
  opt.window_iters = cfg.bd_window_iters;
  opt.laurent_degree = cfg.bd_degree;
  return opt;
}

std::vector<int> small_stages(int limit, int top) {
  std::vector<int> out;
  for (int n = 0; n <= std::min(limit, top); ++n) out.push_back(n);
  return out;
}

// ---- per-algebra norm-equivalence and oracle sections ----------------------

template <class Alg>
double rd_norm_of(const Alg& alg, const LengthSequence& L, const typename Alg::Element& a,
                  double N) {
  return rd_norm(block_decompose(alg, a).norms, N, L);
}

void equivalence_section(const OdometerAlgebra& alg, const LengthSequence& L,
                         const SuiteContext& ctx, std::vector<VerificationReport>& out) {
  const std::vector<int> Ns = {0, 1, 2};
  drive_norm_equivalence(
      alg, ctx, "equiv_rd_le_star", 1,
      [&](const OdometerElement& a, double N) { return rd_norm_of(alg, L, a, N); },
      [&](const OdometerElement& a, double N) { return alg.star_norm(a, N, L); }, 1.0, 0.0,
      Ns, out);
  if (L.fast_growth) {
    drive_norm_equivalence(
        alg, ctx, "equiv_star_le_rd", 2,
        [&](const OdometerElement& a, double N) { return alg.star_norm(a, N, L); },
        [&](const OdometerElement& a, double N) { return rd_norm_of(alg, L, a, N); }, L.c,
        L.beta, Ns, out);
  } else {
    out.push_back(VerificationReport::skip("equiv_star_le_rd", alg.name(),
                                           "fast_growth=false: s_m > c*lambda_m^beta"));
  }
}

void equivalence_section(const DihedralAlgebra& alg, const LengthSequence& L,
                         const SuiteContext& ctx, std::vector<VerificationReport>& out) {
  const std::vector<int> Ns = {0, 1, 2};
  drive_norm_equivalence(
      alg, ctx, "equiv_rd_le_hash", 3,
      [&](const SDElement& a, double N) { return rd_norm_of(alg, L, a, N); },
      [&](const SDElement& a, double N) { return alg.hash_norm(a, N, L); }, 1.0, 0.0, Ns,
      out);
  if (L.fast_growth) {
    // Reverse direction assembled from the component bounds: the hash norm is
    // controlled by 2c times the weighted norm at N + beta.
    drive_norm_equivalence(
        alg, ctx, "equiv_hash_le_rd", 4,
        [&](const SDElement& a, double N) { return alg.hash_norm(a, N, L); },
        [&](const SDElement& a, double N) { return rd_norm_of(alg, L, a, N); }, 2.0 * L.c,
        L.beta, Ns, out);
  } else {
    out.push_back(VerificationReport::skip("equiv_hash_le_rd", alg.name(),
                                           "fast_growth=false: s_m > c*lambda_m^beta"));
  }
  // Component bounds ||f_n|| <= ||f_n + v g_n|| and same for g.
  const double tol = suite_tol(alg, ctx);
  sample_batch(ctx.samples, ctx.jobs, out, [&](std::size_t k) {
    Rng rng(mix_seed(ctx.seed, check_id::equivalence, mix_seed(k, 5)));
    const auto a = alg.random_element(rng, ctx.stage, ctx.level_scale);
    const auto bv = block_decompose(alg, a);
    const auto& odo = alg.functions();
    std::vector<VerificationReport> r;
    double worst_f = 0.0;
    double worst_g = 0.0;
    double bound = 0.0;
    for (std::size_t n = 0; n < bv.blocks.size(); ++n) {
      const double block_norm = bv.norms[n];
      worst_f = std::max(worst_f, odo.cstar_norm(bv.blocks[n].f) - block_norm);
      worst_g = std::max(worst_g, odo.cstar_norm(bv.blocks[n].g) - block_norm);
      bound = std::max(bound, block_norm);
    }
    const std::string params = "stage=" + std::to_string(ctx.stage) +
                               " sample=" + std::to_string(k);
    const double tol2 = tol * std::max(1.0, alg.cstar_norm(a));
    r.push_back(VerificationReport::bound("equiv_component_f_block", alg.name(), params,
                                          worst_f, 0.0, tol2, alg.grid_approximate()));
    r.push_back(VerificationReport::bound("equiv_component_g_block", alg.name(), params,
                                          worst_g, 0.0, tol2, alg.grid_approximate()));
    return r;
  });
}

void equivalence_section(const BunceDeddensAlgebra& alg, const LengthSequence& L,
                         const SuiteContext& ctx, std::vector<VerificationReport>& out) {
  const std::vector<int> Ns = {0, 1, 2};
  drive_norm_equivalence(
      alg, ctx, "equiv_rd_le_0N", 6,
      [&](const BdElement& a, double N) { return rd_norm_of(alg, L, a, N); },
      [&](const BdElement& a, double N) { return alg.norm_0N(a, N, L).estimate; }, 1.0, 0.0,
      Ns, out);
  if (L.fast_growth) {
    drive_norm_equivalence(
        alg, ctx, "equiv_0N_le_rd", 7,
        [&](const BdElement& a, double N) { return alg.norm_0N(a, N, L).estimate; },
        [&](const BdElement& a, double N) { return rd_norm_of(alg, L, a, N); }, L.c, L.beta,
        Ns, out);
  } else {
    out.push_back(VerificationReport::skip("equiv_0N_le_rd", alg.name(),
                                           "fast_growth=false: s_m > c*lambda_m^beta"));
  }
}

void equivalence_section(const UhfAlgebra& alg, const LengthSequence& L,
                         const SuiteContext& ctx, std::vector<VerificationReport>& out) {
  const std::vector<int> Ns = {0, 1, 2};
  drive_norm_equivalence(
      alg, ctx, "equiv_rd_le_percent", 8,
      [&](const UhfElement& a, double N) { return rd_norm_of(alg, L, a, N); },
      [&](const UhfElement& a, double N) { return alg.percent_norm(a, N, L); }, 1.0, 0.0,
      Ns, out);
  if (L.fast_growth) {
    drive_norm_equivalence(
        alg, ctx, "equiv_percent_le_rd", 9,
        [&](const UhfElement& a, double N) { return alg.percent_norm(a, N, L); },
        [&](const UhfElement& a, double N) { return rd_norm_of(alg, L, a, N); }, L.c * L.c,
        2.0 * L.beta, Ns, out);
  } else {
    out.push_back(VerificationReport::skip("equiv_percent_le_rd", alg.name(),
                                           "fast_growth=false: s_m > c*lambda_m^beta"));
  }
}

void equivalence_section(const SequenceAlgebra&, const LengthSequence&, const SuiteContext&,
                         std::vector<VerificationReport>&) {}

// Leibniz pair for the shift-derivation norms plus exponential growth of the
// first-order norm against the zeroth.
void leibniz_section(const BunceDeddensAlgebra& alg, const LengthSequence& L,
                     const SuiteContext& ctx, int N, const std::vector<double>& t_grid,
                     std::vector<VerificationReport>& out) {
  const double tol = suite_tol(alg, ctx);
  sample_batch(ctx.samples, ctx.jobs, out, [&](std::size_t k) {
    Rng rng(mix_seed(ctx.seed, check_id::leibniz, k));
    const auto a = alg.random_element(rng, ctx.stage, ctx.level_scale);
    const auto b = alg.random_element(rng, ctx.stage, ctx.level_scale);
    const double lhs = alg.norm_MN(alg.mul(a, b), 1, N, L);
    const double rhs = alg.norm_0N(a, N, L).estimate * alg.norm_MN(b, 1, N, L) +
                       alg.norm_MN(a, 1, N, L) * alg.norm_0N(b, N, L).estimate;
    const std::string params = "stage=" + std::to_string(ctx.stage) + " N=" + std::to_string(N) +
                               " sample=" + std::to_string(k);
    const double tol2 = tol * std::max(1.0, alg.cstar_norm(a)) *
                        std::max(1.0, alg.cstar_norm(b));
    return std::vector<VerificationReport>{VerificationReport::bound(
        "leibniz_pair", alg.name(), params, lhs, rhs, tol2, true)};
  });

  // Growth comparison on a handful of elements.
  const int growth_samples = std::min(ctx.samples, 5);
  sample_batch(growth_samples, ctx.jobs, out, [&](std::size_t k) {
    Rng rng(mix_seed(ctx.seed, check_id::leibniz, mix_seed(k, 77)));
    const auto a = alg.random_self_adjoint(rng, ctx.stage, ctx.level_scale);
    std::vector<VerificationReport> r;
    std::vector<double> xs, y0, y1;
    for (double t : t_grid) {
      const auto e = alg.exponential(a, t);
      const double n0 = alg.exp_norm_MN(e, 0, N, L);
      const double n1 = alg.exp_norm_MN(e, 1, N, L);
      const std::string params = "stage=" + std::to_string(ctx.stage) +
                                 " N=" + std::to_string(N) + " t=" + detail::fmt(t) +
                                 " sample=" + std::to_string(k);
      r.push_back(VerificationReport::info("leibniz_growth_norm0", alg.name(), params, n0));
      r.push_back(VerificationReport::info("leibniz_growth_norm1", alg.name(), params, n1));
      xs.push_back(std::log(t));
      y0.push_back(std::log(std::max(n0, 1e-300)));
      y1.push_back(std::log(std::max(n1, 1e-300)));
    }
    auto slope = [&](const std::vector<double>& ys) {
      double sx = 0, sy = 0, sxx = 0, sxy = 0;
      const double cnt = static_cast<double>(xs.size());
      for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
      }
      const double den = cnt * sxx - sx * sx;
      return den > 0 ? (cnt * sxy - sx * sy) / den : 0.0;
    };
    const double s0 = slope(y0);
    const double s1 = slope(y1);
    const std::string params = "stage=" + std::to_string(ctx.stage) + " N=" + std::to_string(N) +
                               " sample=" + std::to_string(k);
    r.push_back(VerificationReport::bound("leibniz_growth_exponent", alg.name(), params, s1,
                                          s0 + 1.0, 0.1, true,
                                          "norm1 growth exponent vs norm0 + 1"));
    return r;
  });
}

void oracle_section(const OdometerAlgebra& alg, const SuiteContext& ctx,
                    std::vector<VerificationReport>& out) {
  sample_batch(ctx.samples, ctx.jobs, out, [&](std::size_t k) {
    Rng rng(mix_seed(ctx.seed, check_id::oracle, k));
    const auto a = alg.random_element(rng, ctx.stage, ctx.level_scale);
    const auto b = alg.random_element(rng, ctx.stage, ctx.level_scale);
    std::vector<VerificationReport> r;
    const std::string params = "stage=" + std::to_string(ctx.stage) +
                               " sample=" + std::to_string(k);
    const double gap = alg.cstar_norm(alg.sub(alg.mul(a, b), alg.mul_convolution(a, b)));
    r.push_back(VerificationReport::bound(
        "oracle_product_convolution", alg.name(), params, gap, 0.0,
        1e-10 * std::max(1.0, alg.cstar_norm(a)) * std::max(1.0, alg.cstar_norm(b)), false));
    if (ctx.stage >= 1) {
      const int n = static_cast<int>(rng.bits() % static_cast<std::uint64_t>(ctx.stage));
      r.push_back(VerificationReport::bound(
          "oracle_expectation_routes", alg.name(), params + " n=" + std::to_string(n),
          alg.expectation_routes_gap(a, n), 0.0, 1e-12 * std::max(1.0, alg.cstar_norm(a)),
          false));
    }
    return r;
  });
}

void oracle_section(const BunceDeddensAlgebra& alg, const SuiteContext& ctx, int bracket_samples,
                    std::vector<VerificationReport>& out) {
  sample_batch(ctx.samples, ctx.jobs, out, [&](std::size_t k) {
    Rng rng(mix_seed(ctx.seed, check_id::oracle, k));
    const auto a = alg.random_element(rng, ctx.stage, ctx.level_scale);
    std::vector<VerificationReport> r;
    if (ctx.stage >= 1) {
      const int n = static_cast<int>(rng.bits() % static_cast<std::uint64_t>(ctx.stage));
      double max_mag = 1.0;
      const std::string params = "stage=" + std::to_string(ctx.stage) +
                                 " n=" + std::to_string(n) + " sample=" + std::to_string(k);
      r.push_back(VerificationReport::bound("oracle_expectation_routes", alg.name(), params,
                                            alg.expectation_routes_gap(a, n), 0.0,
                                            1e-12 * max_mag, true));
    }
    return r;
  });
  // Norm bracket on normalized elements: window lower bound vs grid estimate.
  sample_batch(bracket_samples, ctx.jobs, out, [&](std::size_t k) {
    Rng rng(mix_seed(ctx.seed, check_id::oracle, mix_seed(k, 99)));
    auto a = alg.random_element(rng, ctx.stage, ctx.level_scale);
    const double norm_est = alg.cstar_norm(a);
    std::vector<VerificationReport> r;
    const std::string params = "stage=" + std::to_string(ctx.stage) +
                               " W=" + std::to_string(alg.options().window) +
                               " sample=" + std::to_string(k);
    if (norm_est < 1e-14) {
      r.push_back(VerificationReport::bound("oracle_norm_bracket_order", alg.name(), params,
                                            0.0, 0.0, 1e-8, true, "degenerate-zero"));
      return r;
    }
    a = alg.scaled(a, 1.0 / norm_est);
    const auto bracket = alg.norm_bracket(a);
    r.push_back(VerificationReport::bound("oracle_norm_bracket_order", alg.name(), params,
                                          bracket.lower_bound, bracket.estimate, 1e-8,
                                          true, "window lower bound vs grid estimate"));
    r.push_back(VerificationReport::bound("oracle_norm_bracket_gap", alg.name(), params,
                                          bracket.estimate - bracket.lower_bound, 1e-3, 0.0,
                                          true, "bracket width on a normalized element"));
    return r;
  });
}

void oracle_section(const UhfAlgebra& alg, const SuiteContext& ctx,
                    std::vector<VerificationReport>& out) {
  // Matrix-unit relations, stage level (exact) and on window interiors.
  const int top = std::min(2, alg.stages());
  for (int n = 1; n <= top; ++n) {
    const std::int64_t s = alg.scale().at(n);
    const std::int64_t W = 4 * s;
    double worst_stage = 0.0;
    double worst_window = 0.0;
    for (std::int64_t x = 0; x < s; ++x) {
      for (std::int64_t y = 0; y < s; ++y) {
        const auto pxy = alg.matrix_unit(n, x, y);
        worst_stage = std::max(worst_stage,
                               alg.cstar_norm(alg.sub(alg.adjoint(pxy), alg.matrix_unit(n, y, x))));
        const Matrix wxy = alg.window_rep(n, x, y, W);
        worst_window = std::max(worst_window,
                                (wxy.adjoint() - alg.window_rep(n, y, x, W)).cwiseAbs().maxCoeff());
        for (std::int64_t w = 0; w < s; ++w) {
          for (std::int64_t z = 0; z < s; ++z) {
            const auto prod = alg.mul(pxy, alg.matrix_unit(n, w, z));
            auto want = alg.zero(n);
            if (y == w) want = alg.matrix_unit(n, x, z);
            worst_stage = std::max(worst_stage, alg.cstar_norm(alg.sub(prod, want)));
            // Window route, interior columns only.
            const Matrix wprod = wxy * alg.window_rep(n, w, z, W);
            const Matrix wwant = y == w ? alg.window_rep(n, x, z, W)
                                        : Matrix::Zero(2 * W + 1, 2 * W + 1);
            for (std::int64_t col = 2 * s; col <= 2 * W - 2 * s; ++col) {
              worst_window = std::max(worst_window,
                                      (wprod.col(col) - wwant.col(col)).cwiseAbs().maxCoeff());
            }
          }
        }
      }
    }
    // Partition of unity and the embedding relation.
    auto diag_sum = alg.zero(n);
    Matrix wdiag = Matrix::Zero(2 * W + 1, 2 * W + 1);
    for (std::int64_t x = 0; x < s; ++x) {
      diag_sum = alg.add(diag_sum, alg.matrix_unit(n, x, x));
      wdiag += alg.window_rep(n, x, x, W);
    }
    worst_stage = std::max(worst_stage,
                           alg.cstar_norm(alg.sub(diag_sum, alg.embed(alg.unit(), n))));
    worst_window = std::max(
        worst_window, (wdiag - Matrix::Identity(2 * W + 1, 2 * W + 1)).cwiseAbs().maxCoeff());
    if (n < alg.stages()) {
      const std::int64_t ratio = alg.scale().at(n + 1) / s;
      double worst_embed = 0.0;
      for (std::int64_t x = 0; x < s; ++x) {
        for (std::int64_t y = 0; y < s; ++y) {
          auto acc = alg.zero(n + 1);
          Matrix wacc = Matrix::Zero(2 * W + 1, 2 * W + 1);
          for (std::int64_t j = 0; j < ratio; ++j) {
            acc = alg.add(acc, alg.matrix_unit(n + 1, x + j * s, y + j * s));
            wacc += alg.window_rep(n + 1, x + j * s, y + j * s, W);
          }
          worst_embed = std::max(worst_embed,
                                 alg.cstar_norm(alg.sub(acc, alg.embed(alg.matrix_unit(n, x, y), n + 1))));
          // Windowing is linear, so the refinement identity holds on the
          // whole window, no interior restriction needed.
          worst_window = std::max(worst_window,
                                  (wacc - alg.window_rep(n, x, y, W)).cwiseAbs().maxCoeff());
        }
      }
      out.push_back(VerificationReport::bound("uhf_unit_embedding_relation", alg.name(),
                                              "n=" + std::to_string(n), worst_embed, 0.0,
                                              0.0, false));
    }
    out.push_back(VerificationReport::bound("uhf_unit_relations_stage", alg.name(),
                                            "n=" + std::to_string(n), worst_stage, 0.0, 0.0,
                                            false));
    out.push_back(VerificationReport::bound("uhf_unit_relations_window", alg.name(),
                                            "n=" + std::to_string(n) + " W=" + std::to_string(W),
                                            worst_window, 0.0, 0.0, false));
  }
}

void oracle_section(const DihedralAlgebra&, const SuiteContext&,
                    std::vector<VerificationReport>&) {}
void oracle_section(const SequenceAlgebra&, const SuiteContext&,
                    std::vector<VerificationReport>&) {}

// ---- suites -----------------------------------------------------------------

template <class Alg>
void verify_suite(const Alg& alg, const Instances& inst, const ExperimentConfig& cfg,
                  std::vector<VerificationReport>& out) {
  const auto& L = inst.lengths;
  SuiteContext ctx = inst.ctx;
  ctx.stage = std::min(cfg.stage, alg.stages());
  const int lemma_stage = std::min(3, ctx.stage);
  const std::vector<int> lemma_ns = small_stages(2, lemma_stage - 1);
  const std::vector<int> lemma_Ns = {1, 2};

  drive_contract(alg, ctx, out);
  drive_block_products(alg, ctx, out);
  drive_stage_norm(alg, L, ctx, small_stages(3, ctx.stage), {0, 1, 2}, out);
  drive_submultiplicative(alg, L, ctx, {1, 2, 0}, out);
  drive_tail_bound(alg, L, ctx, lemma_stage, lemma_ns, lemma_Ns, 3.0, out);
  drive_head_exponential(alg, L, ctx, lemma_stage, small_stages(2, lemma_stage), lemma_Ns, out);
  drive_head_tail_product(alg, L, ctx, lemma_stage, lemma_ns, lemma_Ns, out);
  drive_trotter(alg, L, ctx, lemma_stage, {0.1, 1.0, 5.0, 25.0},
                small_stages(2, lemma_stage - 1), 1, out);
  drive_pbe(alg, L, ctx, ctx.stage, 1, cfg.pbe_t_grid(), out);

  SuiteContext ectx = ctx;
  if (alg.grid_approximate()) ectx.stage = std::min(ctx.stage, 3);
  equivalence_section(alg, L, ectx, out);
  if constexpr (std::is_same_v<Alg, BunceDeddensAlgebra>) {
    SuiteContext lctx = ctx;
    lctx.stage = std::min(ctx.stage, 2);
    leibniz_section(alg, L, lctx, 1, cfg.pbe_t_grid(), out);
    oracle_section(alg, ectx, std::min(cfg.samples, 25), out);
  } else if constexpr (std::is_same_v<Alg, OdometerAlgebra> ||
                       std::is_same_v<Alg, UhfAlgebra>) {
    oracle_section(alg, ctx, out);
  } else {
    oracle_section(alg, ctx, out);
  }
}

template <class Alg>
void pbe_suite(const Alg& alg, const Instances& inst, const ExperimentConfig& cfg,
               std::vector<VerificationReport>& out) {
  SuiteContext ctx = inst.ctx;
  ctx.stage = std::min(cfg.stage, alg.stages());
  drive_pbe(alg, inst.lengths, ctx, ctx.stage, 1, cfg.pbe_t_grid(), out);
}

template <class Alg>
void equiv_suite(const Alg& alg, const Instances& inst, const ExperimentConfig& cfg,
                 std::vector<VerificationReport>& out) {
  SuiteContext ctx = inst.ctx;
  ctx.stage = std::min(cfg.stage, alg.stages());
  if (alg.grid_approximate()) ctx.stage = std::min(ctx.stage, 3);
  equivalence_section(alg, inst.lengths, ctx, out);
}

template <class F>
ReportBundle run_bundle(const ExperimentConfig& cfg, const std::string& verb, F&& body) {
  cfg.validate();
  const auto t0 = std::chrono::steady_clock::now();
  ReportBundle bundle;
  bundle.verb = verb;
  bundle.algebra = cfg.algebra;
  bundle.seed = cfg.seed;
  bundle.config_echo = cfg.echo();
  bundle.version = version_string();
  const Instances inst(cfg);
  body(inst, bundle.reports);
  bundle.wall_ms = std::chrono::duration<double, std::milli>(
                       std::chrono::steady_clock::now() - t0)
                       .count();
  return bundle;
}

template <class F>
void dispatch(const ExperimentConfig& cfg, const Instances& inst, F&& f) {
  if (cfg.algebra == "sequences") {
    f(SequenceAlgebra(inst.scale.depth()));
  } else if (cfg.algebra == "odometer") {
    f(OdometerAlgebra(inst.scale));
  } else if (cfg.algebra == "dihedral") {
    f(DihedralAlgebra(inst.scale));
  } else if (cfg.algebra == "bunce_deddens") {
    f(BunceDeddensAlgebra(inst.scale, bd_options(cfg)));
  } else if (cfg.algebra == "uhf") {
    f(UhfAlgebra(inst.scale));
  } else {
    throw std::invalid_argument("unknown algebra: " + cfg.algebra);
  }
}

}  // namespace

std::string version_string() { return "rdlab 0.1.0"; }

ReportBundle run_verify(const ExperimentConfig& cfg) {
  return run_bundle(cfg, "verify", [&](const Instances& inst, std::vector<VerificationReport>& out) {
    dispatch(cfg, inst, [&](const auto& alg) { verify_suite(alg, inst, cfg, out); });
  });
}

ReportBundle run_pbe(const ExperimentConfig& cfg) {
  return run_bundle(cfg, "pbe", [&](const Instances& inst, std::vector<VerificationReport>& out) {
    dispatch(cfg, inst, [&](const auto& alg) { pbe_suite(alg, inst, cfg, out); });
  });
}

ReportBundle run_equiv(const ExperimentConfig& cfg) {
  return run_bundle(cfg, "equiv", [&](const Instances& inst, std::vector<VerificationReport>& out) {
    dispatch(cfg, inst, [&](const auto& alg) { equiv_suite(alg, inst, cfg, out); });
  });
}

// ---- serialization ----------------------------------------------------------

namespace {

json cplx_pair(Cplx c) { return json::array({c.real(), c.imag()}); }

Cplx read_cplx(const json& j) {
  if (!j.is_array() || j.size() != 2) throw std::invalid_argument("element: bad complex pair");
  return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

std::string serialize_element(const SequenceAlgebra&, const SequenceElement& a) {
  json j;
  j["limit"] = cplx_pair(a.limit);
  auto coords = json::array();
  for (const auto& c : a.coords) coords.push_back(cplx_pair(c));
  j["coords"] = std::move(coords);
  return j.dump();
}

SequenceElement deserialize_sequence(const SequenceAlgebra&, const std::string& text) {
  const json j = json::parse(text);
  SequenceElement a;
  a.limit = read_cplx(j.at("limit"));
  for (const auto& c : j.at("coords")) a.coords.push_back(read_cplx(c));
  if (a.coords.empty()) a.coords.push_back(0.0);
  return a;
}

std::string serialize_element(const OdometerAlgebra& alg, const OdometerElement& a) {
  json rows = json::array();
  for (const auto& [z, c] : alg.coeff_map(a)) {
    rows.push_back(json::array({z.level, z.num, c.real(), c.imag()}));
  }
  json j;
  j["stage"] = a.stage;
  j["coeffs"] = std::move(rows);
  return j.dump();
}

OdometerElement deserialize_odometer(const OdometerAlgebra& alg, const std::string& text) {
  const json j = json::parse(text);
  std::map<Character, Cplx> coeffs;
  for (const auto& row : j.at("coeffs")) {
    if (!row.is_array() || row.size() != 4) throw std::invalid_argument("element: bad coeff row");
    Character z{row[0].get<int>(), row[1].get<std::int64_t>()};
    coeffs[z] += Cplx(row[2].get<double>(), row[3].get<double>());
  }
  return alg.from_coeffs(coeffs, j.at("stage").get<int>());
}

std::string serialize_element(const DihedralAlgebra& alg, const SDElement& a) {
  json j;
  j["f"] = json::parse(serialize_element(alg.functions(), a.f));
  j["g"] = json::parse(serialize_element(alg.functions(), a.g));
  return j.dump();
}

SDElement deserialize_dihedral(const DihedralAlgebra& alg, const std::string& text) {
  const json j = json::parse(text);
  return alg.make(deserialize_odometer(alg.functions(), j.at("f").dump()),
                  deserialize_odometer(alg.functions(), j.at("g").dump()));
}

std::string serialize_element(const BunceDeddensAlgebra& alg, const BdElement& a) {
  json rows = json::array();
  for (std::size_t idx = 0; idx < a.terms.size(); ++idx) {
    if (a.terms[idx].empty()) continue;
    const Character z = canonicalize(static_cast<std::int64_t>(idx), a.stage, alg.scale());
    json coeffs = json::array();
    for (const auto& [k, c] : a.terms[idx]) {
      coeffs.push_back(json::array({k, c.real(), c.imag()}));
    }
    rows.push_back(json::array({z.level, z.num, std::move(coeffs)}));
  }
  json j;
  j["stage"] = a.stage;
  j["terms"] = std::move(rows);
  return j.dump();
}

BdElement deserialize_bd(const BunceDeddensAlgebra& alg, const std::string& text) {
  const json j = json::parse(text);
  const int stage = j.at("stage").get<int>();
  auto out = alg.zero(stage);
  for (const auto& row : j.at("terms")) {
    if (!row.is_array() || row.size() != 3) throw std::invalid_argument("element: bad term row");
    const Character z{row[0].get<int>(), row[1].get<std::int64_t>()};
    Laurent p;
    for (const auto& kc : row[2]) {
      if (!kc.is_array() || kc.size() != 3) throw std::invalid_argument("element: bad laurent row");
      p[kc[0].get<int>()] += Cplx(kc[1].get<double>(), kc[2].get<double>());
    }
    out = alg.add(out, alg.single_term(z, std::move(p), stage));
  }
  return out;
}

std::string serialize_element(const UhfAlgebra&, const UhfElement& a) {
  json entries = json::array();
  for (Eigen::Index r = 0; r < a.mat.rows(); ++r) {
    for (Eigen::Index c = 0; c < a.mat.cols(); ++c) {
      entries.push_back(a.mat(r, c).real());
      entries.push_back(a.mat(r, c).imag());
    }
  }
  json j;
  j["stage"] = a.stage;
  j["entries"] = std::move(entries);
  return j.dump();
}

UhfElement deserialize_uhf(const UhfAlgebra& alg, const std::string& text) {
  const json j = json::parse(text);
  const int stage = j.at("stage").get<int>();
  const std::int64_t s = alg.scale().at(stage);
  const auto& entries = j.at("entries");
  if (static_cast<std::int64_t>(entries.size()) != 2 * s * s) {
    throw std::invalid_argument("element: entry count mismatch");
  }
  Matrix m(s, s);
  std::size_t idx = 0;
  for (std::int64_t r = 0; r < s; ++r) {
    for (std::int64_t c = 0; c < s; ++c) {
      const double re = entries[idx++].get<double>();
      const double im = entries[idx++].get<double>();
      m(r, c) = Cplx(re, im);
    }
  }
  return alg.from_matrix(std::move(m), stage);
}

ReportBundle run_decompose(const ExperimentConfig& cfg, const std::string& element_json) {
  return run_bundle(cfg, "decompose", [&](const Instances& inst, std::vector<VerificationReport>& out) {
    const json j = json::parse(element_json);
    const std::string algebra = j.at("algebra").get<std::string>();
    if (algebra != cfg.algebra) {
      throw std::invalid_argument("decompose: element algebra '" + algebra +
                                  "' does not match config algebra '" + cfg.algebra + "'");
    }
    const std::string payload = j.at("element").dump();
    dispatch(cfg, inst, [&](const auto& alg) {
      using AlgT = std::decay_t<decltype(alg)>;
      typename AlgT::Element a = [&] {
        if constexpr (std::is_same_v<AlgT, SequenceAlgebra>) {
          return deserialize_sequence(alg, payload);
        } else if constexpr (std::is_same_v<AlgT, OdometerAlgebra>) {
          return deserialize_odometer(alg, payload);
        } else if constexpr (std::is_same_v<AlgT, DihedralAlgebra>) {
          return deserialize_dihedral(alg, payload);
        } else if constexpr (std::is_same_v<AlgT, BunceDeddensAlgebra>) {
          return deserialize_bd(alg, payload);
        } else {
          return deserialize_uhf(alg, payload);
        }
      }();
      const auto bv = block_decompose(alg, a, /*validate=*/true);
      for (std::size_t n = 0; n < bv.norms.size(); ++n) {
        out.push_back(VerificationReport::info("block_norm", alg.name(),
                                               "n=" + std::to_string(n), bv.norms[n]));
      }
      for (int N = 0; N <= cfg.n_max; ++N) {
        out.push_back(VerificationReport::info("rd_norm", alg.name(),
                                               "N=" + std::to_string(N),
                                               rd_norm(bv.norms, N, inst.lengths)));
      }
    });
  });
}

}  // namespace rdlab
