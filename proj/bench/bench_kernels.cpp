#include <benchmark/benchmark.h>

#include "rdlab/bunce_deddens.hpp"
#include "rdlab/parallel.hpp"
#include "rdlab/rdcore.hpp"
#include "rdlab/suite.hpp"
#include "rdlab/uhf.hpp"

namespace {

using namespace rdlab;

const Scale kScale({1, 2, 4, 8, 16, 32});

// Batch of fiber-sweep norms: the data-parallel kernel behind the
// Bunce-Deddens checks. jobs = 1 is the serial reference.
void bloch_norm_batch(int jobs, benchmark::State& state) {
  BunceDeddensAlgebra alg(kScale);
  const auto L = LengthSequence::geometric(2.0, 1.0, 1.0, 1.0, kScale);
  const std::vector<double> flat(6, 1.0);
  std::vector<BdElement> elements;
  for (int k = 0; k < 16; ++k) {
    Rng rng(777 + k);
    elements.push_back(alg.random_element(rng, 3, flat));
  }
  std::vector<double> norms(elements.size());
  for (auto _ : state) {
    parallel_for(elements.size(), jobs,
                 [&](std::size_t i) { norms[i] = alg.cstar_norm(elements[i]); });
    benchmark::DoNotOptimize(norms.data());
  }
}

void BM_BlochNormBatch_Serial(benchmark::State& state) { bloch_norm_batch(1, state); }
void BM_BlochNormBatch_OpenMP(benchmark::State& state) { bloch_norm_batch(0, state); }

// Sample batch of the submultiplicativity verifier on the matrix tower.
void verifier_batch(int jobs, benchmark::State& state) {
  UhfAlgebra alg(kScale);
  const auto L = LengthSequence::geometric(2.0, 1.0, 1.0, 1.0, kScale);
  SuiteContext ctx;
  ctx.stage = 4;
  ctx.samples = 32;
  ctx.seed = 99;
  ctx.jobs = jobs;
  ctx.level_scale = std::vector<double>(6, 1.0);
  for (auto _ : state) {
    std::vector<VerificationReport> reports;
    drive_submultiplicative(alg, L, ctx, {1}, reports);
    benchmark::DoNotOptimize(reports.data());
  }
}

void BM_VerifierBatch_Serial(benchmark::State& state) { verifier_batch(1, state); }
void BM_VerifierBatch_OpenMP(benchmark::State& state) { verifier_batch(0, state); }

}  // namespace

BENCHMARK(BM_BlochNormBatch_Serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BlochNormBatch_OpenMP)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_VerifierBatch_Serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_VerifierBatch_OpenMP)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
