#include <doctest.h>

#include <cmath>

#include "rdlab/random.hpp"
#include "rdlab/rdcore.hpp"
#include "rdlab/sequence_algebra.hpp"

using namespace rdlab;

namespace {

const Scale kScale({1, 2, 4, 8, 16, 32});
const LengthSequence kL = LengthSequence::geometric(2.0, 1.0, 1.0, 1.0, kScale);
const std::vector<double> kFlat(6, 1.0);

SequenceElement elem(std::vector<Cplx> coords) { return {0.0, std::move(coords)}; }

}  // namespace

TEST_CASE("sequence algebra basics") {
  SequenceAlgebra alg(5);
  const auto a = elem({3.0, Cplx(0, 4), 0.0});
  CHECK(alg.cstar_norm(a) == doctest::Approx(4.0));
  CHECK(alg.stage_of(a) == 2);

  // unit is genuinely a unit at every stage
  const auto u = alg.unit();
  CHECK(alg.cstar_norm(alg.sub(alg.mul(alg.embed(u, 2), a), a)) == doctest::Approx(0.0));
  CHECK(alg.cstar_norm(alg.sub(alg.expectation(alg.embed(u, 3), 1), alg.embed(u, 1))) ==
        doctest::Approx(0.0));
}

TEST_CASE("block decomposition of the fixture") {
  SequenceAlgebra alg(5);
  const auto bv = block_decompose(alg, elem({3.0, Cplx(0, 4), 0.0}), /*validate=*/true);
  REQUIRE(bv.norms.size() == 3);
  CHECK(bv.norms[0] == doctest::Approx(3.0));
  CHECK(bv.norms[1] == doctest::Approx(4.0));
  CHECK(bv.norms[2] == doctest::Approx(0.0));

  // unit element: single block at level zero
  const auto bu = block_decompose(alg, alg.embed(alg.unit(), 3), /*validate=*/true);
  CHECK(bu.norms[0] == doctest::Approx(1.0));
  for (std::size_t n = 1; n < bu.norms.size(); ++n) CHECK(bu.norms[n] == doctest::Approx(0.0));
}

TEST_CASE("weighted norms") {
  SequenceAlgebra alg(5);
  // ||1||_N = lambda_0^N = 2^N
  const auto bu = block_decompose(alg, alg.unit());
  CHECK(rd_norm(bu.norms, 0, kL) == doctest::Approx(1.0));
  CHECK(rd_norm(bu.norms, 3, kL) == doctest::Approx(8.0));

  // (3, 4i) with weights (2, 4): 3*2 + 4*4 = 22
  const auto bv = block_decompose(alg, elem({3.0, Cplx(0, 4)}));
  CHECK(rd_norm(bv.norms, 1, kL) == doctest::Approx(22.0));

  // ||a|| <= ||a||_0 on random elements
  Rng rng(31);
  for (int rep = 0; rep < 50; ++rep) {
    const auto a = alg.random_element(rng, 5, kFlat);
    CHECK(alg.cstar_norm(a) <= rd_norm(block_decompose(alg, a).norms, 0, kL) + 1e-9);
  }
}

TEST_CASE("expectation tower and head/tail") {
  SequenceAlgebra alg(5);
  Rng rng(17);
  const auto a = alg.random_element(rng, 5, kFlat);
  // nested expectations compose to the lower one
  for (int n : {0, 2, 4}) {
    for (int k : {1, 3}) {
      const auto e1 = alg.expectation(alg.embed(alg.expectation(a, n), 5), k);
      const auto e2 = alg.expectation(a, std::min(n, k));
      CHECK(alg.cstar_norm(alg.sub(e1, alg.embed(e2, k))) < 1e-12);
    }
  }
  const auto bv = block_decompose(alg, a);
  // n = stage: empty tail
  CHECK(alg.cstar_norm(tail_of(alg, bv, 5)) == doctest::Approx(0.0));
  // n = 0: head is E_0
  CHECK(alg.cstar_norm(alg.sub(head_of(alg, bv, 0), alg.expectation(a, 0))) < 1e-12);
  // head is fixed by the expectation onto its stage
  const auto head = head_of(alg, bv, 3);
  CHECK(alg.cstar_norm(alg.sub(alg.expectation(alg.embed(head, 5), 3), head)) < 1e-10);
  // head + tail reconstructs
  CHECK(alg.cstar_norm(alg.sub(alg.add(alg.embed(head, 5), tail_of(alg, bv, 3)), a)) < 1e-10);
}

TEST_CASE("block product verifier") {
  SequenceAlgebra alg(5);
  Rng rng(23);
  for (int rep = 0; rep < 25; ++rep) {
    const int n = 1 + static_cast<int>(rng.bits() % 5);
    int m = static_cast<int>(rng.bits() % 6);
    while (m == n) m = static_cast<int>(rng.bits() % 6);
    const auto a = alg.random_block(rng, n, kFlat);
    const auto b = alg.random_block(rng, m, kFlat);
    const auto rep1 = verify_block_product(alg, a, n, b, m, "t", 1e-9);
    CHECK(rep1.status == VerificationReport::Status::Pass);
  }
  // zero block short-circuits
  const auto z = alg.zero(2);
  const auto r = verify_block_product(alg, z, 2, alg.random_block(rng, 1, kFlat), 1, "t", 1e-9);
  CHECK(r.status == VerificationReport::Status::Pass);
  CHECK(r.note == "degenerate-zero");
}

TEST_CASE("stage norm and submultiplicativity verifiers") {
  SequenceAlgebra alg(5);
  Rng rng(41);
  for (int rep = 0; rep < 25; ++rep) {
    const auto a = alg.random_element(rng, 3, kFlat);
    for (int N : {0, 1, 2}) {
      CHECK(verify_stage_norm_bound(alg, kL, a, N, "t", 1e-9).status ==
            VerificationReport::Status::Pass);
    }
    const auto b = alg.random_element(rng, 3, kFlat);
    for (int N : {0, 1, 2}) {
      CHECK(verify_submultiplicative(alg, kL, a, b, N, "t", 1e-9).status ==
            VerificationReport::Status::Pass);
    }
  }
  const auto u = alg.unit();
  const auto r = verify_submultiplicative(alg, kL, u, u, 1, "t", 1e-9);
  CHECK(r.status == VerificationReport::Status::Pass);
}

TEST_CASE("tail bound verifier") {
  SequenceAlgebra alg(5);
  Rng rng(59);
  // single block at n+1 is tight
  const auto single = alg.random_block(rng, 3, kFlat);
  const auto r = verify_tail_bound(alg, kL, alg.embed(single, 5), 2, 0, 3.0, "t", 1e-9);
  CHECK(r.status == VerificationReport::Status::Pass);
  CHECK(std::abs(r.margin) < 1e-12 * std::max(1.0, std::abs(r.lhs)));

  // zero tail
  const auto r0 = verify_tail_bound(alg, kL, alg.embed(alg.random_block(rng, 0, kFlat), 2), 2,
                                    1, 3.0, "t", 1e-9);
  CHECK(r0.lhs == doctest::Approx(0.0));
  CHECK(r0.status == VerificationReport::Status::Pass);

  for (int rep = 0; rep < 25; ++rep) {
    const auto a = alg.random_element(rng, 5, kFlat);
    CHECK(verify_tail_bound(alg, kL, a, 1, 0, 3.0, "t", 1e-9).status ==
          VerificationReport::Status::Pass);
  }
}

TEST_CASE("head exponential and trotter verifiers") {
  SequenceAlgebra alg(5);
  Rng rng(67);
  // a = 0: ||1||_N = lambda_0^N <= lambda_n^{N+1}
  const auto z = alg.zero(4);
  CHECK(verify_head_exponential(alg, kL, z, 2, 1, "t", 1e-9).status ==
        VerificationReport::Status::Pass);
  CHECK(verify_trotter_log(alg, kL, z, 0.0, 1, 1, "t", 1e-9).status ==
        VerificationReport::Status::Pass);

  for (int rep = 0; rep < 20; ++rep) {
    const auto a = alg.random_self_adjoint(rng, 4, kFlat);
    for (int n : {0, 1, 2}) {
      CHECK(verify_head_exponential(alg, kL, a, n, 1, "t", 1e-9).status ==
            VerificationReport::Status::Pass);
      for (double t : {0.1, 5.0}) {
        CHECK(verify_trotter_log(alg, kL, a, t, n, 1, "t", 1e-9).status ==
              VerificationReport::Status::Pass);
      }
    }
    const auto b = alg.random_element(rng, 4, kFlat);
    for (const auto& r : verify_head_tail_product(alg, kL, a, b, 1, 1, "t", 1e-9)) {
      CHECK(r.status == VerificationReport::Status::Pass);
    }
  }
}

TEST_CASE("damped profile exercises the small-tail regime") {
  SequenceAlgebra alg(5);
  std::vector<double> damped(6);
  for (int n = 0; n < 6; ++n) damped[n] = 1.0 / (kL.at(n) * kL.at(n));
  Rng rng(71);
  for (int rep = 0; rep < 20; ++rep) {
    const auto a = alg.random_self_adjoint(rng, 3, damped);
    for (double t : {0.1, 1.0, 25.0}) {
      for (int n : {1, 2}) {
        CHECK(verify_trotter_log(alg, kL, a, t, n, 1, "t", 1e-9).status ==
              VerificationReport::Status::Pass);
      }
    }
  }
}

TEST_CASE("growth experiment on the fixture") {
  SequenceAlgebra alg(5);
  Rng rng(83);
  std::vector<double> t_grid;
  for (int i = 0; i < 16; ++i) t_grid.push_back(std::exp(std::log(1000.0) * i / 15.0));

  // zero element: flat table, slope 0
  const auto flat = pbe_experiment(alg, kL, alg.zero(3), 1, t_grid, "t", 1e-9);
  CHECK(flat.fitted_slope == doctest::Approx(0.0).epsilon(1e-12));
  for (const auto& r : flat.reports) CHECK(r.status == VerificationReport::Status::Pass);

  for (int rep = 0; rep < 10; ++rep) {
    const auto a = alg.random_self_adjoint(rng, 5, kFlat);
    const auto res = pbe_experiment(alg, kL, a, 1, t_grid, "t", 1e-9);
    for (const auto& r : res.reports) CHECK(r.status == VerificationReport::Status::Pass);
    CHECK(res.fitted_slope <= 2.0 + 0.1);
  }
}

TEST_CASE("validation accepts honest blocks") {
  SequenceAlgebra alg(5);
  Rng rng(97);
  const auto a = alg.random_element(rng, 4, kFlat);
  CHECK_NOTHROW(block_decompose(alg, a, /*validate=*/true));
}
