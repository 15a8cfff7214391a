#include <doctest.h>

#include <cmath>
#include <numbers>

#include "rdlab/numerics.hpp"
#include "rdlab/random.hpp"

using namespace rdlab;

namespace {

Matrix random_matrix(Rng& rng, int n) {
  Matrix a(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a(i, j) = rng.cgauss();
  }
  return a;
}

// Independent oracle: plain power iteration on A*A with a fixed start,
// written without the library's estimator.
double power_oracle(const Matrix& a, int iters) {
  CVector v = CVector::Ones(a.cols());
  v /= v.norm();
  Matrix gram = a.adjoint() * a;
  double lam = 0.0;
  for (int i = 0; i < iters; ++i) {
    CVector w = gram * v;
    lam = w.norm();
    if (lam == 0.0) return 0.0;
    v = w / lam;
  }
  return std::sqrt(lam);
}

}  // namespace

TEST_CASE("spectral norm basics") {
  CHECK(spectral_norm(Matrix::Identity(4, 4)) == doctest::Approx(1.0).epsilon(1e-12));
  Matrix p(2, 2);
  p << 0, 1, 1, 0;
  CHECK(spectral_norm(p) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(spectral_norm(Matrix(0, 0)) == 0.0);
}

TEST_CASE("spectral norm vs power iteration oracle") {
  Rng rng(2024);
  for (int rep = 0; rep < 10; ++rep) {
    const Matrix a = random_matrix(rng, 8);
    const double got = spectral_norm(a);
    const double want = power_oracle(a, 4000);
    CHECK(got == doctest::Approx(want).epsilon(1e-8));
    // C*-identity |A*A| = |A|^2
    CHECK(spectral_norm(a.adjoint() * a) == doctest::Approx(got * got).epsilon(1e-9));
    // adjoint invariance and submultiplicativity
    CHECK(spectral_norm(a.adjoint()) == doctest::Approx(got).epsilon(1e-10));
    const Matrix b = random_matrix(rng, 8);
    CHECK(spectral_norm(a * b) <= got * spectral_norm(b) + 1e-9);
  }
}

TEST_CASE("hermitian exponential") {
  CHECK((exp_i_hermitian(Matrix::Zero(3, 3), 1.0) - Matrix::Identity(3, 3)).norm() < 1e-12);

  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 1.0;
  d(1, 1) = 2.0;
  const Matrix e = exp_i_hermitian(d, std::numbers::pi);
  CHECK(std::abs(e(0, 0) - Cplx(-1.0, 0.0)) < 1e-12);
  CHECK(std::abs(e(1, 1) - Cplx(1.0, 0.0)) < 1e-12);
  CHECK(std::abs(e(0, 1)) < 1e-12);

  Rng rng(7);
  for (int rep = 0; rep < 5; ++rep) {
    Matrix a = random_matrix(rng, 6);
    Matrix h = 0.5 * (a + a.adjoint());
    const double t = 0.3 + rep;
    const Matrix u = exp_i_hermitian(h, t);
    CHECK((u.adjoint() * u - Matrix::Identity(6, 6)).norm() < 1e-9);
    // group law e^{ith} e^{-ith} = 1
    CHECK((u * exp_i_hermitian(h, -t) - Matrix::Identity(6, 6)).norm() < 1e-9);
  }

  Matrix bad(2, 2);
  bad << 0, 1, 0, 0;
  CHECK_THROWS(exp_i_hermitian(bad, 1.0));
}

TEST_CASE("cyclic transform normalization") {
  // constant function has a single Fourier coefficient of weight one
  const auto hat = dft_cyclic({1.0, 1.0, 1.0, 1.0}, true);
  CHECK(std::abs(hat[0] - 1.0) < 1e-13);
  for (int j = 1; j < 4; ++j) CHECK(std::abs(hat[j]) < 1e-13);

  const auto two = dft_cyclic({1.0, 0.0}, true);
  CHECK(std::abs(two[0] - 0.5) < 1e-14);
  CHECK(std::abs(two[1] - 0.5) < 1e-14);

  CHECK_THROWS(dft_cyclic({}, true));
}

TEST_CASE("cyclic transform round trip and orthogonality") {
  Rng rng(11);
  std::vector<Cplx> f(8);
  for (auto& x : f) x = rng.cgauss();
  const auto back = dft_cyclic(dft_cyclic(f, true), false);
  for (int i = 0; i < 8; ++i) CHECK(std::abs(back[i] - f[i]) < 1e-12);

  // character values transform to a one-hot vector
  for (int j0 = 0; j0 < 8; ++j0) {
    std::vector<Cplx> chi(8);
    for (int x = 0; x < 8; ++x) {
      chi[x] = std::polar(1.0, 2.0 * std::numbers::pi * j0 * x / 8.0);
    }
    const auto h = dft_cyclic(chi, true);
    for (int j = 0; j < 8; ++j) {
      CHECK(std::abs(h[j] - (j == j0 ? 1.0 : 0.0)) < 1e-12);
    }
  }
}

TEST_CASE("circle sup bracket") {
  std::map<int, Cplx> c0{{0, 3.0}};
  const auto b0 = circle_sup(c0, {16});
  CHECK(b0.estimate == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(b0.upper_bound == doctest::Approx(3.0).epsilon(1e-14));

  std::map<int, Cplx> mono{{1, 1.0}};
  CHECK(circle_sup(mono, {5}).estimate == doctest::Approx(1.0).epsilon(1e-14));

  // 2 cos(theta): true sup 2, envelope 2
  std::map<int, Cplx> cosine{{-1, 1.0}, {1, 1.0}};
  const auto b = circle_sup(cosine, {64}, 0);
  CHECK(b.upper_bound == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(b.estimate <= 2.0 + 1e-12);
  CHECK(b.estimate > 2.0 - 1e-3);
  // refinement closes in on the true sup
  const auto br = circle_sup(cosine, {64});
  CHECK(br.estimate == doctest::Approx(2.0).epsilon(1e-9));

  // estimate is nondecreasing under grid refinement
  double prev = 0.0;
  std::map<int, Cplx> mixed{{-2, Cplx(0.3, -0.1)}, {0, 0.5}, {3, Cplx(-0.2, 0.8)}};
  for (int count : {8, 16, 32, 64, 128}) {
    const auto est = circle_sup(mixed, {count}, 0).estimate;
    CHECK(est >= prev - 1e-13);
    CHECK(est <= circle_sup(mixed, {count}, 0).upper_bound + 1e-13);
    prev = est;
  }
}

TEST_CASE("sweep matches a dense scan") {
  Rng rng(5);
  const Matrix a = random_matrix(rng, 6);
  const Matrix b = random_matrix(rng, 6);
  auto fiber = [&](double th) -> Matrix {
    return a + std::polar(1.0, th) * b;
  };
  const double got = sweep_spectral_max(fiber, 32);
  double want = 0.0;
  for (int k = 0; k < 4096; ++k) {
    want = std::max(want, spectral_norm(fiber(2.0 * std::numbers::pi * k / 4096.0)));
  }
  // The sweep refines between scan points, so allow a hair above the scan.
  CHECK(got <= want + 1e-6);
  CHECK(got == doctest::Approx(want).epsilon(1e-6));
}

TEST_CASE("power estimate never exceeds the exact norm") {
  Rng rng(13);
  for (int rep = 0; rep < 20; ++rep) {
    const Matrix a = random_matrix(rng, 5);
    CHECK(power_norm_estimate(a) <= spectral_norm(a) + 1e-10);
  }
}
