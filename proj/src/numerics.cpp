#include "rdlab/numerics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rdlab {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

bool finite_entries(const Matrix& a) {
  return a.allFinite();
}

double spectral_norm(const Matrix& a) {
  if (a.rows() == 0 || a.cols() == 0) return 0.0;
  // Work with the smaller Gram matrix.
  Matrix gram;
  if (a.rows() >= a.cols()) {
    gram = a.adjoint() * a;
  } else {
    gram = a * a.adjoint();
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(gram, Eigen::EigenvaluesOnly);
  const double top = es.eigenvalues().maxCoeff();
  return std::sqrt(std::max(0.0, top));
}

Matrix exp_i_hermitian(const Matrix& h, double t) {
  if (h.rows() != h.cols()) throw std::invalid_argument("exp_i_hermitian: square input required");
  if (h.rows() == 0) return h;
  const double scale = h.norm();
  if ((h - h.adjoint()).norm() > 1e-10 * std::max(scale, 1e-300)) {
    throw std::invalid_argument("exp_i_hermitian: input is not Hermitian");
  }
  const Matrix sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(sym);
  CVector phases(h.rows());
  for (Eigen::Index k = 0; k < h.rows(); ++k) {
    phases(k) = std::polar(1.0, t * es.eigenvalues()(k));
  }
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

std::vector<Cplx> dft_cyclic(const std::vector<Cplx>& values, bool forward) {
  const std::int64_t n = static_cast<std::int64_t>(values.size());
  if (n == 0) throw std::invalid_argument("dft_cyclic: empty input");
  std::vector<Cplx> twiddle(static_cast<std::size_t>(n));
  for (std::int64_t k = 0; k < n; ++k) {
    const double sign = forward ? -1.0 : 1.0;
    twiddle[static_cast<std::size_t>(k)] =
        std::polar(1.0, sign * kTwoPi * static_cast<double>(k) / static_cast<double>(n));
  }
  std::vector<Cplx> out(static_cast<std::size_t>(n));
  for (std::int64_t j = 0; j < n; ++j) {
    Cplx acc = 0.0;
    for (std::int64_t x = 0; x < n; ++x) {
      acc += values[static_cast<std::size_t>(x)] * twiddle[static_cast<std::size_t>((j * x) % n)];
    }
    out[static_cast<std::size_t>(j)] = forward ? acc / static_cast<double>(n) : acc;
  }
  return out;
}

double CircleGrid::theta(int k) const {
  return kTwoPi * static_cast<double>(k) / static_cast<double>(count);
}

namespace {

double eval_abs(const std::map<int, Cplx>& coeffs, double theta) {
  Cplx acc = 0.0;
  for (const auto& [k, c] : coeffs) {
    acc += c * std::polar(1.0, static_cast<double>(k) * theta);
  }
  return std::abs(acc);
}

}  // namespace

SupBracket circle_sup(const std::map<int, Cplx>& coeffs, const CircleGrid& grid,
                      int refine_rounds) {
  SupBracket out;
  for (const auto& [k, c] : coeffs) out.upper_bound += std::abs(c);
  if (coeffs.empty() || grid.count < 1) return out;

  double best = 0.0;
  double best_theta = 0.0;
  for (int k = 0; k < grid.count; ++k) {
    const double v = eval_abs(coeffs, grid.theta(k));
    if (v > best) {
      best = v;
      best_theta = grid.theta(k);
    }
  }
  double half = std::numbers::pi / static_cast<double>(grid.count);
  for (int round = 0; round < refine_rounds; ++round) {
    const int probes = 16;
    double local_best = best;
    double local_theta = best_theta;
    for (int i = 0; i <= probes; ++i) {
      const double th = best_theta - half + 2.0 * half * static_cast<double>(i) / probes;
      const double v = eval_abs(coeffs, th);
      if (v > local_best) {
        local_best = v;
        local_theta = th;
      }
    }
    best = local_best;
    best_theta = local_theta;
    half /= probes / 2;
  }
  out.estimate = best;
  return out;
}

double power_norm_estimate(const Matrix& a, int max_iters, double tol, CVector* warm) {
  if (a.rows() == 0 || a.cols() == 0) return 0.0;
  CVector v;
  if (warm != nullptr && warm->size() == a.cols()) {
    v = *warm;
  } else {
    // Deterministic start independent of callers.
    v = CVector(a.cols());
    std::uint64_t state = 0x9e3779b97f4a7c15ULL;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      state ^= state << 13;
      state ^= state >> 7;
      state ^= state << 17;
      const double re = static_cast<double>(state >> 11) * 0x1.0p-53 - 0.5;
      state ^= state << 13;
      state ^= state >> 7;
      state ^= state << 17;
      const double im = static_cast<double>(state >> 11) * 0x1.0p-53 - 0.5;
      v(i) = Cplx(re, im);
    }
  }
  double nv = v.norm();
  if (nv == 0.0) return 0.0;
  v /= nv;
  double sigma = 0.0;
  for (int it = 0; it < max_iters; ++it) {
    const CVector w = a * v;
    const double s = w.norm();
    if (s <= 0.0) return 0.0;
    CVector next = a.adjoint() * w;
    const double nn = next.norm();
    if (nn <= 0.0) return s;
    next /= nn;
    v.swap(next);
    if (std::abs(s - sigma) <= tol * std::max(1.0, s)) {
      sigma = s;
      break;
    }
    sigma = s;
  }
  if (warm != nullptr) *warm = v;
  return sigma;
}

double sweep_spectral_max(const std::function<Matrix(double)>& fiber,
                          int grid_count, int refine_rounds) {
  if (grid_count < 1) grid_count = 1;
  double best = 0.0;
  double best_theta = 0.0;
  CVector warm;
  for (int k = 0; k < grid_count; ++k) {
    const double th = kTwoPi * static_cast<double>(k) / static_cast<double>(grid_count);
    const double v = power_norm_estimate(fiber(th), 200, 1e-13, &warm);
    if (v > best) {
      best = v;
      best_theta = th;
    }
  }
  double half = std::numbers::pi / static_cast<double>(grid_count);
  for (int round = 0; round < refine_rounds; ++round) {
    const int probes = 16;
    double local_best = best;
    double local_theta = best_theta;
    for (int i = 0; i <= probes; ++i) {
      const double th = best_theta - half + 2.0 * half * static_cast<double>(i) / probes;
      const double v = power_norm_estimate(fiber(th), 200, 1e-13, &warm);
      if (v > local_best) {
        local_best = v;
        local_theta = th;
      }
    }
    best = local_best;
    best_theta = local_theta;
    half /= probes / 2;
  }
  // One exact solve at the winner; power iteration can undershoot slightly.
  best = std::max(best, spectral_norm(fiber(best_theta)));
  return best;
}

}  // namespace rdlab
