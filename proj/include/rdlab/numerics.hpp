#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <map>
#include <vector>

namespace rdlab {

using Cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

bool finite_entries(const Matrix& a);

// Largest singular value via a Hermitian eigensolve of A*A. Accurate to
// machine precision for the top value, which is the only one used here.
double spectral_norm(const Matrix& a);

// exp(i*t*h) for Hermitian h through its eigendecomposition; the result is
// unitary to roundoff. Rejects input with ||h - h*|| > 1e-10 * ||h||.
Matrix exp_i_hermitian(const Matrix& h, double t);

// Fourier transform on Z/n with normalized Haar measure:
//   forward:  out[j] = (1/n) sum_x v[x] exp(-2*pi*i*j*x/n)
//   inverse:  out[x] =       sum_j v[j] exp(+2*pi*i*j*x/n)
std::vector<Cplx> dft_cyclic(const std::vector<Cplx>& values, bool forward);

struct CircleGrid {
  int count = 1;
  double theta(int k) const;
};

struct SupBracket {
  double estimate = 0.0;     // sampled max, a lower bound on the true sup
  double upper_bound = 0.0;  // l^1 coefficient envelope
};

// Sup norm bracket for a trigonometric polynomial sum_k c_k e^{i k theta}.
// refine_rounds > 0 zooms locally around the sampled arg max, which only
// raises the estimate; it stays a lower bound.
SupBracket circle_sup(const std::map<int, Cplx>& coeffs, const CircleGrid& grid,
                      int refine_rounds = 3);

// max_theta ||fiber(theta)|| over a uniform grid on [0, 2pi), warm-started
// power iteration per fiber plus local refinement and one exact eigensolve at
// the best point. Always a lower bound on the true sup.
double sweep_spectral_max(const std::function<Matrix(double)>& fiber,
                          int grid_count, int refine_rounds = 3);

// Rayleigh-quotient estimate of the largest singular value; never exceeds it.
// warm, when given, seeds and receives the iterate.
double power_norm_estimate(const Matrix& a, int max_iters = 200, double tol = 1e-13,
                           CVector* warm = nullptr);

}  // namespace rdlab
