#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rdlab/scales.hpp"

namespace rdlab {

// Experiment description, read from a flat key = value file (strings quoted,
// numeric lists in brackets, # comments). echo() emits the canonical form
// that reports embed, so identical configs echo identically.
struct ExperimentConfig {
  std::string algebra = "odometer";  // sequences|odometer|dihedral|bunce_deddens|uhf
  std::vector<std::int64_t> scale = {1, 2, 4, 8, 16, 32};

  std::string lambda_rule = "geometric";  // geometric | explicit
  double lambda_ratio = 2.0;              // lambda_n = 2*omega*ratio^n
  std::vector<double> lambda_list;        // used when lambda_rule = explicit
  double omega = 0.0;                     // 0 = the algebra's natural bound

  int stage = 5;
  int n_max = 5;
  double t_max = 1000.0;
  int t_count = 16;
  int samples = 200;
  std::uint64_t seed = 12345;
  std::string profile = "damped";  // flat | damped (level factor lambda_n^-2)
  int jobs = 0;                    // 0 = all hardware threads, 1 = serial

  double cert_c = 1.0;   // fast-growth certificate s_m <= c * lambda_m^beta
  double cert_beta = 1.0;

  int bd_degree = 4;
  int bd_theta_grid = 64;
  int bd_exp_theta_grid = 16;
  std::int64_t bd_window = 512;
  int bd_window_iters = 120;

  static ExperimentConfig parse(const std::string& text);
  static ExperimentConfig from_file(const std::string& path);

  std::string echo() const;
  void validate() const;  // cheap structural checks; scale flags recomputed later

  Scale make_scale() const { return Scale(scale); }
  double natural_omega() const;  // 2 for dihedral, 1 otherwise
  LengthSequence make_lengths() const;
  std::vector<double> make_level_scale(const LengthSequence& L) const;
  std::vector<double> pbe_t_grid() const;  // log-spaced in [1, t_max]
};

}  // namespace rdlab
