#pragma once

#include <optional>
#include <vector>

#include "hdfts/curve.hpp"
#include "hdfts/kernel.hpp"

namespace hdfts {

/// Lag-k sample autocovariance kernel matrix: entry (i, j) is
/// (n-k)^{-1} sum_t {Y_ti(u) - Ybar_i(u)}{Y_(t+k)j(v) - Ybar_j(v)},
/// with Ybar the full-panel mean curve. Requires 0 <= k <= n-2.
KernelMatrix sample_autocov(const CurvePanel& panel, int k);

/// Sample autocovariances for lags 0..k_max plus the panel mean.
struct AutocovSet {
  Grid grid;
  int p = 0;
  std::vector<KernelMatrix> kernels;  // index = lag
  Eigen::VectorXd mean_flat;          // p*N

  int max_lag() const { return static_cast<int>(kernels.size()) - 1; }
  const KernelMatrix& at_lag(int k) const;
};

AutocovSet compute_autocov(const CurvePanel& panel, int k_max);

/// Functional hard thresholding: entries with HS norm below omega are
/// replaced by the zero kernel, survivors are kept verbatim.
KernelMatrix threshold(const KernelMatrix& S, double omega);

/// Per-lag threshold levels plus how they were chosen.
struct ThresholdPlan {
  std::vector<double> omegas;           // index = lag
  int folds = 5;
  std::vector<double> candidate_grid;   // empty means per-lag automatic grid

  double at_lag(int k) const;
};

/// Default candidate grid: 20 log-spaced values from 1e-4*M to M, where M is
/// the largest entry HS norm of the full-sample lag-k estimator.
std::vector<double> default_omega_grid(const KernelMatrix& full_sample_lag_k);

/// L-fold cross-validated threshold for lag k (Error(omega) minimised over
/// the grid, ties to the smallest omega). Folds are contiguous time blocks.
double cv_select_omega(const CurvePanel& panel, int k, int folds,
                       const std::vector<double>& grid);

/// Cross-validates every lag 0..k_max. An empty candidate grid selects the
/// default per-lag grid.
ThresholdPlan select_thresholds(const CurvePanel& panel, int k_max, int folds,
                                const std::vector<double>& grid = {});

}  // namespace hdfts
