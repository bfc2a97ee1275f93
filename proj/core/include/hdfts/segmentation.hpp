#pragma once

#include <utility>
#include <vector>

#include "hdfts/autocov.hpp"
#include "hdfts/curve.hpp"

namespace hdfts {

struct SegmentationConfig {
  int k0 = 5;           // lag horizon for the W matrix
  int m = 5;            // lag horizon for the cross statistics
  double c_rho = 0.75;  // truncation fraction of the ratio search
  double delta_n = 0.0; // ratio stabiliser
  bool use_threshold = false;
  int rounds = 1;       // repeated refinement (c_rho = 1 from round 2 on)
  int cv_folds = 5;     // folds for threshold cross-validation
};

/// Output of the segmentation transformation. With `rounds == 1` the final
/// transformed series is Z_t = A_hat^T V^{-1/2} Y_t with A_hat orthogonal;
/// repeated rounds compose block-local orthogonal transforms into A_hat.
struct Segmentation {
  Eigen::MatrixXd v_hat;        // integrated covariance of the input panel
  Eigen::MatrixXd normalizer;   // V^{-1/2}
  Eigen::MatrixXd gamma_hat;    // round-1 eigenvectors of W (descending)
  Eigen::VectorXd w_eigenvalues;
  Eigen::MatrixXd T_matrix;     // round-1 cross statistics (upper triangle)
  int rho_hat = 0;              // round-1 edge count
  std::vector<int> permutation; // round-1 column order, position -> eigen index
  Eigen::MatrixXd A_hat;        // composite mixing, normalized panel = A_hat * Z
  std::vector<std::vector<int>> groups;  // contiguous partition of [p] in Z order

  int q_hat() const { return static_cast<int>(groups.size()); }
  int p() const { return static_cast<int>(A_hat.rows()); }
  /// Z = forward_map * Y (normalization included).
  Eigen::MatrixXd forward_map() const { return A_hat.transpose() * normalizer; }
  /// Y = back_map * Z.
  Eigen::MatrixXd back_map() const;
  /// Columns of A_hat belonging to group l.
  Eigen::MatrixXd group_columns(int l) const;
};

/// Integrated covariance V = integral Sigma_0(u, u) du of a lag-0 kernel.
Eigen::MatrixXd integrated_covariance(const KernelMatrix& lag0);

struct NormalizedPanel {
  CurvePanel panel;             // V^{-1/2} Y_t
  Eigen::MatrixXd v_hat;
  Eigen::MatrixXd v_inv_sqrt;
};

/// Normalizes so the integrated variance of every transformed series is one
/// in aggregate: integral of the lag-0 covariance diagonal becomes I_p.
NormalizedPanel normalize(const CurvePanel& panel);

/// W = sum_{k=0..k0} double-integral of Sigma_k Sigma_k^T, with per-lag
/// thresholding when a plan is supplied.
Eigen::MatrixXd build_W(const AutocovSet& acov, int k0,
                        const ThresholdPlan* plan = nullptr);

/// Z_t = gamma^T Y_t, curve-wise.
CurvePanel transform(const CurvePanel& panel, const Eigen::MatrixXd& gamma);

/// T(i, j) = max over |k| <= m of the HS norm of the (i, j) cross kernel,
/// given the lag-k kernels of the transformed series for k = 0..m (negative
/// lags come from the transpose identity). Upper triangle only.
Eigen::MatrixXd cross_stats(const std::vector<KernelMatrix>& z_kernels, int m);

/// Ratio-based edge count over the descending cross statistics. Zero
/// denominators with a positive numerator select that position; 0/0 is
/// skipped. All-zero input yields 0.
int select_edge_count(const std::vector<double>& t_sorted_desc, double c_rho,
                      double delta_n);

/// Union-find over the strongest rho_hat pairs; components ordered by
/// smallest member, members ascending.
std::vector<std::vector<int>> group_partition(const Eigen::MatrixXd& T,
                                              int rho_hat, int p);

/// Full first-step procedure (normalize, W, eigenanalysis, permutation,
/// optional repeated refinement).
Segmentation segment(const CurvePanel& panel, const SegmentationConfig& cfg);

/// Functional cross-autocorrelation table for -m <= k <= m, i <= j.
struct FcacEntry {
  int i, j, k;
  double value;
};
std::vector<FcacEntry> fcac_measure(const CurvePanel& panel, int max_lag);

}  // namespace hdfts
