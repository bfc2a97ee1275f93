#pragma once

#include <vector>

#include "hdfts/autocov.hpp"
#include "hdfts/curve.hpp"
#include "hdfts/linalg.hpp"

namespace hdfts {

struct DimSelectConfig {
  double c_r = 0.75;        // truncation fraction of the ratio search
  double delta_tilde = 0.0; // ratio stabiliser
};

/// Per-group dimension-reduction model: eigenpairs of the nonzero-lag
/// operator K, retained dimension, mean curve and score series.
struct GroupFpcaModel {
  std::vector<int> group_indices;   // positions in the source panel
  Grid grid;
  Eigen::VectorXd mean_flat;        // p_l * N
  Eigen::VectorXd eigenvalues;      // positive spectrum, descending
  Eigen::MatrixXd eigenfunctions;   // (p_l * N) x r_hat, flattened psi_j
  int r_hat = 0;
  Eigen::MatrixXd scores;           // n x r_hat

  int group_size() const { return static_cast<int>(mean_flat.size()) / grid.size(); }
};

/// M_k estimate for one group: A_l^T Sigma_{y,k} A_l.
KernelMatrix group_M(const KernelMatrix& sigma_yk, const Eigen::MatrixXd& A_l);
KernelMatrix group_M(const AutocovSet& acov_y, const Eigen::MatrixXd& A_l, int k);

/// K(u, v) = sum_{k=1..k0} integral M_k(u, w) M_k(v, w)^T dw.
/// `M_hats[k-1]` holds the lag-k kernel matrix.
KernelMatrix build_K(const std::vector<KernelMatrix>& M_hats, int k0);

/// Ratio-based dimension estimate over a descending eigenvalue list.
/// Search runs over j in [min(floor(c_r * n_eff), len-1)]; an exact-zero
/// denominator with positive numerator selects that j, 0/0 is skipped.
/// Always returns at least 1.
int select_r(const Eigen::VectorXd& theta_desc, const DimSelectConfig& cfg,
             int n_eff);

/// Fits the group model from the transformed sub-panel and the lag-k
/// Sigma_y estimates restricted to the group (lags 1..k0 in `sigma_lags`).
GroupFpcaModel fit_group(const CurvePanel& z_panel_l,
                         const std::vector<KernelMatrix>& sigma_lags,
                         const DimSelectConfig& cfg);

/// Convenience overload matching the estimation path: restricts the supplied
/// full autocovariances by A_l, then fits.
GroupFpcaModel fit_group(const CurvePanel& z_panel_l, const AutocovSet& acov_y,
                         const Eigen::MatrixXd& A_l, int k0,
                         const DimSelectConfig& cfg);

/// Z(u) = mean(u) + sum_j score_j psi_j(u), flattened.
Eigen::VectorXd reconstruct(const GroupFpcaModel& model,
                            const Eigen::Ref<const Eigen::VectorXd>& scores);

/// Discrepancy between spans of two orthonormal sets of vector-valued
/// functions (flattened columns): sqrt(1 - sum <b1j, b2k>^2 / max(r1, r2)).
double subspace_discrepancy_functional(const Eigen::MatrixXd& basis1,
                                       const Eigen::MatrixXd& basis2,
                                       const Grid& grid);

}  // namespace hdfts
