#include "hdfts/vmfpca.hpp"

#include <cmath>
#include <limits>

namespace hdfts {

KernelMatrix group_M(const KernelMatrix& sigma_yk, const Eigen::MatrixXd& A_l) {
  return sigma_yk.congruence(A_l);
}

KernelMatrix group_M(const AutocovSet& acov_y, const Eigen::MatrixXd& A_l, int k) {
  return group_M(acov_y.at_lag(k), A_l);
}

KernelMatrix build_K(const std::vector<KernelMatrix>& M_hats, int k0) {
  require(static_cast<int>(M_hats.size()) >= k0 && k0 >= 1,
          "build_K: missing lag");
  KernelMatrix K = kernel_w_contraction(M_hats[0], M_hats[0]);
  for (int k = 2; k <= k0; ++k)
    K += kernel_w_contraction(M_hats[static_cast<std::size_t>(k - 1)],
                              M_hats[static_cast<std::size_t>(k - 1)]);
  K.flat() = (0.5 * (K.flat() + K.flat().transpose())).eval();
  return K;
}

int select_r(const Eigen::VectorXd& theta_desc, const DimSelectConfig& cfg,
             int n_eff) {
  require(theta_desc.size() > 0, "select_r: empty spectrum");
  require(cfg.c_r > 0.0 && cfg.c_r <= 1.0, "select_r: bad c_r");
  const int len = static_cast<int>(theta_desc.size());
  int cap = static_cast<int>(std::floor(cfg.c_r * n_eff));
  cap = std::min(cap, len - 1);
  if (cap < 1) return 1;

  double best_ratio = -std::numeric_limits<double>::infinity();
  int best_j = 1;
  for (int j = 1; j <= cap; ++j) {
    const double num = theta_desc[j - 1] + cfg.delta_tilde;
    const double den = theta_desc[j] + cfg.delta_tilde;
    double ratio;
    if (den == 0.0) {
      if (num == 0.0) continue;
      ratio = std::numeric_limits<double>::infinity();
    } else {
      ratio = num / den;
    }
    if (ratio > best_ratio) {
      best_ratio = ratio;
      best_j = j;
    }
  }
  return best_j;
}

GroupFpcaModel fit_group(const CurvePanel& z_panel_l,
                         const std::vector<KernelMatrix>& sigma_lags,
                         const DimSelectConfig& cfg) {
  require(!sigma_lags.empty(), "fit_group: need at least lag 1");
  const int k0 = static_cast<int>(sigma_lags.size());
  const int n = z_panel_l.n();
  require(n > k0 + 1, "fit_group: panel too short");

  const KernelMatrix K = build_K(sigma_lags, k0);
  const KernelEigen eig = kernel_sym_eigen(K, 1e-6);

  // Keep the numerically meaningful part of the spectrum. The discretized
  // operator has rank bounded by the data's basis dimension; ratios among
  // trailing machine zeros are noise.
  const double theta1 = std::max(eig.values[0], 0.0);
  const double floor = 1e-12 * theta1;
  int len = 0;
  while (len < eig.values.size() && eig.values[len] > floor) ++len;
  len = std::max(len, 1);

  GroupFpcaModel model;
  model.grid = z_panel_l.grid();
  model.eigenvalues = eig.values.head(len).cwiseMax(0.0);
  model.r_hat = (len == 1)
                    ? 1
                    : select_r(model.eigenvalues, cfg, n - k0);
  model.eigenfunctions = eig.functions.leftCols(model.r_hat);
  model.mean_flat = z_panel_l.mean_flat();

  // Scores: quadrature inner products of the centred panel with each psi_j.
  const int N = z_panel_l.grid_size();
  const int p_l = z_panel_l.p();
  Eigen::VectorXd w_stack(static_cast<Eigen::Index>(p_l) * N);
  for (int i = 0; i < p_l; ++i)
    w_stack.segment(static_cast<Eigen::Index>(i) * N, N) =
        z_panel_l.grid().weights();
  const Eigen::MatrixXd centered =
      z_panel_l.flat().colwise() - model.mean_flat;
  model.scores = centered.transpose() *
                 (w_stack.asDiagonal() * model.eigenfunctions);
  return model;
}

GroupFpcaModel fit_group(const CurvePanel& z_panel_l, const AutocovSet& acov_y,
                         const Eigen::MatrixXd& A_l, int k0,
                         const DimSelectConfig& cfg) {
  std::vector<KernelMatrix> lags;
  lags.reserve(static_cast<std::size_t>(k0));
  for (int k = 1; k <= k0; ++k) lags.push_back(group_M(acov_y, A_l, k));
  return fit_group(z_panel_l, lags, cfg);
}

Eigen::VectorXd reconstruct(const GroupFpcaModel& model,
                            const Eigen::Ref<const Eigen::VectorXd>& scores) {
  require(scores.size() == model.r_hat, "reconstruct: score length mismatch");
  return model.mean_flat + model.eigenfunctions * scores;
}

double subspace_discrepancy_functional(const Eigen::MatrixXd& basis1,
                                       const Eigen::MatrixXd& basis2,
                                       const Grid& grid) {
  require(basis1.rows() == basis2.rows(),
          "subspace_discrepancy_functional: component dims differ");
  const int N = grid.size();
  require(basis1.rows() % N == 0,
          "subspace_discrepancy_functional: rows not a multiple of grid size");
  const int p = static_cast<int>(basis1.rows()) / N;
  Eigen::VectorXd w_stack(basis1.rows());
  for (int i = 0; i < p; ++i)
    w_stack.segment(static_cast<Eigen::Index>(i) * N, N) = grid.weights();

  const Eigen::MatrixXd g11 =
      basis1.transpose() * (w_stack.asDiagonal() * basis1);
  const Eigen::MatrixXd g22 =
      basis2.transpose() * (w_stack.asDiagonal() * basis2);
  const double err1 =
      (g11 - Eigen::MatrixXd::Identity(g11.rows(), g11.cols())).cwiseAbs().maxCoeff();
  const double err2 =
      (g22 - Eigen::MatrixXd::Identity(g22.rows(), g22.cols())).cwiseAbs().maxCoeff();
  require(err1 <= 1e-6 && err2 <= 1e-6,
          "subspace_discrepancy_functional: basis not orthonormal");

  const Eigen::MatrixXd cross =
      basis1.transpose() * (w_stack.asDiagonal() * basis2);
  const double r = static_cast<double>(std::max(basis1.cols(), basis2.cols()));
  const double val = 1.0 - cross.squaredNorm() / r;
  return std::sqrt(std::min(std::max(val, 0.0), 1.0));
}

}  // namespace hdfts
