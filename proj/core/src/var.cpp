#include "hdfts/var.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>

#include "hdfts/grid.hpp"

namespace hdfts {

namespace {

double log_det_psd(const Eigen::MatrixXd& S) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(S);
  double acc = 0.0;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i)
    acc += std::log(std::max(solver.eigenvalues()[i], 1e-300));
  return acc;
}

struct OlsFit {
  Eigen::MatrixXd B;  // (1 + r*l) x r
  Eigen::MatrixXd sigma_e;
  bool ridge = false;
};

OlsFit ols_fit(const Eigen::Ref<const Eigen::MatrixXd>& scores, int order) {
  const int n = static_cast<int>(scores.rows());
  const int r = static_cast<int>(scores.cols());
  const int n_eff = n - order;
  const int k = 1 + r * order;
  Eigen::MatrixXd X(n_eff, k);
  X.col(0).setOnes();
  for (int l = 1; l <= order; ++l)
    X.middleCols(1 + (l - 1) * r, r) = scores.middleRows(order - l, n_eff);
  const Eigen::MatrixXd Y = scores.bottomRows(n_eff);

  Eigen::MatrixXd G = X.transpose() * X;
  const Eigen::MatrixXd Xty = X.transpose() * Y;
  OlsFit fit;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> probe(G);
  const double lam_min = probe.eigenvalues().minCoeff();
  const double lam_max = probe.eigenvalues().maxCoeff();
  if (lam_min <= 1e-12 * std::max(lam_max, 1.0)) {
    G.diagonal().array() += 1e-8 * G.trace();
    fit.ridge = true;
  }
  fit.B = G.ldlt().solve(Xty);
  const Eigen::MatrixXd resid = Y - X * fit.B;
  fit.sigma_e = resid.transpose() * resid / static_cast<double>(n_eff);
  return fit;
}

VarModel from_ols(const OlsFit& fit, int order, int r, double aic) {
  VarModel model;
  model.dim = r;
  model.order = order;
  model.intercept = fit.B.row(0).transpose();
  for (int l = 1; l <= order; ++l)
    model.coefficients.push_back(
        fit.B.middleRows(1 + (l - 1) * r, r).transpose());
  model.innovation_cov = 0.5 * (fit.sigma_e + fit.sigma_e.transpose());
  model.aic = aic;
  model.ridge_applied = fit.ridge;
  return model;
}

}  // namespace

VarModel fit_var(const Eigen::Ref<const Eigen::MatrixXd>& scores,
                 int max_order) {
  const int n = static_cast<int>(scores.rows());
  const int r = static_cast<int>(scores.cols());
  require(r >= 1 && n >= 3, "fit_var: need at least r = 1 and n >= 3");
  require(max_order >= 1, "fit_var: max_order must be positive");

  // keep the regression overdetermined: n - l > r*l + 1
  int feasible_max = 0;
  for (int l = 1; l <= max_order; ++l)
    if (n - l > r * l + 1) feasible_max = l;

  if (feasible_max == 0) {
    // too little data for a clean fit: order-1 ridge fallback
    OlsFit fit = ols_fit(scores, 1);
    fit.ridge = true;
    const double aic = (n - 1) * log_det_psd(fit.sigma_e) +
                       2.0 * (static_cast<double>(r) * r + r);
    return from_ols(fit, 1, r, aic);
  }

  double best_aic = std::numeric_limits<double>::infinity();
  VarModel best;
  for (int l = 1; l <= feasible_max; ++l) {
    const OlsFit fit = ols_fit(scores, l);
    const int n_eff = n - l;
    const double aic =
        n_eff * log_det_psd(fit.sigma_e) +
        2.0 * (static_cast<double>(r) * r * l + r);
    if (aic < best_aic) {
      best_aic = aic;
      best = from_ols(fit, l, r, aic);
    }
  }
  return best;
}

Eigen::VectorXd predict_var(const VarModel& model,
                            const Eigen::Ref<const Eigen::MatrixXd>& history,
                            int h) {
  require(h >= 1, "predict_var: horizon must be positive");
  require(static_cast<int>(history.rows()) >= model.order,
          "predict_var: insufficient history");
  require(static_cast<int>(history.cols()) == model.dim,
          "predict_var: dimension mismatch");

  // state[0] = most recent
  std::vector<Eigen::VectorXd> state;
  for (int l = 0; l < model.order; ++l)
    state.push_back(history.row(history.rows() - 1 - l).transpose());

  Eigen::VectorXd next;
  for (int step = 0; step < h; ++step) {
    next = model.intercept;
    for (int l = 1; l <= model.order; ++l)
      next += model.coefficients[static_cast<std::size_t>(l - 1)] *
              state[static_cast<std::size_t>(l - 1)];
    for (int l = model.order - 1; l > 0; --l) state[static_cast<std::size_t>(l)] =
        state[static_cast<std::size_t>(l - 1)];
    if (!state.empty()) state[0] = next;
  }
  return next;
}

}  // namespace hdfts
