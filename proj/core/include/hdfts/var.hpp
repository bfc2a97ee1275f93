#pragma once

#include <Eigen/Core>
#include <vector>

namespace hdfts {

/// VAR(order) with intercept fitted by least squares.
struct VarModel {
  int dim = 0;
  int order = 0;
  Eigen::VectorXd intercept;
  std::vector<Eigen::MatrixXd> coefficients;  // lag 1 .. order
  Eigen::MatrixXd innovation_cov;
  double aic = 0.0;
  bool ridge_applied = false;
};

/// Fits VAR(l) for l = 1..max_order by OLS with intercept and returns the
/// minimal-AIC model (AIC = n_eff log det(Sigma_e) + 2 (r^2 l + r); ties go
/// to the smaller order). Orders that would make the regression
/// underdetermined are not considered; if none fits, an order-1 ridge
/// fallback is used.
VarModel fit_var(const Eigen::Ref<const Eigen::MatrixXd>& scores,
                 int max_order);

/// Iterates the fitted recursion h steps with innovations set to zero.
/// `history` rows are time-ascending and must cover at least `order` rows.
Eigen::VectorXd predict_var(const VarModel& model,
                            const Eigen::Ref<const Eigen::MatrixXd>& history,
                            int h);

}  // namespace hdfts
