#include "hdfts/autocov.hpp"

#include <cmath>
#include <limits>

namespace hdfts {

KernelMatrix sample_autocov(const CurvePanel& panel, int k) {
  const int n = panel.n();
  require(k >= 0 && k <= n - 2, "sample_autocov: lag out of range");
  const Eigen::VectorXd mean = panel.mean_flat();
  const Eigen::MatrixXd centered = panel.flat().colwise() - mean;
  Eigen::MatrixXd flat = centered.leftCols(n - k) *
                         centered.rightCols(n - k).transpose() /
                         static_cast<double>(n - k);
  return KernelMatrix(panel.grid(), std::move(flat), panel.p(), panel.p());
}

const KernelMatrix& AutocovSet::at_lag(int k) const {
  require(k >= 0 && k <= max_lag(), "AutocovSet: lag not computed");
  return kernels[static_cast<std::size_t>(k)];
}

AutocovSet compute_autocov(const CurvePanel& panel, int k_max) {
  require(k_max >= 0 && k_max <= panel.n() - 2,
          "compute_autocov: k_max out of range");
  AutocovSet out{panel.grid(), panel.p(), {}, panel.mean_flat()};
  out.kernels.reserve(static_cast<std::size_t>(k_max) + 1);
  const Eigen::MatrixXd centered = panel.flat().colwise() - out.mean_flat;
  const int n = panel.n();
  for (int k = 0; k <= k_max; ++k) {
    Eigen::MatrixXd flat = centered.leftCols(n - k) *
                           centered.rightCols(n - k).transpose() /
                           static_cast<double>(n - k);
    out.kernels.emplace_back(panel.grid(), std::move(flat), panel.p(),
                             panel.p());
  }
  return out;
}

KernelMatrix threshold(const KernelMatrix& S, double omega) {
  require(omega >= 0.0, "threshold: omega must be nonnegative");
  if (omega == 0.0) return S;
  const Eigen::MatrixXd norms = S.entry_hs_norms();
  KernelMatrix out = S;
  const int N = S.grid_size();
  for (int i = 0; i < S.rows(); ++i)
    for (int j = 0; j < S.cols(); ++j)
      if (norms(i, j) < omega)
        out.flat()
            .block(static_cast<Eigen::Index>(i) * N,
                   static_cast<Eigen::Index>(j) * N, N, N)
            .setZero();
  return out;
}

double ThresholdPlan::at_lag(int k) const {
  require(k >= 0 && k < static_cast<int>(omegas.size()),
          "ThresholdPlan: lag not covered");
  return omegas[static_cast<std::size_t>(k)];
}

std::vector<double> default_omega_grid(const KernelMatrix& full_sample_lag_k) {
  const double M = full_sample_lag_k.entry_hs_norms().maxCoeff();
  std::vector<double> grid;
  grid.reserve(20);
  if (M <= 0.0) {
    grid.push_back(0.0);
    return grid;
  }
  const double lo = std::log(1e-4 * M);
  const double hi = std::log(M);
  for (int i = 0; i < 20; ++i)
    grid.push_back(std::exp(lo + (hi - lo) * i / 19.0));
  return grid;
}

namespace {

struct Segment {
  int start;
  int length;
};

// Lag-k sample autocovariance over a union of contiguous time segments,
// centred at the union's own mean; lagged pairs never straddle segments.
Eigen::MatrixXd autocov_over_segments(const CurvePanel& panel,
                                      const std::vector<Segment>& segments,
                                      int k) {
  Eigen::Index rows = panel.flat().rows();
  Eigen::VectorXd mean = Eigen::VectorXd::Zero(rows);
  int n_total = 0;
  for (const auto& s : segments) {
    mean += panel.flat().middleCols(s.start, s.length).rowwise().sum();
    n_total += s.length;
  }
  require(n_total > 0, "autocov_over_segments: empty segment set");
  mean /= static_cast<double>(n_total);

  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(rows, rows);
  int pairs = 0;
  for (const auto& s : segments) {
    const int m = s.length - k;
    if (m <= 0) continue;
    const Eigen::MatrixXd left =
        panel.flat().middleCols(s.start, m).colwise() - mean;
    const Eigen::MatrixXd right =
        panel.flat().middleCols(s.start + k, m).colwise() - mean;
    acc.noalias() += left * right.transpose();
    pairs += m;
  }
  require(pairs > 0, "autocov_over_segments: blocks too small for this lag");
  return acc / static_cast<double>(pairs);
}

}  // namespace

double cv_select_omega(const CurvePanel& panel, int k, int folds,
                       const std::vector<double>& grid) {
  require(folds >= 2, "cv_select_omega: need at least 2 folds");
  require(!grid.empty(), "cv_select_omega: empty candidate grid");
  const int n = panel.n();
  require(n >= 2 * folds, "cv_select_omega: panel too short for the folds");

  const int p = panel.p();
  const int N = panel.grid_size();
  const auto& w = panel.grid().weights();

  // Per fold, reduce the discrepancy to three p x p summaries so the grid
  // scan is free: a = ||S^(l)_ij||_S, c = ||S^(l)_ij - S^(-l)_ij||_S^2,
  // d = ||S^(-l)_ij||_S^2.
  std::vector<Eigen::MatrixXd> a_list, c_list, d_list;
  for (int l = 0; l < folds; ++l) {
    const int start = static_cast<int>(static_cast<long>(l) * n / folds);
    const int stop = static_cast<int>(static_cast<long>(l + 1) * n / folds);
    const int len = stop - start;
    require(len >= k + 1 || k == 0, "cv_select_omega: fold too small for lag");

    const Eigen::MatrixXd block_cov =
        autocov_over_segments(panel, {{start, len}}, k);
    std::vector<Segment> rest;
    if (start > 0) rest.push_back({0, start});
    if (stop < n) rest.push_back({stop, n - stop});
    const Eigen::MatrixXd rest_cov = autocov_over_segments(panel, rest, k);

    Eigen::MatrixXd a(p, p), c(p, p), d(p, p);
    for (int i = 0; i < p; ++i)
      for (int j = 0; j < p; ++j) {
        const auto bij = block_cov.block(static_cast<Eigen::Index>(i) * N,
                                         static_cast<Eigen::Index>(j) * N, N, N);
        const auto rij = rest_cov.block(static_cast<Eigen::Index>(i) * N,
                                        static_cast<Eigen::Index>(j) * N, N, N);
        const Eigen::MatrixXd diff = bij - rij;
        a(i, j) = std::sqrt(std::max(
            0.0, (w.asDiagonal() * bij * w.asDiagonal()).cwiseProduct(bij).sum()));
        c(i, j) =
            (w.asDiagonal() * diff * w.asDiagonal()).cwiseProduct(diff).sum();
        d(i, j) =
            (w.asDiagonal() * rij * w.asDiagonal()).cwiseProduct(rij).sum();
      }
    a_list.push_back(std::move(a));
    c_list.push_back(std::move(c));
    d_list.push_back(std::move(d));
  }

  double best_err = std::numeric_limits<double>::infinity();
  double best_omega = grid.front();
  for (const double omega : grid) {
    double err = 0.0;
    for (int l = 0; l < folds; ++l) {
      for (int i = 0; i < p; ++i)
        for (int j = 0; j < p; ++j)
          err += (a_list[l](i, j) >= omega) ? c_list[l](i, j) : d_list[l](i, j);
    }
    err /= static_cast<double>(folds);
    if (err < best_err) {
      best_err = err;
      best_omega = omega;
    }
  }
  return best_omega;
}

ThresholdPlan select_thresholds(const CurvePanel& panel, int k_max, int folds,
                                const std::vector<double>& grid) {
  ThresholdPlan plan;
  plan.folds = folds;
  plan.candidate_grid = grid;
  for (int k = 0; k <= k_max; ++k) {
    std::vector<double> g =
        grid.empty() ? default_omega_grid(sample_autocov(panel, k)) : grid;
    plan.omegas.push_back(cv_select_omega(panel, k, folds, g));
  }
  return plan;
}

}  // namespace hdfts
