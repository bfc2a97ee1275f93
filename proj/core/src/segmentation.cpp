#include "hdfts/segmentation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "hdfts/linalg.hpp"

namespace hdfts {

Eigen::MatrixXd Segmentation::back_map() const {
  return sqrt_psd(v_hat) * A_hat;
}

Eigen::MatrixXd Segmentation::group_columns(int l) const {
  require(l >= 0 && l < q_hat(), "Segmentation: group index out of range");
  Eigen::MatrixXd out(A_hat.rows(),
                      static_cast<Eigen::Index>(groups[l].size()));
  for (std::size_t c = 0; c < groups[l].size(); ++c)
    out.col(static_cast<Eigen::Index>(c)) = A_hat.col(groups[l][c]);
  return out;
}

Eigen::MatrixXd integrated_covariance(const KernelMatrix& lag0) {
  require(lag0.rows() == lag0.cols(), "integrated_covariance: square input");
  const int p = lag0.rows();
  const int N = lag0.grid_size();
  const auto& w = lag0.grid().weights();
  Eigen::MatrixXd v(p, p);
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j) {
      double acc = 0.0;
      for (int a = 0; a < N; ++a)
        acc += w[a] * lag0.flat()(static_cast<Eigen::Index>(i) * N + a,
                                  static_cast<Eigen::Index>(j) * N + a);
      v(i, j) = acc;
    }
  return 0.5 * (v + v.transpose());
}

NormalizedPanel normalize(const CurvePanel& panel) {
  require(panel.n() >= 2, "normalize: need n >= 2");
  const Eigen::MatrixXd v_hat = integrated_covariance(sample_autocov(panel, 0));
  Eigen::MatrixXd v_inv_sqrt = inv_sqrt(v_hat);
  CurvePanel normalized = panel.transformed_by(v_inv_sqrt.transpose());
  return {std::move(normalized), v_hat, std::move(v_inv_sqrt)};
}

Eigen::MatrixXd build_W(const AutocovSet& acov, int k0,
                        const ThresholdPlan* plan) {
  require(acov.max_lag() >= k0, "build_W: missing lag");
  const int p = acov.p;
  Eigen::MatrixXd W = Eigen::MatrixXd::Zero(p, p);
  for (int k = 0; k <= k0; ++k) {
    if (plan != nullptr) {
      const KernelMatrix th = threshold(acov.at_lag(k), plan->at_lag(k));
      W += kernel_pointwise_transpose_product(th, th);
    } else {
      W += kernel_pointwise_transpose_product(acov.at_lag(k), acov.at_lag(k));
    }
  }
  return 0.5 * (W + W.transpose());
}

CurvePanel transform(const CurvePanel& panel, const Eigen::MatrixXd& gamma) {
  require(gamma.rows() == panel.p(), "transform: dimension mismatch");
  return panel.transformed_by(gamma);
}

Eigen::MatrixXd cross_stats(const std::vector<KernelMatrix>& z_kernels, int m) {
  require(static_cast<int>(z_kernels.size()) >= m + 1,
          "cross_stats: missing lags");
  const int p = z_kernels.front().rows();
  Eigen::MatrixXd T = Eigen::MatrixXd::Zero(p, p);
  for (int k = 0; k <= m; ++k) {
    const Eigen::MatrixXd norms = z_kernels[static_cast<std::size_t>(k)]
                                      .entry_hs_norms();
    for (int i = 0; i < p; ++i)
      for (int j = i + 1; j < p; ++j)
        // lag -k of entry (i, j) equals lag k of entry (j, i)
        T(i, j) = std::max({T(i, j), norms(i, j), norms(j, i)});
  }
  return T;
}

int select_edge_count(const std::vector<double>& t_sorted_desc, double c_rho,
                      double delta_n) {
  require(c_rho > 0.0 && c_rho <= 1.0, "select_edge_count: bad c_rho");
  require(delta_n >= 0.0, "select_edge_count: bad delta_n");
  const int aleph = static_cast<int>(t_sorted_desc.size());
  if (aleph == 0) return 0;
  if (t_sorted_desc.front() <= 0.0) return 0;  // no signal at all
  if (aleph == 1) return 1;

  int cap = static_cast<int>(std::floor(c_rho * aleph));
  cap = std::min(cap, aleph - 1);
  cap = std::max(cap, 1);

  double best_ratio = -std::numeric_limits<double>::infinity();
  int best_j = 1;
  for (int j = 1; j <= cap; ++j) {
    const double num = t_sorted_desc[static_cast<std::size_t>(j - 1)] + delta_n;
    const double den = t_sorted_desc[static_cast<std::size_t>(j)] + delta_n;
    double ratio;
    if (den == 0.0) {
      if (num == 0.0) continue;  // 0/0 carries no information
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

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

std::vector<std::vector<int>> group_partition(const Eigen::MatrixXd& T,
                                              int rho_hat, int p) {
  struct Pair {
    double value;
    int i, j;
  };
  std::vector<Pair> pairs;
  pairs.reserve(static_cast<std::size_t>(p) * (p - 1) / 2);
  for (int i = 0; i < p; ++i)
    for (int j = i + 1; j < p; ++j) pairs.push_back({T(i, j), i, j});
  std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
    if (a.value != b.value) return a.value > b.value;
    if (a.i != b.i) return a.i < b.i;
    return a.j < b.j;
  });

  UnionFind uf(p);
  const int edges = std::min<int>(rho_hat, static_cast<int>(pairs.size()));
  for (int e = 0; e < edges; ++e) uf.unite(pairs[e].i, pairs[e].j);

  std::vector<std::vector<int>> groups;
  std::vector<int> root_to_group(p, -1);
  for (int i = 0; i < p; ++i) {
    const int r = uf.find(i);
    if (root_to_group[r] < 0) {
      root_to_group[r] = static_cast<int>(groups.size());
      groups.emplace_back();
    }
    groups[root_to_group[r]].push_back(i);
  }
  // roots are component minima and i runs ascending, so groups are already
  // ordered by smallest member with members ascending
  return groups;
}

namespace {

struct BlockResult {
  Eigen::MatrixXd gamma;
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd T;
  int rho_hat = 0;
  std::vector<int> perm;             // position -> local eigen index
  std::vector<int> group_sizes;      // in permuted order
};

BlockResult segment_block(const CurvePanel& sub, const SegmentationConfig& cfg,
                          double c_rho) {
  const int p = sub.p();
  const int k_all = std::max(cfg.k0, cfg.m);
  require(sub.n() > k_all + 1, "segment: panel too short for the lag horizon");

  const AutocovSet acov = compute_autocov(sub, k_all);
  std::vector<KernelMatrix> kernels;
  kernels.reserve(static_cast<std::size_t>(k_all) + 1);
  if (cfg.use_threshold) {
    const ThresholdPlan plan = select_thresholds(sub, k_all, cfg.cv_folds);
    for (int k = 0; k <= k_all; ++k)
      kernels.push_back(threshold(acov.at_lag(k), plan.at_lag(k)));
  } else {
    for (int k = 0; k <= k_all; ++k) kernels.push_back(acov.at_lag(k));
  }

  BlockResult out;
  Eigen::MatrixXd W = Eigen::MatrixXd::Zero(p, p);
  for (int k = 0; k <= cfg.k0; ++k)
    W += kernel_pointwise_transpose_product(kernels[static_cast<std::size_t>(k)],
                                            kernels[static_cast<std::size_t>(k)]);
  W = 0.5 * (W + W.transpose()).eval();
  const SymEigen eig = sym_eigen(W);
  out.gamma = eig.vectors;
  out.eigenvalues = eig.values;

  std::vector<KernelMatrix> z_kernels;
  z_kernels.reserve(static_cast<std::size_t>(cfg.m) + 1);
  for (int k = 0; k <= cfg.m; ++k)
    z_kernels.push_back(kernels[static_cast<std::size_t>(k)].congruence(out.gamma));
  out.T = cross_stats(z_kernels, cfg.m);

  std::vector<double> t_values;
  t_values.reserve(static_cast<std::size_t>(p) * (p - 1) / 2);
  for (int i = 0; i < p; ++i)
    for (int j = i + 1; j < p; ++j) t_values.push_back(out.T(i, j));
  std::sort(t_values.begin(), t_values.end(), std::greater<double>());
  out.rho_hat = select_edge_count(t_values, c_rho, cfg.delta_n);

  const auto groups = group_partition(out.T, out.rho_hat, p);
  for (const auto& g : groups) {
    out.group_sizes.push_back(static_cast<int>(g.size()));
    for (int idx : g) out.perm.push_back(idx);
  }
  return out;
}

Eigen::MatrixXd permutation_matrix(const std::vector<int>& perm) {
  const int p = static_cast<int>(perm.size());
  Eigen::MatrixXd P = Eigen::MatrixXd::Zero(p, p);
  for (int pos = 0; pos < p; ++pos) P(perm[static_cast<std::size_t>(pos)], pos) = 1.0;
  return P;
}

}  // namespace

Segmentation segment(const CurvePanel& panel, const SegmentationConfig& cfg) {
  require(cfg.rounds >= 1, "segment: rounds must be >= 1");
  const int p = panel.p();

  Segmentation seg;
  NormalizedPanel norm = normalize(panel);
  seg.v_hat = norm.v_hat;
  seg.normalizer = norm.v_inv_sqrt;

  CurvePanel z = std::move(norm.panel);
  Eigen::MatrixXd mixing = Eigen::MatrixXd::Identity(p, p);
  std::vector<std::pair<int, int>> blocks{{0, p}};  // (start, size) in Z order

  for (int round = 1; round <= cfg.rounds; ++round) {
    const double c_rho = (round == 1) ? cfg.c_rho : 1.0;
    std::vector<std::pair<int, int>> next_blocks;
    for (const auto& [start, size] : blocks) {
      if (size == 1 && round > 1) {
        next_blocks.emplace_back(start, 1);
        continue;
      }
      std::vector<int> idx(static_cast<std::size_t>(size));
      std::iota(idx.begin(), idx.end(), start);
      const CurvePanel sub = z.select_series(idx);
      const BlockResult rr = segment_block(sub, cfg, c_rho);

      const Eigen::MatrixXd local = rr.gamma * permutation_matrix(rr.perm);
      const CurvePanel sub_z = sub.transformed_by(local);
      const int N = z.grid_size();
      z.flat().middleRows(static_cast<Eigen::Index>(start) * N,
                          static_cast<Eigen::Index>(size) * N) = sub_z.flat();
      mixing.middleCols(start, size) =
          (mixing.middleCols(start, size) * local).eval();

      int offset = start;
      for (int s : rr.group_sizes) {
        next_blocks.emplace_back(offset, s);
        offset += s;
      }
      if (round == 1) {
        seg.gamma_hat = rr.gamma;
        seg.w_eigenvalues = rr.eigenvalues;
        seg.T_matrix = rr.T;
        seg.rho_hat = rr.rho_hat;
        seg.permutation = rr.perm;
      }
    }
    blocks = std::move(next_blocks);
  }

  seg.A_hat = std::move(mixing);
  for (const auto& [start, size] : blocks) {
    std::vector<int> g(static_cast<std::size_t>(size));
    std::iota(g.begin(), g.end(), start);
    seg.groups.push_back(std::move(g));
  }
  return seg;
}

std::vector<FcacEntry> fcac_measure(const CurvePanel& panel, int max_lag) {
  require(panel.n() > max_lag, "fcac_measure: panel too short");
  const int p = panel.p();
  const int N = panel.grid_size();
  const auto& w = panel.grid().weights();
  const AutocovSet acov = compute_autocov(panel, max_lag);

  std::vector<Eigen::MatrixXd> norms;
  for (int k = 0; k <= max_lag; ++k) norms.push_back(acov.at_lag(k).entry_hs_norms());

  Eigen::VectorXd denom(p);
  const KernelMatrix& lag0 = acov.at_lag(0);
  for (int i = 0; i < p; ++i) {
    double acc = 0.0;
    for (int a = 0; a < N; ++a) {
      const double d = lag0.flat()(static_cast<Eigen::Index>(i) * N + a,
                                   static_cast<Eigen::Index>(i) * N + a);
      acc += w[a] * d * d;
    }
    require(acc > 0.0, "fcac_measure: zero-variance series");
    denom[i] = acc;
  }

  std::vector<FcacEntry> out;
  out.reserve(static_cast<std::size_t>(p) * (p + 1) / 2 * (2 * max_lag + 1));
  for (int i = 0; i < p; ++i)
    for (int j = i; j < p; ++j) {
      const double scale = std::sqrt(denom[i] * denom[j]);
      for (int k = -max_lag; k <= max_lag; ++k) {
        const double norm =
            (k >= 0) ? norms[static_cast<std::size_t>(k)](i, j)
                     : norms[static_cast<std::size_t>(-k)](j, i);
        out.push_back({i, j, k, norm / scale});
      }
    }
  return out;
}

}  // namespace hdfts
