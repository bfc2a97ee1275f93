#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hdfts/curve.hpp"
#include "hdfts/kernel.hpp"
#include "hdfts/rng.hpp"

namespace hdfts {

enum class DesignKind { example1, example2, example3, largeP, vfar };

struct SimDesign {
  DesignKind kind = DesignKind::example1;
  int p = 6;
  int n = 400;
  int grid_points = 30;
  double delta = 0.1;        // largeP only
  std::uint64_t seed = 0;
};

/// What the generator knows: the untransformed latent panels, the loading
/// matrix and the true grouping.
struct OracleTruth {
  Eigen::MatrixXd A_check;                // p x p, invertible
  std::vector<std::vector<int>> groups;   // partition of [p] in Z order
  CurvePanel x_panel;                     // dynamics
  CurvePanel noise_panel;                 // white noise
  CurvePanel z_panel;                     // x + noise

  int q() const { return static_cast<int>(groups.size()); }
};

/// White noise curves: each series is an independent 10-term Fourier
/// expansion with geometrically decaying coefficient scales.
CurvePanel gen_noise(int n, int p, const Grid& grid, std::uint64_t seed);

/// Stationary factor curves driven by 5-dimensional VAR(1) coefficient
/// dynamics; the transition matrix is a rescaled Uniform[-3,3] draw with
/// spectral radius Uniform[0.5,1]. 200 burn-in steps are discarded.
CurvePanel gen_dynamics(int n, int n_factors, const Grid& grid,
                        std::uint64_t seed);

/// Fixed-p designs: q = 3, 4, 5 uncorrelated groups of sizes 1..q built from
/// time-shifted copies of shared factors, mixed by a Uniform[-3,3] loading.
std::pair<CurvePanel, OracleTruth> gen_example(int kind, int n, int grid_points,
                                               std::uint64_t seed);

/// Large-p design: p/3 groups of size 3, loading Delta1 + delta * Delta2
/// with block-diagonal Delta1 and a 2-nonzeros-per-row perturbation.
std::pair<CurvePanel, OracleTruth> gen_largeP(int p, int n, double delta,
                                              int grid_points,
                                              std::uint64_t seed);

struct VfarData {
  CurvePanel panel;
  KernelMatrix q_kernel;      // true Q(u, v)
  Eigen::MatrixXd transition; // true B, (5p) x (5p)
  Eigen::MatrixXd basis;      // N x 5 Fourier system driving the curves
};

/// Vector functional AR(1): Y_t = integral Q(u,v) Y_{t-1}(v) dv + eps_t with
/// Q_ij(u,v) = s(u)^T B_ij s(v) over a 5-dimensional Fourier system.
VfarData gen_vfar(int p, int n, int grid_points, std::uint64_t seed);

/// Dispatch on a design; vfar designs return no OracleTruth.
struct SimData {
  CurvePanel panel;
  std::optional<OracleTruth> truth;
  std::optional<VfarData> vfar;
};
SimData generate(const SimDesign& design);

}  // namespace hdfts
