#pragma once

#include <Eigen/Core>

#include "hdfts/grid.hpp"

namespace hdfts {

/// A single bivariate kernel B(u, v) sampled on grid x grid.
struct Kernel {
  Grid grid;
  Eigen::MatrixXd values;  // N x N, entry (a, b) = B(u_a, u_b)

  Kernel(Grid g, Eigen::MatrixXd v) : grid(std::move(g)), values(std::move(v)) {
    require(values.rows() == grid.size() && values.cols() == grid.size(),
            "Kernel: values/grid size mismatch");
    require(values.allFinite(), "Kernel: values must be finite");
  }
};

/// Hilbert-Schmidt norm {integral integral B^2}^{1/2} by nested trapezoid.
double hs_norm(const Kernel& B);

/// Matrix of bivariate kernels, stored flattened as one
/// (p_rows*N) x (p_cols*N) matrix whose (i, j) block of size N x N is the
/// kernel at entry (i, j).
class KernelMatrix {
 public:
  KernelMatrix(Grid grid, int p_rows, int p_cols);
  KernelMatrix(Grid grid, Eigen::MatrixXd flat, int p_rows, int p_cols);

  int rows() const { return p_rows_; }
  int cols() const { return p_cols_; }
  int grid_size() const { return grid_.size(); }
  const Grid& grid() const { return grid_; }

  const Eigen::MatrixXd& flat() const { return data_; }
  Eigen::MatrixXd& flat() { return data_; }

  Eigen::Ref<const Eigen::MatrixXd> block(int i, int j) const {
    const int N = grid_.size();
    return data_.block(static_cast<Eigen::Index>(i) * N,
                       static_cast<Eigen::Index>(j) * N, N, N);
  }
  Eigen::Ref<Eigen::MatrixXd> block(int i, int j) {
    const int N = grid_.size();
    return data_.block(static_cast<Eigen::Index>(i) * N,
                       static_cast<Eigen::Index>(j) * N, N, N);
  }
  Kernel kernel(int i, int j) const { return Kernel(grid_, block(i, j)); }

  /// HS norm of every entry, as a p_rows x p_cols matrix.
  Eigen::MatrixXd entry_hs_norms() const;

  /// Frobenius aggregate {sum_ij ||B_ij||_S^2}^{1/2}.
  double hs_frobenius_norm() const;

  /// The kernel matrix (u, v) -> B(v, u)^T; realizes the negative-lag
  /// identity Sigma_{-k}(u, v) = Sigma_k(v, u)^T. Equals a plain transpose
  /// of the flattened storage.
  KernelMatrix transpose_kernel() const;

  /// Congruence transform A^T * B * A applied blockwise, A of size p x m.
  KernelMatrix congruence(const Eigen::MatrixXd& A) const;

  /// Maximum absolute blockwise asymmetry ||B(u,v) - B(v,u)^T||_max.
  double asymmetry() const;

  KernelMatrix& operator+=(const KernelMatrix& other);

 private:
  Grid grid_;
  int p_rows_, p_cols_;
  Eigen::MatrixXd data_;
};

/// p x p matrix of double integrals: entry (i, j) =
/// integral integral [M1(u,v) M2(u,v)^T]_{ij} du dv. Realizes the quadratic
/// accumulation that defines the W matrices.
Eigen::MatrixXd kernel_pointwise_transpose_product(const KernelMatrix& M1,
                                                   const KernelMatrix& M2);

/// Kernel matrix (u, v) -> integral M1(u, w) M2(v, w)^T dw. Realizes the
/// nonzero-lag operator accumulation that defines K.
KernelMatrix kernel_w_contraction(const KernelMatrix& M1,
                                  const KernelMatrix& M2);

/// Rank-one kernel f(u) g(v) from two curves on a shared grid.
Kernel outer_kernel(const Grid& grid,
                    const Eigen::Ref<const Eigen::VectorXd>& f,
                    const Eigen::Ref<const Eigen::VectorXd>& g);

}  // namespace hdfts
