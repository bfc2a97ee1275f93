#include "hdfts/kernel.hpp"

#include <cmath>

namespace hdfts {

double hs_norm(const Kernel& B) {
  const auto& w = B.grid.weights();
  const double s = (w.asDiagonal() * B.values * w.asDiagonal())
                       .cwiseProduct(B.values)
                       .sum();
  return std::sqrt(std::max(0.0, s));
}

KernelMatrix::KernelMatrix(Grid grid, int p_rows, int p_cols)
    : grid_(std::move(grid)),
      p_rows_(p_rows),
      p_cols_(p_cols),
      data_(Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(p_rows) * grid_.size(),
                                  static_cast<Eigen::Index>(p_cols) * grid_.size())) {
  require(p_rows >= 1 && p_cols >= 1, "KernelMatrix: need positive dims");
}

KernelMatrix::KernelMatrix(Grid grid, Eigen::MatrixXd flat, int p_rows, int p_cols)
    : grid_(std::move(grid)), p_rows_(p_rows), p_cols_(p_cols), data_(std::move(flat)) {
  require(p_rows >= 1 && p_cols >= 1, "KernelMatrix: need positive dims");
  require(data_.rows() == static_cast<Eigen::Index>(p_rows) * grid_.size() &&
              data_.cols() == static_cast<Eigen::Index>(p_cols) * grid_.size(),
          "KernelMatrix: flat storage has wrong shape");
  require(data_.allFinite(), "KernelMatrix: values must be finite");
}

Eigen::MatrixXd KernelMatrix::entry_hs_norms() const {
  const int N = grid_.size();
  const auto& w = grid_.weights();
  Eigen::MatrixXd out(p_rows_, p_cols_);
  for (int i = 0; i < p_rows_; ++i)
    for (int j = 0; j < p_cols_; ++j) {
      const auto b = block(i, j);
      const double s =
          (w.asDiagonal() * b * w.asDiagonal()).cwiseProduct(b).sum();
      out(i, j) = std::sqrt(std::max(0.0, s));
    }
  return out;
}

double KernelMatrix::hs_frobenius_norm() const {
  return entry_hs_norms().norm();
}

KernelMatrix KernelMatrix::transpose_kernel() const {
  return KernelMatrix(grid_, data_.transpose(), p_cols_, p_rows_);
}

KernelMatrix KernelMatrix::congruence(const Eigen::MatrixXd& A) const {
  require(p_rows_ == p_cols_, "KernelMatrix::congruence: matrix must be square");
  require(A.rows() == p_rows_, "KernelMatrix::congruence: dim mismatch");
  const int N = grid_.size();
  const int m = static_cast<int>(A.cols());
  // A^T B A via the Kronecker structure (A (x) I_N): one small GEMM per
  // grid offset on each side.
  Eigen::MatrixXd left(static_cast<Eigen::Index>(m) * N, data_.cols());
  for (int a = 0; a < N; ++a)
    left(Eigen::seqN(a, m, N), Eigen::all) =
        A.transpose() * data_(Eigen::seqN(a, p_rows_, N), Eigen::all);
  Eigen::MatrixXd out(static_cast<Eigen::Index>(m) * N,
                      static_cast<Eigen::Index>(m) * N);
  for (int b = 0; b < N; ++b)
    out(Eigen::all, Eigen::seqN(b, m, N)) =
        left(Eigen::all, Eigen::seqN(b, p_cols_, N)) * A;
  return KernelMatrix(grid_, std::move(out), m, m);
}

double KernelMatrix::asymmetry() const {
  require(p_rows_ == p_cols_, "KernelMatrix::asymmetry: matrix must be square");
  return (data_ - data_.transpose()).cwiseAbs().maxCoeff();
}

KernelMatrix& KernelMatrix::operator+=(const KernelMatrix& other) {
  require(p_rows_ == other.p_rows_ && p_cols_ == other.p_cols_ &&
              grid_.same_as(other.grid_),
          "KernelMatrix::operator+=: shape mismatch");
  data_ += other.data_;
  return *this;
}

namespace {

Eigen::MatrixXd weight_scaled(const KernelMatrix& M) {
  const int N = M.grid_size();
  const auto& sw = M.grid().sqrt_weights();
  Eigen::VectorXd row_scale(M.flat().rows()), col_scale(M.flat().cols());
  for (int i = 0; i < M.rows(); ++i)
    row_scale.segment(static_cast<Eigen::Index>(i) * N, N) = sw;
  for (int j = 0; j < M.cols(); ++j)
    col_scale.segment(static_cast<Eigen::Index>(j) * N, N) = sw;
  return row_scale.asDiagonal() * M.flat() * col_scale.asDiagonal();
}

}  // namespace

Eigen::MatrixXd kernel_pointwise_transpose_product(const KernelMatrix& M1,
                                                   const KernelMatrix& M2) {
  require(M1.grid().same_as(M2.grid()),
          "kernel_pointwise_transpose_product: grids differ");
  require(M1.cols() == M2.cols(),
          "kernel_pointwise_transpose_product: inner dims differ");
  const int N = M1.grid_size();
  const Eigen::MatrixXd W1 = weight_scaled(M1);
  const Eigen::MatrixXd W2 = weight_scaled(M2);
  Eigen::MatrixXd out(M1.rows(), M2.rows());
  for (int i = 0; i < M1.rows(); ++i) {
    const auto r1 = W1.middleRows(static_cast<Eigen::Index>(i) * N, N);
    for (int j = 0; j < M2.rows(); ++j) {
      out(i, j) = r1.cwiseProduct(
                        W2.middleRows(static_cast<Eigen::Index>(j) * N, N))
                      .sum();
    }
  }
  return out;
}

KernelMatrix kernel_w_contraction(const KernelMatrix& M1,
                                  const KernelMatrix& M2) {
  require(M1.grid().same_as(M2.grid()), "kernel_w_contraction: grids differ");
  require(M1.cols() == M2.cols(), "kernel_w_contraction: inner dims differ");
  const int N = M1.grid_size();
  const auto& w = M1.grid().weights();
  Eigen::VectorXd col_scale(M1.flat().cols());
  for (int j = 0; j < M1.cols(); ++j)
    col_scale.segment(static_cast<Eigen::Index>(j) * N, N) = w;
  Eigen::MatrixXd out =
      (M1.flat() * col_scale.asDiagonal()) * M2.flat().transpose();
  return KernelMatrix(M1.grid(), std::move(out), M1.rows(), M2.rows());
}

Kernel outer_kernel(const Grid& grid,
                    const Eigen::Ref<const Eigen::VectorXd>& f,
                    const Eigen::Ref<const Eigen::VectorXd>& g) {
  require(f.size() == grid.size() && g.size() == grid.size(),
          "outer_kernel: size mismatch");
  return Kernel(grid, f * g.transpose());
}

}  // namespace hdfts
