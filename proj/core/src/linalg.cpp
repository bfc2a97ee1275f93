#include "hdfts/linalg.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace hdfts {

namespace {

// Largest-magnitude component positive; ties go to the lowest index.
void fix_signs(Eigen::MatrixXd& vectors) {
  for (Eigen::Index j = 0; j < vectors.cols(); ++j) {
    Eigen::Index arg = 0;
    double best = -1.0;
    for (Eigen::Index i = 0; i < vectors.rows(); ++i) {
      const double a = std::abs(vectors(i, j));
      if (a > best) {  // strict: ties keep the lowest index
        best = a;
        arg = i;
      }
    }
    if (vectors(arg, j) < 0.0) vectors.col(j) = -vectors.col(j);
  }
}

}  // namespace

SymEigen sym_eigen(const Eigen::Ref<const Eigen::MatrixXd>& S) {
  require(S.rows() == S.cols(), "sym_eigen: matrix must be square");
  const double scale = std::max(1.0, S.cwiseAbs().maxCoeff());
  require((S - S.transpose()).cwiseAbs().maxCoeff() <= 1e-10 * scale,
          "sym_eigen: matrix is not symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
      0.5 * (S + S.transpose()));
  require(solver.info() == Eigen::Success, "sym_eigen: solver failed");
  SymEigen out;
  out.values = solver.eigenvalues().reverse();
  out.vectors = solver.eigenvectors().rowwise().reverse();
  fix_signs(out.vectors);
  return out;
}

Eigen::MatrixXd inv_sqrt(const Eigen::Ref<const Eigen::MatrixXd>& S,
                         double floor) {
  SymEigen eig = sym_eigen(S);
  const double lam_max = eig.values.size() > 0 ? eig.values[0] : 0.0;
  if (floor < 0.0) floor = 1e-10 * std::max(lam_max, 1e-300);
  if (floor <= 0.0) floor = 1e-300;
  Eigen::VectorXd inv = eig.values.cwiseMax(floor).cwiseSqrt().cwiseInverse();
  Eigen::MatrixXd out = eig.vectors * inv.asDiagonal() * eig.vectors.transpose();
  return 0.5 * (out + out.transpose());
}

Eigen::MatrixXd sqrt_psd(const Eigen::Ref<const Eigen::MatrixXd>& S) {
  SymEigen eig = sym_eigen(S);
  Eigen::VectorXd root = eig.values.cwiseMax(0.0).cwiseSqrt();
  Eigen::MatrixXd out = eig.vectors * root.asDiagonal() * eig.vectors.transpose();
  return 0.5 * (out + out.transpose());
}

KernelEigen kernel_sym_eigen(const KernelMatrix& K, double tol) {
  require(K.rows() == K.cols(), "kernel_sym_eigen: kernel matrix must be square");
  const double scale = std::max(1.0, K.flat().cwiseAbs().maxCoeff());
  require(K.asymmetry() <= tol * scale,
          "kernel_sym_eigen: kernel matrix is not symmetric");

  const int N = K.grid_size();
  const int p = K.rows();
  const auto& sw = K.grid().sqrt_weights();
  Eigen::VectorXd scale_vec(static_cast<Eigen::Index>(p) * N);
  for (int i = 0; i < p; ++i)
    scale_vec.segment(static_cast<Eigen::Index>(i) * N, N) = sw;

  // Weight-scaled symmetric embedding: B = W^{1/2} K W^{1/2}.
  Eigen::MatrixXd B = scale_vec.asDiagonal() * K.flat() * scale_vec.asDiagonal();
  B = 0.5 * (B + B.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(B);
  require(solver.info() == Eigen::Success, "kernel_sym_eigen: solver failed");

  KernelEigen out;
  out.values = solver.eigenvalues().reverse();
  Eigen::MatrixXd coeff = solver.eigenvectors().rowwise().reverse();
  fix_signs(coeff);
  out.functions = scale_vec.cwiseInverse().asDiagonal() * coeff;
  return out;
}

}  // namespace hdfts
