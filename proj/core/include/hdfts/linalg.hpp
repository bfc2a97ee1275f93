#pragma once

#include <Eigen/Core>

#include "hdfts/kernel.hpp"

namespace hdfts {

struct SymEigen {
  Eigen::VectorXd values;   // descending
  Eigen::MatrixXd vectors;  // orthonormal columns, sign-fixed
};

/// Eigendecomposition of a symmetric matrix with deterministic output:
/// eigenvalues descending, each eigenvector's largest-magnitude component
/// made positive (ties broken by lowest index). Throws if S is not symmetric
/// within 1e-10 (relative to its magnitude).
SymEigen sym_eigen(const Eigen::Ref<const Eigen::MatrixXd>& S);

/// S^{-1/2} for symmetric positive semi-definite S: eigenvalues below
/// `floor` are clamped to `floor` before inversion. A negative `floor`
/// requests the default 1e-10 * lambda_max.
Eigen::MatrixXd inv_sqrt(const Eigen::Ref<const Eigen::MatrixXd>& S,
                         double floor = -1.0);

/// S^{1/2} for symmetric PSD S; negative eigenvalues are clamped to zero.
Eigen::MatrixXd sqrt_psd(const Eigen::Ref<const Eigen::MatrixXd>& S);

struct KernelEigen {
  Eigen::VectorXd values;  // descending
  /// Column j holds the flattened vector-valued eigenfunction psi_j
  /// (p curves stacked, length p*N), orthonormal under the summed L2
  /// inner product.
  Eigen::MatrixXd functions;
};

/// Spectral decomposition of a symmetric kernel matrix operator. The operator
/// is discretized with a weight-scaled symmetric embedding so eigenvalues stay
/// real and ordered. Throws if blockwise asymmetry exceeds `tol` relative to
/// the kernel magnitude.
KernelEigen kernel_sym_eigen(const KernelMatrix& K, double tol = 1e-8);

}  // namespace hdfts
