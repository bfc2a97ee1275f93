#include "hdfts/basis.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace hdfts {

Eigen::MatrixXd fourier_basis(const Grid& grid, int dim) {
  require(dim >= 1, "fourier_basis: dim must be positive");
  const int N = grid.size();
  const auto& u = grid.points();
  Eigen::MatrixXd out(N, dim);
  out.col(0).setOnes();
  const double root2 = std::sqrt(2.0);
  for (int j = 1; j < dim; ++j) {
    const int freq = (j + 1) / 2;
    const Eigen::ArrayXd arg = 2.0 * M_PI * freq * u.array();
    out.col(j) = (j % 2 == 1) ? (root2 * arg.sin()).matrix()
                              : (root2 * arg.cos()).matrix();
  }
  return out;
}

Eigen::MatrixXd fourier_project(const Grid& grid,
                                const Eigen::Ref<const Eigen::MatrixXd>& curves,
                                int basis_dim) {
  require(curves.rows() == grid.size(), "fourier_project: grid mismatch");
  require(basis_dim <= grid.size(),
          "fourier_project: basis dimension exceeds grid size");
  const Eigen::MatrixXd phi = fourier_basis(grid, basis_dim);
  const auto& w = grid.weights();
  // Weighted least squares = discretized L2 projection.
  const Eigen::MatrixXd gram = phi.transpose() * w.asDiagonal() * phi;
  const Eigen::MatrixXd coef =
      gram.ldlt().solve(phi.transpose() * (w.asDiagonal() * curves));
  return phi * coef;
}

}  // namespace hdfts
