#pragma once

#include <Eigen/Core>

#include "hdfts/grid.hpp"

namespace hdfts {

/// Standard Fourier system on [0,1] evaluated on the grid: the constant
/// function followed by sqrt(2) sin / sqrt(2) cos pairs at increasing
/// frequency. Returns an N x dim matrix, one basis function per column.
Eigen::MatrixXd fourier_basis(const Grid& grid, int dim);

/// L2 projection of each column of `curves` (N x count) onto the span of the
/// first `basis_dim` Fourier functions, re-evaluated on the grid.
Eigen::MatrixXd fourier_project(const Grid& grid,
                                const Eigen::Ref<const Eigen::MatrixXd>& curves,
                                int basis_dim);

}  // namespace hdfts
