#pragma once

#include <Eigen/Core>
#include <vector>

#include "hdfts/grid.hpp"

namespace hdfts {

/// A single function sampled on a grid.
struct Curve {
  Grid grid;
  Eigen::VectorXd values;

  Curve(Grid g, Eigen::VectorXd v) : grid(std::move(g)), values(std::move(v)) {
    require(values.size() == grid.size(), "Curve: values/grid size mismatch");
    require(values.allFinite(), "Curve: values must be finite");
  }
};

double inner_product(const Curve& f, const Curve& g);

/// Panel of n time points by p series of curves on a shared grid.
///
/// Storage is one (p*N) x n column-major matrix: column t holds the p curves
/// at time t stacked series-by-series (index i*N + a for series i, abscissa a).
/// This layout turns autocovariance estimation and linear transformations of
/// the cross-section into dense GEMMs.
class CurvePanel {
 public:
  CurvePanel(Grid grid, int n, int p);
  CurvePanel(Grid grid, Eigen::MatrixXd flat, int p);

  int n() const { return static_cast<int>(data_.cols()); }
  int p() const { return p_; }
  int grid_size() const { return grid_.size(); }
  const Grid& grid() const { return grid_; }

  /// Full flattened storage, (p*N) x n.
  const Eigen::MatrixXd& flat() const { return data_; }
  Eigen::MatrixXd& flat() { return data_; }

  /// View of curve (t, j) as an N-vector.
  Eigen::Ref<const Eigen::VectorXd> values(int t, int j) const {
    return data_.col(t).segment(static_cast<Eigen::Index>(j) * grid_.size(),
                                grid_.size());
  }
  Eigen::Ref<Eigen::VectorXd> values(int t, int j) {
    return data_.col(t).segment(static_cast<Eigen::Index>(j) * grid_.size(),
                                grid_.size());
  }
  Curve curve(int t, int j) const { return Curve(grid_, values(t, j)); }

  /// First `count` time points starting at `first` as a new panel.
  CurvePanel window(int first, int count) const;
  /// Panel restricted to the given series, in the given order.
  CurvePanel select_series(const std::vector<int>& series) const;

  /// Panel with cross-sections mapped by `transform^T`, i.e. the output
  /// series j at time t is sum_i transform(i, j) * input series i.
  CurvePanel transformed_by(const Eigen::MatrixXd& transform) const;

  /// Mean curve of each series over all time points, flattened to length p*N.
  Eigen::VectorXd mean_flat() const;

 private:
  Grid grid_;
  int p_;
  Eigen::MatrixXd data_;
};

/// Applies `map` (p_out x p) to a flattened cross-section (p*N vector),
/// returning the flattened p_out*N result.
Eigen::VectorXd apply_cross_section_map(const Eigen::MatrixXd& map,
                                        const Eigen::Ref<const Eigen::VectorXd>& flat,
                                        int grid_size);

}  // namespace hdfts
