#pragma once

#include <Eigen/Core>
#include <memory>
#include <stdexcept>

namespace hdfts {

/// Uniform evaluation grid on [0,1], endpoints included. Carries the
/// trapezoidal quadrature weights used for every integral in the library.
/// Copies are cheap (shared immutable state).
class Grid {
 public:
  explicit Grid(int n_points);

  /// Builds a grid from explicit abscissae. The points must be strictly
  /// increasing and uniformly spaced to within 1e-12 relative tolerance.
  static Grid from_points(const Eigen::VectorXd& points);

  int size() const { return static_cast<int>(data_->points.size()); }
  double spacing() const { return data_->spacing; }
  const Eigen::VectorXd& points() const { return data_->points; }
  const Eigen::VectorXd& weights() const { return data_->weights; }
  /// Elementwise square roots of the weights (symmetric operator embeddings).
  const Eigen::VectorXd& sqrt_weights() const { return data_->sqrt_weights; }

  bool same_as(const Grid& other) const;

 private:
  struct Data {
    Eigen::VectorXd points;
    Eigen::VectorXd weights;
    Eigen::VectorXd sqrt_weights;
    double spacing = 0.0;
  };
  explicit Grid(std::shared_ptr<const Data> d) : data_(std::move(d)) {}
  static std::shared_ptr<const Data> make(const Eigen::VectorXd& pts);

  std::shared_ptr<const Data> data_;
};

/// Trapezoidal approximation of the integral of f over the grid domain.
/// Exact for constants and affine functions on uniform grids.
double integrate(const Eigen::Ref<const Eigen::VectorXd>& values_at_grid,
                 const Grid& grid);

void require(bool condition, const char* message);

}  // namespace hdfts
