#include "hdfts/grid.hpp"

#include <cmath>

namespace hdfts {

void require(bool condition, const char* message) {
  if (!condition) throw std::invalid_argument(message);
}

std::shared_ptr<const Grid::Data> Grid::make(const Eigen::VectorXd& pts) {
  const int n = static_cast<int>(pts.size());
  require(n >= 2, "Grid: need at least 2 points");
  const double h = (pts[n - 1] - pts[0]) / (n - 1);
  require(h > 0.0, "Grid: points must be increasing");
  const double span = std::abs(pts[n - 1] - pts[0]);
  for (int i = 0; i + 1 < n; ++i) {
    require(pts[i + 1] > pts[i], "Grid: points must be strictly increasing");
    if (std::abs((pts[i + 1] - pts[i]) - h) > 1e-12 * span)
      throw std::invalid_argument("Grid: spacing not uniform");
  }
  auto d = std::make_shared<Data>();
  d->points = pts;
  d->spacing = h;
  d->weights = Eigen::VectorXd::Constant(n, h);
  d->weights[0] = h / 2.0;
  d->weights[n - 1] = h / 2.0;
  d->sqrt_weights = d->weights.cwiseSqrt();
  return d;
}

Grid::Grid(int n_points)
    : data_(make(Eigen::VectorXd::LinSpaced(
          (require(n_points >= 2, "Grid: need at least 2 points"), n_points),
          0.0, 1.0))) {}

Grid Grid::from_points(const Eigen::VectorXd& points) {
  return Grid(make(points));
}

bool Grid::same_as(const Grid& other) const {
  if (data_ == other.data_) return true;
  if (size() != other.size()) return false;
  return (points() - other.points()).cwiseAbs().maxCoeff() <=
         1e-12 * std::max(1.0, points().cwiseAbs().maxCoeff());
}

double integrate(const Eigen::Ref<const Eigen::VectorXd>& values_at_grid,
                 const Grid& grid) {
  require(values_at_grid.size() == grid.size(),
          "integrate: length does not match grid");
  return grid.weights().dot(values_at_grid);
}

}  // namespace hdfts
