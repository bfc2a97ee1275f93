#include "hdfts/curve.hpp"

namespace hdfts {

double inner_product(const Curve& f, const Curve& g) {
  require(f.grid.same_as(g.grid), "inner_product: grids differ");
  return f.grid.weights().dot(f.values.cwiseProduct(g.values).matrix());
}

CurvePanel::CurvePanel(Grid grid, int n, int p)
    : grid_(std::move(grid)),
      p_(p),
      data_(Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(p) * grid_.size(), n)) {
  require(n >= 1 && p >= 1, "CurvePanel: need n >= 1, p >= 1");
}

CurvePanel::CurvePanel(Grid grid, Eigen::MatrixXd flat, int p)
    : grid_(std::move(grid)), p_(p), data_(std::move(flat)) {
  require(p >= 1, "CurvePanel: need p >= 1");
  require(data_.rows() == static_cast<Eigen::Index>(p) * grid_.size(),
          "CurvePanel: flat storage has wrong row count");
  require(data_.cols() >= 1, "CurvePanel: need n >= 1");
  require(data_.allFinite(), "CurvePanel: values must be finite");
}

CurvePanel CurvePanel::window(int first, int count) const {
  require(first >= 0 && count >= 1 && first + count <= n(),
          "CurvePanel::window: out of range");
  return CurvePanel(grid_, data_.middleCols(first, count), p_);
}

CurvePanel CurvePanel::select_series(const std::vector<int>& series) const {
  require(!series.empty(), "CurvePanel::select_series: empty selection");
  const int N = grid_.size();
  Eigen::MatrixXd out(static_cast<Eigen::Index>(series.size()) * N, n());
  for (std::size_t k = 0; k < series.size(); ++k) {
    require(series[k] >= 0 && series[k] < p_,
            "CurvePanel::select_series: index out of range");
    out.middleRows(static_cast<Eigen::Index>(k) * N, N) =
        data_.middleRows(static_cast<Eigen::Index>(series[k]) * N, N);
  }
  return CurvePanel(grid_, std::move(out), static_cast<int>(series.size()));
}

CurvePanel CurvePanel::transformed_by(const Eigen::MatrixXd& transform) const {
  require(transform.rows() == p_, "CurvePanel::transformed_by: dim mismatch");
  const int N = grid_.size();
  const int p_out = static_cast<int>(transform.cols());
  Eigen::MatrixXd out(static_cast<Eigen::Index>(p_out) * N, n());
  // Per grid abscissa, one GEMM over all time points.
  for (int a = 0; a < N; ++a) {
    out(Eigen::seqN(a, p_out, N), Eigen::all) =
        transform.transpose() * data_(Eigen::seqN(a, p_, N), Eigen::all);
  }
  return CurvePanel(grid_, std::move(out), p_out);
}

Eigen::VectorXd CurvePanel::mean_flat() const { return data_.rowwise().mean(); }

Eigen::VectorXd apply_cross_section_map(const Eigen::MatrixXd& map,
                                        const Eigen::Ref<const Eigen::VectorXd>& flat,
                                        int grid_size) {
  const int p_in = static_cast<int>(map.cols());
  const int p_out = static_cast<int>(map.rows());
  require(flat.size() == static_cast<Eigen::Index>(p_in) * grid_size,
          "apply_cross_section_map: dim mismatch");
  Eigen::VectorXd out(static_cast<Eigen::Index>(p_out) * grid_size);
  for (int a = 0; a < grid_size; ++a)
    out(Eigen::seqN(a, p_out, grid_size)) =
        map * flat(Eigen::seqN(a, p_in, grid_size));
  return out;
}

}  // namespace hdfts
