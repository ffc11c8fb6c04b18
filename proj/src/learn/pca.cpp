#include "mesonet/learn/pca.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace mesonet::learn {

PcaResult pca(const Eigen::MatrixXd& x, Eigen::Index n) {
  const Eigen::Index rows = x.rows();
  const Eigen::Index cols = x.cols();
  if (rows < 2) throw std::invalid_argument("pca needs at least two rows");
  if (n < 1 || n > std::min(rows - 1, cols)) {
    throw std::invalid_argument("pca: n_components must be in [1, min(rows - 1, cols)]");
  }
  if (!x.allFinite()) throw std::invalid_argument("pca: non-finite input");

  Eigen::MatrixXd centered = x.rowwise() - x.colwise().mean();
  Eigen::MatrixXd cov = (centered.transpose() * centered) / static_cast<double>(rows - 1);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
  if (solver.info() != Eigen::Success) throw std::runtime_error("pca: eigendecomposition failed");

  // Eigen returns ascending eigenvalues.
  const Eigen::VectorXd& values = solver.eigenvalues();
  const Eigen::MatrixXd& vectors = solver.eigenvectors();
  const double total = std::max(0.0, cov.trace());

  PcaResult out;
  out.components.resize(cols, n);
  out.eigenvalues.resize(n);
  out.explained_variance_ratio.resize(n);
  for (Eigen::Index c = 0; c < n; ++c) {
    Eigen::Index src = cols - 1 - c;
    Eigen::VectorXd v = vectors.col(src);
    Eigen::Index arg = 0;
    for (Eigen::Index i = 1; i < cols; ++i) {
      if (std::abs(v(i)) > std::abs(v(arg))) arg = i;
    }
    if (v(arg) < 0) v = -v;
    out.components.col(c) = v;
    double lambda = std::max(0.0, values(src));
    out.eigenvalues(c) = lambda;
    out.explained_variance_ratio(c) = total > 0 ? lambda / total : 0.0;
  }
  out.scores = centered * out.components;
  return out;
}

double silhouette_score(const Eigen::MatrixXd& points, std::span<const std::string> labels) {
  const auto n = static_cast<std::size_t>(points.rows());
  if (labels.size() != n) throw std::invalid_argument("silhouette: label count differs from rows");
  std::map<std::string, std::vector<std::size_t>> clusters;
  for (std::size_t i = 0; i < n; ++i) clusters[labels[i]].push_back(i);
  if (clusters.size() < 2) throw std::invalid_argument("silhouette needs at least two clusters");

  auto dist = [&](std::size_t a, std::size_t b) {
    return (points.row(static_cast<Eigen::Index>(a)) - points.row(static_cast<Eigen::Index>(b))).norm();
  };
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& own = clusters[labels[i]];
    if (own.size() < 2) continue;
    double a = 0.0;
    for (auto j : own)
      if (j != i) a += dist(i, j);
    a /= static_cast<double>(own.size() - 1);
    double b = INFINITY;
    for (const auto& [label, members] : clusters) {
      if (label == labels[i]) continue;
      double d = 0.0;
      for (auto j : members) d += dist(i, j);
      b = std::min(b, d / static_cast<double>(members.size()));
    }
    double m = std::max(a, b);
    sum += m > 0 ? (b - a) / m : 0.0;
  }
  return sum / static_cast<double>(n);
}

}  // namespace mesonet::learn
