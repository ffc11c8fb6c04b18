#include "mesonet/learn/svm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace mesonet::learn {
namespace {

std::vector<std::string> sorted_labels(std::span<const std::string> y) {
  std::vector<std::string> labels(y.begin(), y.end());
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  return labels;
}

struct BinarySolution {
  Eigen::VectorXd w;
  double b = 0.0;
  bool converged = false;
};

BinarySolution solve_binary(const Eigen::MatrixXd& x, const Eigen::VectorXd& sign,
                            const LinearSvmParams& p) {
  const Eigen::Index n = x.rows();
  BinarySolution s;
  s.w = Eigen::VectorXd::Zero(x.cols());
  Eigen::VectorXd alpha = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd q = x.rowwise().squaredNorm().array() + 1.0;

  for (int iter = 0; iter < p.max_iterations; ++iter) {
    double pg_max = -std::numeric_limits<double>::infinity();
    double pg_min = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < n; ++i) {
      const double g = sign(i) * (x.row(i).dot(s.w) + s.b) - 1.0;
      double pg = g;
      if (alpha(i) == 0.0) {
        pg = std::min(g, 0.0);
      } else if (alpha(i) == p.c) {
        pg = std::max(g, 0.0);
      }
      pg_max = std::max(pg_max, pg);
      pg_min = std::min(pg_min, pg);
      if (std::abs(pg) > 1e-12) {
        const double old = alpha(i);
        alpha(i) = std::clamp(old - g / q(i), 0.0, p.c);
        const double step = (alpha(i) - old) * sign(i);
        s.w += step * x.row(i).transpose();
        s.b += step;
      }
    }
    if (pg_max - pg_min <= p.tolerance) {
      s.converged = true;
      break;
    }
  }
  return s;
}

}  // namespace

Eigen::VectorXd LinearSvm::decision_values(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  if (x.size() != weights_.cols()) throw std::invalid_argument("feature count mismatch");
  return weights_ * x + bias_;
}

std::string LinearSvm::predict(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  Eigen::VectorXd scores = decision_values(x);
  Eigen::Index best = 0;
  for (Eigen::Index k = 1; k < scores.size(); ++k) {
    if (scores(k) > scores(best)) best = k;
  }
  return labels_[static_cast<std::size_t>(best)];
}

LinearSvm train_linear_svm(const Eigen::MatrixXd& x, std::span<const std::string> y,
                           const LinearSvmParams& params) {
  if (static_cast<std::size_t>(x.rows()) != y.size()) {
    throw std::invalid_argument("row and label counts differ");
  }
  if (!x.allFinite()) throw std::invalid_argument("features must be finite");
  if (!(params.c > 0.0)) throw std::invalid_argument("C must be positive");
  LinearSvm model;
  model.labels_ = sorted_labels(y);
  if (model.labels_.size() < 2) throw std::invalid_argument("SVM training needs at least two classes");

  const auto k = static_cast<Eigen::Index>(model.labels_.size());
  model.weights_.resize(k, x.cols());
  model.bias_.resize(k);
  for (Eigen::Index c = 0; c < k; ++c) {
    Eigen::VectorXd sign(x.rows());
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
      sign(i) = y[static_cast<std::size_t>(i)] == model.labels_[static_cast<std::size_t>(c)] ? 1.0 : -1.0;
    }
    BinarySolution s = solve_binary(x, sign, params);
    model.weights_.row(c) = s.w.transpose();
    model.bias_(c) = s.b;
    model.converged_ = model.converged_ && s.converged;
  }
  return model;
}

}  // namespace mesonet::learn
