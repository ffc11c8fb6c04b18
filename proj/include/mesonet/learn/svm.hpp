#ifndef MESONET_LEARN_SVM_HPP
#define MESONET_LEARN_SVM_HPP

#include <Eigen/Dense>

#include <span>
#include <string>
#include <vector>

namespace mesonet::learn {

struct LinearSvmParams {
  double c = 1.0;
  double tolerance = 1e-4;
  int max_iterations = 10000;
};

// One-vs-rest linear SVM. Each class gets a hyperplane minimizing
//   1/2 |w|^2 + C * sum_i max(0, 1 - y_i (w.x_i + b)),
// with the bias learned as the weight of a constant feature.
class LinearSvm {
 public:
  const std::vector<std::string>& labels() const { return labels_; }
  const Eigen::MatrixXd& weights() const { return weights_; }  // classes x features
  const Eigen::VectorXd& bias() const { return bias_; }
  bool converged() const { return converged_; }

  Eigen::VectorXd decision_values(const Eigen::Ref<const Eigen::VectorXd>& x) const;
  // argmax of the decision values; ties go to the smaller label.
  std::string predict(const Eigen::Ref<const Eigen::VectorXd>& x) const;

 private:
  friend LinearSvm train_linear_svm(const Eigen::MatrixXd&, std::span<const std::string>,
                                    const LinearSvmParams&);
  std::vector<std::string> labels_;
  Eigen::MatrixXd weights_;
  Eigen::VectorXd bias_;
  bool converged_ = true;
};

// Dual coordinate descent over the samples in index order; a class's solve
// stops once the spread of projected gradients drops below `tolerance`.
// Throws std::invalid_argument for fewer than two classes, a row/label count
// mismatch, or non-finite features.
LinearSvm train_linear_svm(const Eigen::MatrixXd& x, std::span<const std::string> y,
                           const LinearSvmParams& params = {});

}  // namespace mesonet::learn

#endif  // MESONET_LEARN_SVM_HPP
