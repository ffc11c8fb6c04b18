#include "mesonet/learn/model.hpp"

namespace mesonet::learn {

std::string_view model_kind_name(ModelKind kind) {
  return kind == ModelKind::linear_svm ? "svm" : "rf";
}

ModelKind TrainedModel::kind() const {
  return std::holds_alternative<LinearSvm>(model_) ? ModelKind::linear_svm
                                                   : ModelKind::random_forest;
}

const std::vector<std::string>& TrainedModel::labels() const {
  return std::visit([](const auto& m) -> const std::vector<std::string>& { return m.labels(); },
                    model_);
}

std::string TrainedModel::predict(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  return std::visit([&](const auto& m) { return m.predict(x); }, model_);
}

Trainer svm_trainer(LinearSvmParams params) {
  return [params](const Eigen::MatrixXd& x, std::span<const std::string> y) {
    return TrainedModel(train_linear_svm(x, y, params));
  };
}

Trainer forest_trainer(std::vector<std::string> feature_names, ForestParams params) {
  return [names = std::move(feature_names), params](const Eigen::MatrixXd& x,
                                                    std::span<const std::string> y) {
    return TrainedModel(train_random_forest(x, y, names, params));
  };
}

}  // namespace mesonet::learn
