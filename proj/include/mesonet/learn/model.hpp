#ifndef MESONET_LEARN_MODEL_HPP
#define MESONET_LEARN_MODEL_HPP

#include <Eigen/Dense>

#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mesonet/learn/forest.hpp"
#include "mesonet/learn/svm.hpp"

namespace mesonet::learn {

enum class ModelKind { linear_svm, random_forest };

std::string_view model_kind_name(ModelKind kind);

class TrainedModel {
 public:
  explicit TrainedModel(LinearSvm svm) : model_(std::move(svm)) {}
  explicit TrainedModel(RandomForest forest) : model_(std::move(forest)) {}

  ModelKind kind() const;
  const std::vector<std::string>& labels() const;
  std::string predict(const Eigen::Ref<const Eigen::VectorXd>& x) const;

  const LinearSvm* svm() const { return std::get_if<LinearSvm>(&model_); }
  const RandomForest* forest() const { return std::get_if<RandomForest>(&model_); }

 private:
  std::variant<LinearSvm, RandomForest> model_;
};

// Fits a model on already-standardized rows.
using Trainer = std::function<TrainedModel(const Eigen::MatrixXd&, std::span<const std::string>)>;

Trainer svm_trainer(LinearSvmParams params = {});
Trainer forest_trainer(std::vector<std::string> feature_names, ForestParams params = {});

}  // namespace mesonet::learn

#endif  // MESONET_LEARN_MODEL_HPP
