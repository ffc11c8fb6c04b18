#ifndef MESONET_LEARN_FOREST_HPP
#define MESONET_LEARN_FOREST_HPP

#include <Eigen/Dense>

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace mesonet::learn {

struct ForestParams {
  int n_trees = 50;
  std::uint64_t seed = 0;
};

// Bagged CART trees with Gini splits.
//
// Every random choice is keyed by (seed, tree, node path, feature name), never
// by column position, so permuting the feature columns (with their names)
// yields the same forest.
class RandomForest {
 public:
  struct Node {
    int feature = -1;  // -1 marks a leaf
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    int label = 0;  // leaf prediction, index into labels()
  };
  using Tree = std::vector<Node>;

  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<Tree>& trees() const { return trees_; }

  // Vote count per label.
  std::vector<int> votes(const Eigen::Ref<const Eigen::VectorXd>& x) const;
  // Majority vote; ties go to the smaller label.
  std::string predict(const Eigen::Ref<const Eigen::VectorXd>& x) const;

 private:
  friend RandomForest train_random_forest(const Eigen::MatrixXd&, std::span<const std::string>,
                                          std::span<const std::string>, const ForestParams&);
  std::vector<std::string> labels_;
  std::vector<Tree> trees_;
  std::size_t feature_count_ = 0;
};

// Each tree is grown on a bootstrap sample until its leaves are pure or hold
// fewer than two samples. At each node floor(sqrt(features)) candidates (at
// least 1) are examined; if none of them can split the node, further features
// are tried. When `feature_names` is empty, "f<index>" is used.
RandomForest train_random_forest(const Eigen::MatrixXd& x, std::span<const std::string> y,
                                 std::span<const std::string> feature_names = {},
                                 const ForestParams& params = {});

}  // namespace mesonet::learn

#endif  // MESONET_LEARN_FOREST_HPP
