#include "mesonet/learn/forest.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

namespace mesonet::learn {
namespace {

std::uint64_t mix(std::uint64_t z) {
  // splitmix64 finalizer
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t hash_name(std::string_view name) {
  std::uint64_t h = 0xCBF29CE484222325ULL;  // FNV-1a
  for (unsigned char c : name) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return mix(h);
}

struct Split {
  bool valid = false;
  int feature = -1;
  double threshold = 0.0;
  double score = 0.0;  // sum_c n_c^2 / n over both children; larger is purer
};

class TreeBuilder {
 public:
  TreeBuilder(const Eigen::MatrixXd& x, const std::vector<int>& y, std::size_t classes,
              const std::vector<std::uint64_t>& name_hashes,
              const std::vector<std::string>& names)
      : x_(x), y_(y), classes_(classes), name_hashes_(name_hashes), names_(names) {
    candidates_ = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(x.cols())))));
  }

  RandomForest::Tree build(std::vector<int> samples, std::uint64_t root_key) {
    RandomForest::Tree tree;
    grow(tree, samples, root_key);
    return tree;
  }

 private:
  int grow(RandomForest::Tree& tree, std::vector<int>& samples, std::uint64_t key) {
    const int index = static_cast<int>(tree.size());
    tree.emplace_back();

    std::vector<int> counts(classes_, 0);
    for (int s : samples) ++counts[static_cast<std::size_t>(y_[static_cast<std::size_t>(s)])];
    int majority = 0;
    for (std::size_t c = 1; c < classes_; ++c) {
      if (counts[c] > counts[static_cast<std::size_t>(majority)]) majority = static_cast<int>(c);
    }
    tree[static_cast<std::size_t>(index)].label = majority;
    const bool pure = counts[static_cast<std::size_t>(majority)] == static_cast<int>(samples.size());
    if (pure || samples.size() < 2) return index;

    Split split = best_split(samples, key);
    if (!split.valid) return index;

    std::vector<int> left, right;
    for (int s : samples) {
      (x_(s, split.feature) <= split.threshold ? left : right).push_back(s);
    }
    samples.clear();
    samples.shrink_to_fit();
    tree[static_cast<std::size_t>(index)].feature = split.feature;
    tree[static_cast<std::size_t>(index)].threshold = split.threshold;
    int l = grow(tree, left, mix(key ^ 0x1ULL));
    int r = grow(tree, right, mix(key ^ 0x2ULL));
    tree[static_cast<std::size_t>(index)].left = l;
    tree[static_cast<std::size_t>(index)].right = r;
    return index;
  }

  Split best_split(const std::vector<int>& samples, std::uint64_t key) {
    const auto d = static_cast<std::size_t>(x_.cols());
    std::vector<std::pair<std::uint64_t, std::size_t>> order(d);
    for (std::size_t f = 0; f < d; ++f) order[f] = {mix(key ^ name_hashes_[f]), f};
    std::sort(order.begin(), order.end(), [&](const auto& a, const auto& b) {
      if (a.first != b.first) return a.first < b.first;
      return names_[a.second] < names_[b.second];
    });

    Split best;
    std::size_t examined = 0;
    for (const auto& [k, f] : order) {
      if (examined >= candidates_ && best.valid) break;
      ++examined;
      Split s = best_split_on(samples, static_cast<int>(f));
      if (s.valid && (!best.valid || s.score > best.score)) best = s;
    }
    return best;
  }

  Split best_split_on(const std::vector<int>& samples, int feature) {
    std::vector<std::pair<double, int>> values;
    values.reserve(samples.size());
    for (int s : samples) values.emplace_back(x_(s, feature), y_[static_cast<std::size_t>(s)]);
    std::sort(values.begin(), values.end());

    std::vector<double> left(classes_, 0.0), right(classes_, 0.0);
    for (const auto& [v, c] : values) right[static_cast<std::size_t>(c)] += 1.0;
    double left_sq = 0.0, right_sq = 0.0;
    for (double r : right) right_sq += r * r;

    Split best;
    const double n = static_cast<double>(values.size());
    for (std::size_t i = 0; i + 1 < values.size(); ++i) {
      const auto c = static_cast<std::size_t>(values[i].second);
      left_sq += 2.0 * left[c] + 1.0;
      left[c] += 1.0;
      right_sq -= 2.0 * right[c] - 1.0;
      right[c] -= 1.0;
      if (values[i].first == values[i + 1].first) continue;
      const double nl = static_cast<double>(i + 1);
      const double score = left_sq / nl + right_sq / (n - nl);
      if (!best.valid || score > best.score) {
        best.valid = true;
        best.feature = feature;
        best.score = score;
        best.threshold = values[i].first + (values[i + 1].first - values[i].first) / 2.0;
      }
    }
    return best;
  }

  const Eigen::MatrixXd& x_;
  const std::vector<int>& y_;
  std::size_t classes_;
  const std::vector<std::uint64_t>& name_hashes_;
  const std::vector<std::string>& names_;
  std::size_t candidates_ = 1;
};

}  // namespace

std::vector<int> RandomForest::votes(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  if (static_cast<std::size_t>(x.size()) != feature_count_) {
    throw std::invalid_argument("feature count mismatch");
  }
  std::vector<int> counts(labels_.size(), 0);
  for (const auto& tree : trees_) {
    int node = 0;
    while (tree[static_cast<std::size_t>(node)].feature >= 0) {
      const auto& nd = tree[static_cast<std::size_t>(node)];
      node = x(nd.feature) <= nd.threshold ? nd.left : nd.right;
    }
    ++counts[static_cast<std::size_t>(tree[static_cast<std::size_t>(node)].label)];
  }
  return counts;
}

std::string RandomForest::predict(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  auto counts = votes(x);
  auto best = std::max_element(counts.begin(), counts.end());  // first max = smaller label
  return labels_[static_cast<std::size_t>(best - counts.begin())];
}

RandomForest train_random_forest(const Eigen::MatrixXd& x, std::span<const std::string> y,
                                 std::span<const std::string> feature_names,
                                 const ForestParams& params) {
  if (static_cast<std::size_t>(x.rows()) != y.size()) {
    throw std::invalid_argument("row and label counts differ");
  }
  if (!x.allFinite()) throw std::invalid_argument("features must be finite");
  if (params.n_trees < 1) throw std::invalid_argument("a forest needs at least one tree");
  if (!feature_names.empty() && feature_names.size() != static_cast<std::size_t>(x.cols())) {
    throw std::invalid_argument("feature name count mismatch");
  }

  RandomForest forest;
  forest.labels_.assign(y.begin(), y.end());
  std::sort(forest.labels_.begin(), forest.labels_.end());
  forest.labels_.erase(std::unique(forest.labels_.begin(), forest.labels_.end()),
                       forest.labels_.end());
  if (forest.labels_.size() < 2) {
    throw std::invalid_argument("random forest training needs at least two classes");
  }
  forest.feature_count_ = static_cast<std::size_t>(x.cols());

  std::vector<int> codes(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    codes[i] = static_cast<int>(
        std::lower_bound(forest.labels_.begin(), forest.labels_.end(), y[i]) -
        forest.labels_.begin());
  }
  std::vector<std::string> names;
  for (std::size_t f = 0; f < forest.feature_count_; ++f) {
    names.push_back(feature_names.empty() ? "f" + std::to_string(f) : feature_names[f]);
  }
  std::vector<std::uint64_t> hashes;
  for (const auto& name : names) hashes.push_back(hash_name(name));

  TreeBuilder builder(x, codes, forest.labels_.size(), hashes, names);
  const auto n = static_cast<std::uint64_t>(x.rows());
  for (int t = 0; t < params.n_trees; ++t) {
    const std::uint64_t tree_key = mix(params.seed ^ mix(static_cast<std::uint64_t>(t) + 1));
    std::mt19937_64 rng(tree_key);
    std::vector<int> sample(static_cast<std::size_t>(n));
    for (auto& s : sample) {
      s = static_cast<int>((static_cast<unsigned __int128>(rng()) * n) >> 64);
    }
    forest.trees_.push_back(builder.build(std::move(sample), mix(tree_key ^ 0xA5A5A5A5ULL)));
  }
  return forest;
}

}  // namespace mesonet::learn
