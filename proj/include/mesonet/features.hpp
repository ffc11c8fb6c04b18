#ifndef MESONET_FEATURES_HPP
#define MESONET_FEATURES_HPP

#include <Eigen/Dense>

#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mesonet/measures.hpp"

namespace mesonet {

// Which (measurement, statistic, <k>) cells make up a feature vector.
struct FeatureGrid {
  std::vector<double> k_values;  // any order; features follow ascending k
  std::vector<NodeMeasure> measures{kAllNodeMeasures.begin(), kAllNodeMeasures.end()};
  bool assortativity = true;
};

struct FeatureVector {
  std::string book_id;
  std::string author;
  std::vector<std::pair<std::string, double>> entries;
};

// Column statistics fitted on one set of rows and reusable on others.
struct Standardizer {
  Eigen::RowVectorXd mean;
  Eigen::RowVectorXd scale;  // population std; 0 marks a constant column

  // Throws std::invalid_argument with fewer than two rows.
  static Standardizer fit(const Eigen::MatrixXd& x);
  // (x - mean) / scale per column; constant columns map to 0.
  Eigen::MatrixXd apply(const Eigen::MatrixXd& x) const;
};

struct DatasetMatrix {
  std::vector<std::string> feature_names;
  std::vector<std::string> book_ids;
  std::vector<std::string> labels;
  Eigen::MatrixXd values;  // one row per book
  std::optional<Standardizer> standardization;

  std::size_t rows() const { return static_cast<std::size_t>(values.rows()); }
  std::size_t cols() const { return static_cast<std::size_t>(values.cols()); }
};

// Feature names for a grid, in vector order. Per <k> block:
//   k<k>.degree.{std,skewness}            (the mean is fixed by pruning)
//   k<k>.<measure>.{mean,std,skewness}    for every other per-node measure
//   k<k>.assortativity
std::vector<std::string> feature_names(const FeatureGrid& grid);

// Throws Error when a k of the grid has no table.
FeatureVector book_features(const std::map<double, NodeMeasureTable>& tables,
                            const FeatureGrid& grid, std::string book_id = {},
                            std::string author = {});

// Stacks feature vectors; throws Error if their names differ or a value is
// not finite.
DatasetMatrix assemble_dataset(std::span<const FeatureVector> books);

// Z-scores every column with statistics fitted on the matrix itself and
// records them in `standardization`.
DatasetMatrix standardize(const DatasetMatrix& matrix);

// Columns whose name starts with `prefix` (e.g. "k5.").
DatasetMatrix select_columns(const DatasetMatrix& matrix, std::string_view prefix);
// Rows whose label is in `labels`, in original order.
DatasetMatrix select_labels(const DatasetMatrix& matrix, std::span<const std::string> labels);

std::string k_label(double k);

// CSV with header `book_id,author,<feature names>`.
void write_feature_csv(std::ostream& out, const DatasetMatrix& matrix);
DatasetMatrix read_feature_csv(std::istream& in);

}  // namespace mesonet

#endif  // MESONET_FEATURES_HPP
