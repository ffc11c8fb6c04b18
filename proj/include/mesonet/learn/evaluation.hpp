#ifndef MESONET_LEARN_EVALUATION_HPP
#define MESONET_LEARN_EVALUATION_HPP

#include <Eigen/Dense>

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "mesonet/features.hpp"
#include "mesonet/learn/model.hpp"

namespace mesonet::learn {

struct FoldResult {
  std::string book_id;
  std::string truth;
  std::string predicted;
};

struct EvalReport {
  double accuracy = 0.0;
  std::vector<std::string> labels;  // sorted; indexes the confusion matrix
  Eigen::MatrixXi confusion;        // rows: truth, columns: prediction
  std::vector<FoldResult> folds;    // one per row, in row order
};

// Leave-one-out: for each row, fits a Standardizer and the model on all
// other rows, then predicts the held-out row. Folds run on `jobs` threads;
// the report does not depend on `jobs`.
EvalReport loocv(const Eigen::MatrixXd& x, std::span<const std::string> y,
                 std::span<const std::string> ids, const Trainer& trainer, unsigned jobs = 1);
EvalReport loocv(const DatasetMatrix& data, const Trainer& trainer, unsigned jobs = 1);

// Builds a report from (truth, prediction) pairs.
EvalReport make_report(std::vector<FoldResult> folds);

struct PairwiseMatrix {
  std::vector<std::string> authors;  // sorted
  Eigen::MatrixXd accuracy;          // symmetric; NaN on the diagonal
};

// LOOCV restricted to each unordered pair of authors.
PairwiseMatrix pairwise_matrix(const DatasetMatrix& data, const Trainer& trainer,
                               unsigned jobs = 1);

void write_report(std::ostream& out, const EvalReport& report, std::string_view title);
void write_confusion_csv(std::ostream& out, const EvalReport& report);
// Square CSV with an `author` header column; the diagonal is left empty.
void write_pairwise_csv(std::ostream& out, const PairwiseMatrix& matrix);

}  // namespace mesonet::learn

#endif  // MESONET_LEARN_EVALUATION_HPP
