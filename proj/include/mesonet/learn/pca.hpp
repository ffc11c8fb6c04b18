#ifndef MESONET_LEARN_PCA_HPP
#define MESONET_LEARN_PCA_HPP

#include <Eigen/Dense>

#include <span>
#include <string>

namespace mesonet::learn {

struct PcaResult {
  Eigen::MatrixXd scores;                    // rows x n
  Eigen::MatrixXd components;                // cols x n, unit columns
  Eigen::VectorXd eigenvalues;               // descending, length n
  Eigen::VectorXd explained_variance_ratio;  // eigenvalue / total variance
};

// Projects centered rows onto the top-n eigenvectors of the sample
// covariance. Each component is signed so its largest-magnitude loading is
// positive (first one wins on exact ties). Throws std::invalid_argument
// unless 1 <= n <= min(rows - 1, cols).
PcaResult pca(const Eigen::MatrixXd& x, Eigen::Index n);

// Mean silhouette coefficient with Euclidean distance. Points in singleton
// clusters contribute 0. Throws std::invalid_argument with fewer than two
// clusters or a size mismatch.
double silhouette_score(const Eigen::MatrixXd& points, std::span<const std::string> labels);

}  // namespace mesonet::learn

#endif  // MESONET_LEARN_PCA_HPP
