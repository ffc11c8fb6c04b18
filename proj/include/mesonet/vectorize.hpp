#ifndef MESONET_VECTORIZE_HPP
#define MESONET_VECTORIZE_HPP

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mesonet/textproc.hpp"

namespace mesonet {

// Sparse tf-idf weights of one window, sorted by term. Only strictly
// positive, finite weights are stored.
struct TermWeightVector {
  std::size_t window_index = 0;
  std::vector<std::pair<std::string, double>> weights;

  // 0 when the term is absent.
  double weight(std::string_view term) const;
  double norm() const;
};

// Builds a vector from arbitrary (term, weight) pairs: sorts by term, sums
// duplicates and drops non-positive weights. Mostly useful for tests.
TermWeightVector make_vector(std::vector<std::pair<std::string, double>> weights,
                             std::size_t window_index = 0);

// tf-idf over the window collection, where every window is a document:
//   weight(w, d) = (count of w in d / terms in d) * ln(|D| / windows containing w).
// Terms found in every window get weight 0 and are omitted.
// Throws std::invalid_argument for an empty collection or an empty window.
std::vector<TermWeightVector> tfidf_all(std::span<const Window> windows);

// dot(a, b) / (|a| |b|), clamped to [0, 1]; 0 when either norm is zero.
double cosine(const TermWeightVector& a, const TermWeightVector& b);

// `lemma<TAB>weight` lines, one vector after another separated by a
// `# window <index>` line.
void write_vectors(std::ostream& out, std::span<const TermWeightVector> vectors);

}  // namespace mesonet

#endif  // MESONET_VECTORIZE_HPP
