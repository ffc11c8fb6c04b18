#ifndef MESONET_LEARN_BASELINE_HPP
#define MESONET_LEARN_BASELINE_HPP

#include <cstddef>
#include <span>
#include <string>

#include "mesonet/features.hpp"

namespace mesonet::learn {

struct LabeledText {
  std::string book_id;
  std::string author;
  std::string text;  // original text, not stopword-filtered or lemmatized
};

// Relative frequencies of the corpus-wide top_n tokens (tokenize(), so
// lowercased; count ties broken lexicographically). Columns are named
// `freq.<word>` in rank order. Throws std::invalid_argument for top_n == 0
// and Error when the corpus has no tokens.
DatasetMatrix frequent_words_features(std::span<const LabeledText> texts, std::size_t top_n = 20);

}  // namespace mesonet::learn

#endif  // MESONET_LEARN_BASELINE_HPP
