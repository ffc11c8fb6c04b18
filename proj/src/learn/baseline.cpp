#include "mesonet/learn/baseline.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

#include "mesonet/error.hpp"
#include "mesonet/textproc.hpp"

namespace mesonet::learn {

DatasetMatrix frequent_words_features(std::span<const LabeledText> texts, std::size_t top_n) {
  if (top_n == 0) throw std::invalid_argument("top_n must be >= 1");
  std::vector<std::unordered_map<std::string, std::size_t>> per_book(texts.size());
  std::vector<std::size_t> totals(texts.size(), 0);
  std::unordered_map<std::string, std::size_t> corpus;
  for (std::size_t b = 0; b < texts.size(); ++b) {
    for (auto& token : tokenize(texts[b].text)) {
      ++corpus[token];
      ++per_book[b][std::move(token)];
      ++totals[b];
    }
  }
  if (corpus.empty()) throw Error("frequent-words baseline: corpus has no tokens");

  std::vector<std::pair<std::string, std::size_t>> ranked(corpus.begin(), corpus.end());
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  });
  ranked.resize(std::min(top_n, ranked.size()));

  DatasetMatrix out;
  out.values.resize(static_cast<Eigen::Index>(texts.size()), static_cast<Eigen::Index>(ranked.size()));
  for (const auto& [word, count] : ranked) out.feature_names.push_back("freq." + word);
  for (std::size_t b = 0; b < texts.size(); ++b) {
    out.book_ids.push_back(texts[b].book_id);
    out.labels.push_back(texts[b].author);
    for (std::size_t c = 0; c < ranked.size(); ++c) {
      auto it = per_book[b].find(ranked[c].first);
      double count = it == per_book[b].end() ? 0.0 : static_cast<double>(it->second);
      out.values(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(c)) =
          totals[b] == 0 ? 0.0 : count / static_cast<double>(totals[b]);
    }
  }
  return out;
}

}  // namespace mesonet::learn
