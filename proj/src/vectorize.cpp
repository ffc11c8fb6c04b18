#include "mesonet/vectorize.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <unordered_map>

#include "mesonet/io.hpp"

namespace mesonet {

double TermWeightVector::weight(std::string_view term) const {
  auto it = std::lower_bound(
      weights.begin(), weights.end(), term,
      [](const auto& entry, std::string_view t) { return entry.first < t; });
  return (it != weights.end() && it->first == term) ? it->second : 0.0;
}

double TermWeightVector::norm() const {
  double sum = 0.0;
  for (const auto& [term, w] : weights) sum += w * w;
  return std::sqrt(sum);
}

TermWeightVector make_vector(std::vector<std::pair<std::string, double>> weights,
                             std::size_t window_index) {
  std::sort(weights.begin(), weights.end());
  TermWeightVector v;
  v.window_index = window_index;
  for (auto& [term, w] : weights) {
    if (!v.weights.empty() && v.weights.back().first == term) {
      v.weights.back().second += w;
    } else {
      v.weights.emplace_back(std::move(term), w);
    }
  }
  std::erase_if(v.weights, [](const auto& e) { return !(e.second > 0.0); });
  return v;
}

std::vector<TermWeightVector> tfidf_all(std::span<const Window> windows) {
  if (windows.empty()) throw std::invalid_argument("tf-idf needs at least one window");

  // Intern terms; ids follow lexicographic term order so per-window entries
  // come out sorted.
  std::unordered_map<std::string_view, std::uint32_t> ids;
  for (const auto& w : windows) {
    if (w.terms.empty()) {
      throw std::invalid_argument("window " + std::to_string(w.index) + " has no terms");
    }
    for (const auto& t : w.terms) ids.emplace(t, 0);
  }
  std::vector<std::string_view> vocab;
  vocab.reserve(ids.size());
  for (const auto& [term, id] : ids) vocab.push_back(term);
  std::sort(vocab.begin(), vocab.end());
  for (std::uint32_t i = 0; i < vocab.size(); ++i) ids[vocab[i]] = i;

  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> counts(windows.size());
  std::vector<std::uint32_t> doc_freq(vocab.size(), 0);
  std::vector<std::uint32_t> scratch;
  for (std::size_t d = 0; d < windows.size(); ++d) {
    scratch.clear();
    for (const auto& t : windows[d].terms) scratch.push_back(ids.at(t));
    std::sort(scratch.begin(), scratch.end());
    for (std::size_t i = 0; i < scratch.size();) {
      std::size_t j = i;
      while (j < scratch.size() && scratch[j] == scratch[i]) ++j;
      counts[d].emplace_back(scratch[i], static_cast<std::uint32_t>(j - i));
      ++doc_freq[scratch[i]];
      i = j;
    }
  }

  const double n_docs = static_cast<double>(windows.size());
  std::vector<TermWeightVector> out(windows.size());
  for (std::size_t d = 0; d < windows.size(); ++d) {
    const double length = static_cast<double>(windows[d].terms.size());
    out[d].window_index = windows[d].index;
    for (auto [id, count] : counts[d]) {
      if (doc_freq[id] == windows.size()) continue;
      double w = (count / length) * std::log(n_docs / doc_freq[id]);
      out[d].weights.emplace_back(std::string(vocab[id]), w);
    }
  }
  return out;
}

double cosine(const TermWeightVector& a, const TermWeightVector& b) {
  double na = a.norm();
  double nb = b.norm();
  if (na == 0.0 || nb == 0.0) return 0.0;
  double dot = 0.0;
  auto ia = a.weights.begin();
  auto ib = b.weights.begin();
  while (ia != a.weights.end() && ib != b.weights.end()) {
    int c = ia->first.compare(ib->first);
    if (c == 0) {
      dot += ia->second * ib->second;
      ++ia;
      ++ib;
    } else if (c < 0) {
      ++ia;
    } else {
      ++ib;
    }
  }
  return std::clamp(dot / (na * nb), 0.0, 1.0);
}

void write_vectors(std::ostream& out, std::span<const TermWeightVector> vectors) {
  for (const auto& v : vectors) {
    out << "# window " << v.window_index << '\n';
    for (const auto& [term, w] : v.weights) {
      out << term << '\t' << io::format_double(w) << '\n';
    }
  }
}

}  // namespace mesonet
