#ifndef MESONET_PIPELINE_HPP
#define MESONET_PIPELINE_HPP

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mesonet/corpus.hpp"
#include "mesonet/features.hpp"
#include "mesonet/layout.hpp"
#include "mesonet/measures.hpp"
#include "mesonet/network.hpp"
#include "mesonet/textproc.hpp"

namespace mesonet {

struct RunConfig {
  std::filesystem::path manifest;
  std::size_t delta = 20;
  std::vector<double> k_values{5, 10, 15, 20, 25, 30, 35, 40, 45, 50};
  std::vector<NodeMeasure> measures{kAllNodeMeasures.begin(), kAllNodeMeasures.end()};
  std::string classifier = "both";  // svm | rf | both
  std::uint64_t seed = 0;
  std::filesystem::path out = "out";
  std::filesystem::path stopwords = default_stopwords_path();
  std::filesystem::path lemmas = default_lemma_table_path();
  std::filesystem::path cache = default_cache_dir();
  std::size_t top_words = 20;
  double render_k = 10;
  unsigned layout_iterations = 1000;
  unsigned jobs = 1;  // never changes outputs

  // Throws ConfigError.
  void validate() const;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string config_to_json(const RunConfig& config);
// Keys missing from the document keep their defaults. Throws ConfigError.
RunConfig config_from_json(std::string_view text);

// "5:50:5" (inclusive range) or "5,10,20". Throws ConfigError.
std::vector<double> parse_k_list(std::string_view spec);

// A 64-bit seed for a named consumer of the run seed.
std::uint64_t derive_seed(std::uint64_t seed, std::string_view stream);

// Text to pruned networks for one book.
struct BookBuild {
  std::size_t paragraphs = 0;  // after preprocessing; empty paragraphs dropped
  MesoNetwork weighted;
  std::map<double, MesoNetwork> pruned;
};

BookBuild build_book(std::string_view body, const std::string& book_id, std::size_t delta,
                     std::span<const double> k_values, const StopwordSet& stopwords,
                     const LemmaTable& lemmas, unsigned jobs = 1);

struct StageResult {
  std::size_t succeeded = 0;
  std::vector<std::string> failures;  // "<book or artifact>: <reason>"
};

// Output layout under config.out:
//   config.json
//   texts/<id>.txt
//   networks/<id>/k<k>.edges, k<k>.graphml; build_log.tsv
//   measures/<id>/k<k>.csv, k<k>.scalars
//   features.csv
//   classify/table.tsv, classify/<clf>_<block>.txt, classify/<clf>_<block>_confusion.csv
//   pairwise/mesoscopic.csv, pairwise/frequent_words.csv
//   pca/pca.csv, pca/summary.txt
//   render/<id>/k<k>.svg, k<k>.coords.csv
// Every stage writes config.json and reads only files of earlier stages
// (plus the manifest).
StageResult stage_ingest(const RunConfig& config);
StageResult stage_build(const RunConfig& config);
StageResult stage_measure(const RunConfig& config);
StageResult stage_features(const RunConfig& config);
StageResult stage_classify(const RunConfig& config);
StageResult stage_pairwise(const RunConfig& config);
StageResult stage_pca(const RunConfig& config);
// All manifest books when book_id is empty. Throws Error naming the missing
// network file when a requested book was not built.
StageResult stage_render(const RunConfig& config, const std::string& book_id = {},
                         std::optional<double> k = std::nullopt);
// Every stage in order; stops early only when a stage leaves nothing to
// work on.
StageResult run_all(const RunConfig& config);

}  // namespace mesonet

#endif  // MESONET_PIPELINE_HPP
