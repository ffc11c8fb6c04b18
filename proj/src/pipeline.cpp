#include "mesonet/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "mesonet/error.hpp"
#include "mesonet/graph.hpp"
#include "mesonet/io.hpp"
#include "mesonet/learn/baseline.hpp"
#include "mesonet/learn/evaluation.hpp"
#include "mesonet/learn/pca.hpp"
#include "mesonet/log.hpp"
#include "mesonet/vectorize.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace mesonet {
namespace {

// Runs body(i) for i in [0, n) on up to `jobs` threads and collects the
// messages of thrown exceptions per index.
template <typename Body>
std::vector<std::string> parallel_for(std::size_t n, unsigned jobs, Body body) {
  std::vector<std::string> errors(n);
  auto guarded = [&](std::size_t i) {
    try {
      body(i);
    } catch (const std::exception& e) {
      errors[i] = e.what();
      if (errors[i].empty()) errors[i] = "unknown error";
    }
  };
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  if (jobs == 1) {
    for (std::size_t i = 0; i < n; ++i) guarded(i);
  } else {
    std::vector<std::jthread> workers;
    for (unsigned t = 0; t < jobs; ++t) {
      workers.emplace_back([&, t] {
        for (std::size_t i = t; i < n; i += jobs) guarded(i);
      });
    }
  }
  return errors;
}

// Threads left for work inside one item once items are spread over `jobs`.
unsigned inner_jobs(unsigned jobs, std::size_t items) {
  return items == 0 ? 1u : std::max(1u, jobs / static_cast<unsigned>(std::min<std::size_t>(items, jobs)));
}

void collect(StageResult& result, const std::vector<std::string>& errors,
             const std::vector<std::string>& names) {
  for (std::size_t i = 0; i < errors.size(); ++i) {
    if (errors[i].empty()) {
      ++result.succeeded;
    } else {
      result.failures.push_back(names[i] + ": " + errors[i]);
      log::warn(names[i] + ": " + errors[i]);
    }
  }
}

std::vector<ManifestEntry> manifest_of(const RunConfig& config) {
  try {
    return load_manifest(config.manifest);
  } catch (const Error& e) {
    throw ConfigError("manifest '" + config.manifest.string() + "': " + e.what());
  }
}

std::vector<std::string> ids_of(const std::vector<ManifestEntry>& books) {
  std::vector<std::string> ids;
  for (const auto& b : books) ids.push_back(b.book_id);
  return ids;
}

void write_config(const RunConfig& config) {
  io::write_file_atomic(config.out / "config.json", config_to_json(config));
}

fs::path text_path(const RunConfig& c, const std::string& id) { return c.out / "texts" / (id + ".txt"); }
fs::path network_dir(const RunConfig& c, const std::string& id) { return c.out / "networks" / id; }
fs::path measure_dir(const RunConfig& c, const std::string& id) { return c.out / "measures" / id; }
fs::path features_path(const RunConfig& c) { return c.out / "features.csv"; }

std::string require_file(const fs::path& path, std::string_view what) {
  if (!fs::exists(path)) throw Error("missing " + std::string(what) + " '" + path.string() + "'");
  return io::read_file(path);
}

MesoNetwork load_network(const fs::path& path) {
  std::istringstream in(require_file(path, "network"));
  return read_edge_list(in);
}

DatasetMatrix load_features(const RunConfig& config) {
  std::istringstream in(require_file(features_path(config), "feature file"));
  return read_feature_csv(in);
}

std::vector<std::string> classifiers(const RunConfig& config) {
  if (config.classifier == "both") return {"rf", "svm"};
  return {config.classifier};
}

// Random-forest candidates are keyed by feature name, so the trainer is
// built for the columns it will see.
learn::Trainer make_trainer(const RunConfig& config, const std::string& kind,
                            const std::vector<std::string>& names) {
  if (kind == "svm") return learn::svm_trainer();
  learn::ForestParams params;
  params.seed = derive_seed(config.seed, "forest");
  return learn::forest_trainer(names, params);
}

std::size_t distinct(const std::vector<std::string>& labels) {
  return std::set<std::string>(labels.begin(), labels.end()).size();
}

}  // namespace

void RunConfig::validate() const {
  if (manifest.empty()) throw ConfigError("no manifest given");
  if (delta == 0) throw ConfigError("delta must be >= 1");
  if (k_values.empty()) throw ConfigError("k list is empty");
  for (double k : k_values) {
    if (!(k > 0) || !std::isfinite(k)) throw ConfigError("k values must be positive");
  }
  if (measures.empty()) throw ConfigError("measurement set is empty");
  if (classifier != "svm" && classifier != "rf" && classifier != "both") {
    throw ConfigError("classifier must be svm, rf or both");
  }
  if (top_words == 0) throw ConfigError("top_words must be >= 1");
  if (layout_iterations == 0) throw ConfigError("layout_iterations must be >= 1");
  if (out.empty()) throw ConfigError("no output directory given");
}

std::string config_to_json(const RunConfig& c) {
  ordered_json j;
  j["manifest"] = c.manifest.string();
  j["delta"] = c.delta;
  j["k_values"] = c.k_values;
  std::vector<std::string> names;
  for (auto m : c.measures) names.emplace_back(measure_name(m));
  j["measures"] = names;
  j["classifier"] = c.classifier;
  j["seed"] = c.seed;
  j["out"] = c.out.string();
  j["stopwords"] = c.stopwords.string();
  j["lemmas"] = c.lemmas.string();
  j["cache"] = c.cache.string();
  j["top_words"] = c.top_words;
  j["render_k"] = c.render_k;
  j["layout_iterations"] = c.layout_iterations;
  return j.dump(2) + "\n";
}

RunConfig config_from_json(std::string_view text) {
  RunConfig c;
  try {
    auto j = ordered_json::parse(text);
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    if (j.contains("manifest")) c.manifest = j["manifest"].get<std::string>();
    if (j.contains("delta")) c.delta = j["delta"].get<std::size_t>();
    if (j.contains("k_values")) c.k_values = j["k_values"].get<std::vector<double>>();
    if (j.contains("measures")) {
      c.measures.clear();
      for (const auto& name : j["measures"].get<std::vector<std::string>>()) {
        auto m = parse_measure(name);
        if (!m) throw ConfigError("unknown measure '" + name + "'");
        c.measures.push_back(*m);
      }
    }
    if (j.contains("classifier")) c.classifier = j["classifier"].get<std::string>();
    if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("out")) c.out = j["out"].get<std::string>();
    if (j.contains("stopwords")) c.stopwords = j["stopwords"].get<std::string>();
    if (j.contains("lemmas")) c.lemmas = j["lemmas"].get<std::string>();
    if (j.contains("cache")) c.cache = j["cache"].get<std::string>();
    if (j.contains("top_words")) c.top_words = j["top_words"].get<std::size_t>();
    if (j.contains("render_k")) c.render_k = j["render_k"].get<double>();
    if (j.contains("layout_iterations")) c.layout_iterations = j["layout_iterations"].get<unsigned>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return c;
}

std::vector<double> parse_k_list(std::string_view spec) {
  auto number = [&](std::string_view s) {
    s = io::trim(s);
    std::string str(s);
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(str, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (str.empty() || used != str.size()) throw ConfigError("bad number '" + str + "' in k list");
    return v;
  };
  std::vector<double> out;
  if (spec.find(':') != std::string_view::npos) {
    auto a = spec.find(':');
    auto b = spec.find(':', a + 1);
    if (b == std::string_view::npos) throw ConfigError("k range must be start:stop:step");
    double start = number(spec.substr(0, a));
    double stop = number(spec.substr(a + 1, b - a - 1));
    double step = number(spec.substr(b + 1));
    if (!(step > 0) || stop < start) throw ConfigError("k range must have step > 0 and stop >= start");
    for (long i = 0;; ++i) {
      double k = start + static_cast<double>(i) * step;
      if (k > stop + 1e-9 * step) break;
      out.push_back(k);
    }
  } else {
    std::size_t pos = 0;
    while (pos <= spec.size()) {
      auto comma = spec.find(',', pos);
      out.push_back(number(spec.substr(pos, comma == std::string_view::npos ? spec.npos : comma - pos)));
      if (comma == std::string_view::npos) break;
      pos = comma + 1;
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  for (double k : out) {
    if (!(k > 0)) throw ConfigError("k values must be positive");
  }
  return out;
}

std::uint64_t derive_seed(std::uint64_t seed, std::string_view stream) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : stream) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::uint64_t z = seed ^ h;
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

BookBuild build_book(std::string_view body, const std::string& book_id, std::size_t delta,
                     std::span<const double> k_values, const StopwordSet& stopwords,
                     const LemmaTable& lemmas, unsigned jobs) {
  auto paragraphs = segment_paragraphs(body);
  TokenizedText text = preprocess(paragraphs, stopwords, lemmas, book_id);
  BookBuild out;
  out.paragraphs = text.paragraphs.size();
  auto windows = build_windows(text, delta);
  auto vectors = tfidf_all(windows);
  out.weighted = build_weighted(vectors, jobs);
  out.pruned = sweep_prune(out.weighted, k_values);
  return out;
}

StageResult stage_ingest(const RunConfig& config) {
  config.validate();
  auto books = manifest_of(config);
  write_config(config);
  StageResult result;
  auto errors = parallel_for(books.size(), config.jobs, [&](std::size_t i) {
    RawBook book = fetch_text(books[i], config.cache);
    io::write_file_atomic(text_path(config, books[i].book_id), book.body + "\n");
  });
  collect(result, errors, ids_of(books));
  return result;
}

StageResult stage_build(const RunConfig& config) {
  config.validate();
  auto books = manifest_of(config);
  StopwordSet stopwords;
  LemmaTable lemmas;
  try {
    stopwords = load_stopwords(config.stopwords);
    lemmas = load_lemma_table(config.lemmas);
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  write_config(config);

  std::vector<std::string> log_rows(books.size());
  auto errors = parallel_for(books.size(), config.jobs, [&](std::size_t i) {
    const auto& id = books[i].book_id;
    std::string body = require_file(text_path(config, id), "text");
    BookBuild build = build_book(body, id, config.delta, config.k_values, stopwords, lemmas,
                                 inner_jobs(config.jobs, books.size()));
    std::string rows;
    for (const auto& [k, net] : build.pruned) {
      std::ostringstream edges, graphml;
      write_edge_list(edges, net);
      write_graphml(graphml, net);
      io::write_file_atomic(network_dir(config, id) / (k_label(k) + ".edges"), edges.str());
      io::write_file_atomic(network_dir(config, id) / (k_label(k) + ".graphml"), graphml.str());
      rows += id + '\t' + std::to_string(build.paragraphs) + '\t' +
              std::to_string(build.weighted.node_count) + '\t' + io::format_double(k) + '\t' +
              std::to_string(net.edges.size()) + '\t' + io::format_double(net.average_degree()) +
              "\tok\n";
    }
    log_rows[i] = std::move(rows);
  });

  StageResult result;
  collect(result, errors, ids_of(books));
  std::string log = "book_id\tparagraphs\twindows\tk_target\tedges\tk_achieved\tstatus\n";
  for (std::size_t i = 0; i < books.size(); ++i) {
    if (errors[i].empty()) {
      log += log_rows[i];
    } else {
      std::string reason = errors[i];
      std::replace(reason.begin(), reason.end(), '\t', ' ');
      std::replace(reason.begin(), reason.end(), '\n', ' ');
      log += books[i].book_id + "\t\t\t\t\t\tfailed: " + reason + "\n";
    }
  }
  io::write_file_atomic(config.out / "networks" / "build_log.tsv", log);
  return result;
}

StageResult stage_measure(const RunConfig& config) {
  config.validate();
  auto books = manifest_of(config);
  write_config(config);
  auto errors = parallel_for(books.size(), config.jobs, [&](std::size_t i) {
    const auto& id = books[i].book_id;
    for (double k : config.k_values) {
      MesoNetwork net = load_network(network_dir(config, id) / (k_label(k) + ".edges"));
      NodeMeasureTable table =
          measure_network(Graph(net), config.measures, inner_jobs(config.jobs, books.size()));
      std::ostringstream csv, scalars;
      write_measure_csv(csv, table);
      write_measure_scalars(scalars, table);
      io::write_file_atomic(measure_dir(config, id) / (k_label(k) + ".csv"), csv.str());
      io::write_file_atomic(measure_dir(config, id) / (k_label(k) + ".scalars"), scalars.str());
    }
  });
  StageResult result;
  collect(result, errors, ids_of(books));
  return result;
}

StageResult stage_features(const RunConfig& config) {
  config.validate();
  auto books = manifest_of(config);
  write_config(config);
  FeatureGrid grid;
  grid.k_values = config.k_values;
  grid.measures = config.measures;

  std::vector<std::optional<FeatureVector>> vectors(books.size());
  auto errors = parallel_for(books.size(), config.jobs, [&](std::size_t i) {
    const auto& id = books[i].book_id;
    std::map<double, NodeMeasureTable> tables;
    for (double k : config.k_values) {
      auto base = measure_dir(config, id) / k_label(k);
      std::istringstream csv(require_file(fs::path(base.string() + ".csv"), "measure table"));
      std::istringstream scalars(require_file(fs::path(base.string() + ".scalars"), "measure scalars"));
      tables.emplace(k, read_measure_tables(csv, scalars));
    }
    vectors[i] = book_features(tables, grid, id, books[i].author);
  });
  StageResult result;
  collect(result, errors, ids_of(books));
  std::vector<FeatureVector> rows;
  for (auto& v : vectors)
    if (v) rows.push_back(std::move(*v));
  if (rows.empty()) {
    result.failures.push_back("features: no book has a complete set of measurements");
    return result;
  }
  std::ostringstream out;
  write_feature_csv(out, assemble_dataset(rows));
  io::write_file_atomic(features_path(config), out.str());
  return result;
}

StageResult stage_classify(const RunConfig& config) {
  config.validate();
  write_config(config);
  DatasetMatrix data = load_features(config);
  StageResult result;
  if (distinct(data.labels) < 2) {
    result.failures.push_back("classify: need at least two authors");
    return result;
  }
  auto models = classifiers(config);

  std::vector<std::pair<std::string, DatasetMatrix>> blocks;
  for (double k : config.k_values) {
    DatasetMatrix block = select_columns(data, k_label(k) + ".");
    if (block.cols() > 0) blocks.emplace_back(k_label(k), std::move(block));
  }
  blocks.emplace_back("all", data);

  std::string table = "# leave-one-out accuracy; books=" + std::to_string(data.rows()) +
                      " authors=" + std::to_string(distinct(data.labels)) + "\nk";
  for (const auto& name : models) table += name == "rf" ? "\tRF" : "\tSVM";
  table += '\n';
  for (const auto& [block_name, block] : blocks) {
    table += block_name == "all" ? std::string("All combined") : block_name.substr(1);
    for (const auto& name : models) {
      learn::EvalReport report =
          learn::loocv(block, make_trainer(config, name, block.feature_names), config.jobs);
      std::ostringstream text, confusion;
      learn::write_report(text, report, name + " " + block_name);
      learn::write_confusion_csv(confusion, report);
      io::write_file_atomic(config.out / "classify" / (name + "_" + block_name + ".txt"), text.str());
      io::write_file_atomic(config.out / "classify" / (name + "_" + block_name + "_confusion.csv"),
                            confusion.str());
      table += '\t' + io::format_double(report.accuracy);
    }
    table += '\n';
    ++result.succeeded;
  }
  table += "chance";
  for (std::size_t i = 0; i < models.size(); ++i) {
    table += '\t' + io::format_double(1.0 / static_cast<double>(distinct(data.labels)));
  }
  table += '\n';
  io::write_file_atomic(config.out / "classify" / "table.tsv", table);
  return result;
}

StageResult stage_pairwise(const RunConfig& config) {
  config.validate();
  auto books = manifest_of(config);
  write_config(config);
  DatasetMatrix data = load_features(config);
  StageResult result;
  if (distinct(data.labels) < 2) {
    result.failures.push_back("pairwise: need at least two authors");
    return result;
  }
  auto svm = learn::svm_trainer();
  {
    std::ostringstream out;
    learn::write_pairwise_csv(out, learn::pairwise_matrix(data, svm, config.jobs));
    io::write_file_atomic(config.out / "pairwise" / "mesoscopic.csv", out.str());
    ++result.succeeded;
  }

  // Baseline over the same books, from their original text.
  std::set<std::string> kept(data.book_ids.begin(), data.book_ids.end());
  std::vector<learn::LabeledText> texts;
  for (const auto& b : books) {
    if (!kept.contains(b.book_id)) continue;
    texts.push_back({b.book_id, b.author, require_file(text_path(config, b.book_id), "text")});
  }
  DatasetMatrix words = learn::frequent_words_features(texts, config.top_words);
  std::ostringstream features, out;
  write_feature_csv(features, words);
  io::write_file_atomic(config.out / "pairwise" / "frequent_words_features.csv", features.str());
  learn::write_pairwise_csv(out, learn::pairwise_matrix(words, svm, config.jobs));
  io::write_file_atomic(config.out / "pairwise" / "frequent_words.csv", out.str());
  ++result.succeeded;
  return result;
}

StageResult stage_pca(const RunConfig& config) {
  config.validate();
  write_config(config);
  DatasetMatrix data = standardize(load_features(config));
  StageResult result;
  learn::PcaResult p = learn::pca(data.values, 2);
  std::string csv = "book_id,author,pc1,pc2\n";
  for (std::size_t i = 0; i < data.rows(); ++i) {
    auto r = static_cast<Eigen::Index>(i);
    csv += io::csv_field(data.book_ids[i]) + ',' + io::csv_field(data.labels[i]) + ',' +
           io::format_double(p.scores(r, 0)) + ',' + io::format_double(p.scores(r, 1)) + '\n';
  }
  io::write_file_atomic(config.out / "pca" / "pca.csv", csv);
  std::string summary = "explained_variance_ratio_pc1=" +
                        io::format_double(p.explained_variance_ratio(0)) +
                        "\nexplained_variance_ratio_pc2=" +
                        io::format_double(p.explained_variance_ratio(1)) + "\n";
  if (distinct(data.labels) >= 2) {
    summary += "silhouette=" + io::format_double(learn::silhouette_score(p.scores, data.labels)) + "\n";
  }
  io::write_file_atomic(config.out / "pca" / "summary.txt", summary);
  ++result.succeeded;
  return result;
}

StageResult stage_render(const RunConfig& config, const std::string& book_id,
                         std::optional<double> k) {
  config.validate();
  double k_value = k.value_or(config.render_k);
  std::vector<std::string> ids;
  if (book_id.empty()) {
    ids = ids_of(manifest_of(config));
  } else {
    ids.push_back(book_id);
    auto path = network_dir(config, book_id) / (k_label(k_value) + ".edges");
    if (!fs::exists(path)) throw Error("missing network '" + path.string() + "'");
  }
  write_config(config);
  auto errors = parallel_for(ids.size(), config.jobs, [&](std::size_t i) {
    const auto& id = ids[i];
    MesoNetwork net = load_network(network_dir(config, id) / (k_label(k_value) + ".edges"));
    LayoutConfig layout;
    layout.iterations = config.layout_iterations;
    layout.seed = derive_seed(config.seed, "layout:" + id);
    layout.jobs = inner_jobs(config.jobs, ids.size());
    Embedding embedding = fr_layout(net, layout);
    std::ostringstream coords;
    write_coordinates(coords, embedding);
    auto dir = config.out / "render" / id;
    io::write_file_atomic(dir / (k_label(k_value) + ".svg"), render_svg(net, embedding));
    io::write_file_atomic(dir / (k_label(k_value) + ".coords.csv"), coords.str());
  });
  StageResult result;
  collect(result, errors, ids);
  return result;
}

StageResult run_all(const RunConfig& config) {
  StageResult total;
  auto add = [&](const StageResult& r) {
    total.succeeded += r.succeeded;
    total.failures.insert(total.failures.end(), r.failures.begin(), r.failures.end());
    return r.succeeded > 0;
  };
  log::info("ingest");
  if (!add(stage_ingest(config))) return total;
  log::info("build");
  if (!add(stage_build(config))) return total;
  log::info("measure");
  if (!add(stage_measure(config))) return total;
  log::info("features");
  if (!add(stage_features(config))) return total;
  log::info("classify");
  add(stage_classify(config));
  log::info("pairwise");
  add(stage_pairwise(config));
  log::info("pca");
  add(stage_pca(config));
  log::info("render");
  add(stage_render(config));
  return total;
}

}  // namespace mesonet
