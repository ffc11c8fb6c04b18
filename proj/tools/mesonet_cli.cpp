#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

#include "mesonet/error.hpp"
#include "mesonet/io.hpp"
#include "mesonet/log.hpp"
#include "mesonet/pipeline.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kPartial = 1;
constexpr int kConfigError = 2;

struct Flags {
  std::string config;
  std::string manifest;
  std::size_t delta = 20;
  std::string k_list;
  std::string classifier;
  std::uint64_t seed = 0;
  std::string out;
  std::string stopwords;
  std::string lemmas;
  std::string cache;
  unsigned jobs = 1;
  bool quiet = false;
  std::string book;
  double k = 10;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mesoscopic text networks for authorship attribution"};
  app.require_subcommand(1);
  Flags f;
  auto* o_config = app.add_option("--config", f.config, "JSON run config; flags override it");
  auto* o_manifest = app.add_option("--manifest", f.manifest, "Dataset manifest (CSV)");
  auto* o_delta = app.add_option("--delta", f.delta, "Paragraphs per window")->capture_default_str();
  auto* o_k = app.add_option("--k-list", f.k_list, "Target average degrees, start:stop:step or a,b,c")
                  ->default_str("5:50:5");
  auto* o_clf = app.add_option("--classifier", f.classifier, "svm, rf or both")
                    ->check(CLI::IsMember({"svm", "rf", "both"}))
                    ->default_str("both");
  auto* o_seed = app.add_option("--seed", f.seed, "Run seed")->capture_default_str();
  auto* o_out = app.add_option("--out", f.out, "Output directory")->default_str("out");
  auto* o_stop = app.add_option("--stopwords", f.stopwords, "Stopword list");
  auto* o_lemma = app.add_option("--lemmas", f.lemmas, "Lemma table (inflected<TAB>lemma)");
  auto* o_cache = app.add_option("--cache", f.cache, "Download cache directory");
  app.add_option("--jobs", f.jobs, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_flag("--quiet", f.quiet, "Only print warnings");

  app.add_subcommand("ingest", "Fetch, cache and strip the manifest's texts");
  app.add_subcommand("build", "Build windows and pruned networks per book");
  app.add_subcommand("measure", "Measure every network");
  app.add_subcommand("features", "Assemble the feature matrix");
  app.add_subcommand("classify", "Leave-one-out accuracy per k and combined");
  app.add_subcommand("pairwise", "Author-pair accuracy matrices");
  app.add_subcommand("pca", "Two-component projection of the features");
  auto* render = app.add_subcommand("render", "Force-directed SVG of built networks");
  auto* o_book = render->add_option("--book", f.book, "Book id (default: every book)");
  auto* o_render_k = render->add_option("--k", f.k, "Which pruned network")->default_str("10");
  app.add_subcommand("run", "Every stage in order");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigError;
  }
  mesonet::log::set_quiet(f.quiet);

  mesonet::StageResult result;
  try {
    mesonet::RunConfig config;
    if (o_config->count()) {
      config = mesonet::config_from_json(mesonet::io::read_file(f.config));
    }
    if (o_manifest->count()) config.manifest = f.manifest;
    if (o_delta->count()) config.delta = f.delta;
    if (o_k->count()) config.k_values = mesonet::parse_k_list(f.k_list);
    if (o_clf->count()) config.classifier = f.classifier;
    if (o_seed->count()) config.seed = f.seed;
    if (o_out->count()) config.out = f.out;
    if (o_stop->count()) config.stopwords = f.stopwords;
    if (o_lemma->count()) config.lemmas = f.lemmas;
    if (o_cache->count()) config.cache = f.cache;
    if (o_render_k->count()) config.render_k = f.k;
    config.jobs = f.jobs;
    config.validate();

    const std::string cmd = app.get_subcommands().front()->get_name();
    if (cmd == "ingest") result = mesonet::stage_ingest(config);
    else if (cmd == "build") result = mesonet::stage_build(config);
    else if (cmd == "measure") result = mesonet::stage_measure(config);
    else if (cmd == "features") result = mesonet::stage_features(config);
    else if (cmd == "classify") result = mesonet::stage_classify(config);
    else if (cmd == "pairwise") result = mesonet::stage_pairwise(config);
    else if (cmd == "pca") result = mesonet::stage_pca(config);
    else if (cmd == "render") {
      std::optional<double> k;
      if (o_render_k->count()) k = f.k;
      result = mesonet::stage_render(config, o_book->count() ? f.book : std::string{}, k);
    } else {
      result = mesonet::run_all(config);
    }
  } catch (const mesonet::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kPartial;
  }

  if (!f.quiet) {
    std::cerr << result.succeeded << " item(s) done, " << result.failures.size() << " failed\n";
  }
  return result.failures.empty() ? kOk : kPartial;
}
