#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <random>

#include "fixtures.hpp"
#include "mesonet/error.hpp"
#include "mesonet/io.hpp"
#include "mesonet/textproc.hpp"

using namespace mesonet;
using Strings = std::vector<std::string>;

TEST_CASE("segment_paragraphs") {
  CHECK(segment_paragraphs("A.\n\nB.") == Strings{"A.", "B."});
  CHECK(segment_paragraphs("line1\nline2\n\nB") == Strings{"line1 line2", "B"});
  CHECK(segment_paragraphs("\n\n\n").empty());
  CHECK(segment_paragraphs("  a  \r\n \t \r\n\n\n  b\r\nc ") == Strings{"a", "b c"});
  CHECK(segment_paragraphs("").empty());
}

TEST_CASE("tokenize") {
  CHECK(tokenize("The cats ran.") == Strings{"the", "cats", "ran"});
  CHECK(tokenize("don't 'quoted' rock'n'roll") == Strings{"don't", "quoted", "rock'n'roll"});
  CHECK(tokenize("it\xE2\x80\x99s") == Strings{"it's"});
  CHECK(tokenize("CAF\xC3\x89 na\xC3\xAFve") == Strings{"caf\xC3\xA9", "na\xC3\xAFve"});
  CHECK(tokenize("x1y--z_w") == Strings{"x", "y", "z", "w"});
  CHECK(tokenize("\xFF\xFEok") == Strings{"ok"});
  CHECK(tokenize("").empty());
}

TEST_CASE("preprocess removes stopwords, then lemmatizes") {
  StopwordSet stop{"the"};
  LemmaTable lemmas{{"cats", "cat"}, {"ran", "run"}};
  Strings paras{"The cats ran"};
  auto t = preprocess(paras, stop, lemmas, "b");
  REQUIRE(t.paragraphs.size() == 1);
  CHECK(t.paragraphs[0] == Strings{"cat", "run"});
  CHECK(t.book_id == "b");

  // "was" is a stopword but its lemma "be" is not: removal sees the surface form.
  StopwordSet s2{"was"};
  LemmaTable l2{{"was", "be"}, {"is", "be"}};
  Strings p2{"it was is"};
  CHECK(preprocess(p2, s2, l2, "b").paragraphs[0] == Strings{"it", "be"});
}

TEST_CASE("preprocess edge cases") {
  StopwordSet stop{"the", "of", "and"};
  Strings all_stop{"the of and"};
  CHECK(preprocess(all_stop, stop, {}, "b").paragraphs.empty());
  Strings hello{"Hello"};
  auto t = preprocess(hello, {}, {}, "b");
  CHECK(t.paragraphs == std::vector<Strings>{{"hello"}});
  Strings mixed{"one", "the", "two"};
  CHECK(preprocess(mixed, stop, {}, "b").paragraphs == std::vector<Strings>{{"one"}, {"two"}});
}

TEST_CASE("no stopword survives preprocessing with an identity table") {
  auto stop = load_stopwords(default_stopwords_path());
  std::string text = io::read_file(fixture::data_file("moby_dick.txt")).substr(0, 200000);
  auto t = preprocess(segment_paragraphs(text), stop, {}, "moby");
  CHECK(t.paragraphs.size() > 100);
  for (const auto& p : t.paragraphs) {
    CHECK_FALSE(p.empty());
    for (const auto& w : p) {
      REQUIRE_FALSE(stop.contains(w));
      REQUIRE_FALSE(w.empty());
    }
  }
}

TEST_CASE("build_windows: window count and contents") {
  TokenizedText t{"b", {{"a"}, {"b", "c"}, {"d"}, {"e"}}};
  auto w = build_windows(t, 2);
  REQUIRE(w.size() == 3);
  CHECK(w[0].terms == Strings{"a", "b", "c"});
  CHECK(w[1].terms == Strings{"b", "c", "d"});
  CHECK(w[2].terms == Strings{"d", "e"});
  for (std::size_t i = 0; i < w.size(); ++i) {
    CHECK(w[i].index == i);
    CHECK(w[i].delta == 2);
  }
  CHECK(build_windows(t, 4).size() == 1);
  CHECK_THROWS_AS(build_windows(t, 5), TooFewParagraphsError);
  CHECK_THROWS_AS(build_windows(t, 0), std::invalid_argument);
  TokenizedText one{"b", {{"x"}}};
  CHECK_THROWS_AS(build_windows(one, 20), TooFewParagraphsError);
}

TEST_CASE("window count law and term conservation (random texts)") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    std::size_t p = 1 + rng() % 60;
    TokenizedText t{"r", {}};
    for (std::size_t i = 0; i < p; ++i) {
      Strings para;
      std::size_t len = 1 + rng() % 5;
      for (std::size_t j = 0; j < len; ++j) para.push_back(std::string(1, static_cast<char>('a' + rng() % 26)));
      t.paragraphs.push_back(para);
    }
    std::size_t delta = 1 + rng() % 25;
    if (p < delta) {
      CHECK_THROWS_AS(build_windows(t, delta), TooFewParagraphsError);
      continue;
    }
    auto windows = build_windows(t, delta);
    REQUIRE(windows.size() == p - delta + 1);
    for (const auto& w : windows) {
      Strings expected;
      for (std::size_t j = w.index; j < w.index + delta; ++j)
        expected.insert(expected.end(), t.paragraphs[j].begin(), t.paragraphs[j].end());
      CHECK(w.terms == expected);
    }
  }
}

TEST_CASE("resource loaders") {
  fixture::TempDir dir;
  std::ofstream(dir.path() / "stop.txt") << "# comment\nthe\n\n  of \n";
  CHECK(load_stopwords(dir.path() / "stop.txt") == StopwordSet{"the", "of"});
  std::ofstream(dir.path() / "lemma.tsv") << "cats\tcat\r\n# c\n\nran\trun\n";
  auto table = load_lemma_table(dir.path() / "lemma.tsv");
  CHECK(table.size() == 2);
  CHECK(table.at("cats") == "cat");
  std::ofstream(dir.path() / "bad.tsv") << "ok\tfine\nbroken line\n";
  try {
    load_lemma_table(dir.path() / "bad.tsv");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  CHECK_THROWS_AS(load_stopwords(dir.path() / "missing"), Error);
}

TEST_CASE("bundled resources load") {
  auto stop = load_stopwords(default_stopwords_path());
  auto lemmas = load_lemma_table(default_lemma_table_path());
  CHECK(stop.contains("the"));
  CHECK(lemmas.at("cats") == "cat");
  CHECK(lemmas.size() > 10000);
}
