#ifndef MESONET_TEXTPROC_HPP
#define MESONET_TEXTPROC_HPP

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace mesonet {

using StopwordSet = std::unordered_set<std::string>;
using LemmaTable = std::unordered_map<std::string, std::string>;

// A book as an ordered list of non-empty paragraphs of lemmas.
struct TokenizedText {
  std::string book_id;
  std::vector<std::vector<std::string>> paragraphs;
};

// Delta consecutive paragraphs p_index .. p_{index+delta-1}, flattened.
struct Window {
  std::size_t index = 0;
  std::size_t delta = 1;
  std::vector<std::string> terms;
};

// Splits on runs of blank lines; lines inside a paragraph are trimmed and
// joined with single spaces. Empty paragraphs are dropped.
std::vector<std::string> segment_paragraphs(std::string_view body);

// Lowercased maximal alphabetic runs. An apostrophe (ASCII or U+2019) is
// kept only between two letters ("don't"); Latin-1 letters count as letters.
std::vector<std::string> tokenize(std::string_view text);

// Tokenizes each paragraph, removes stopwords, then maps the survivors
// through `lemmas` (identity when absent). Paragraphs left empty are dropped.
TokenizedText preprocess(std::span<const std::string> paragraphs,
                         const StopwordSet& stopwords, const LemmaTable& lemmas,
                         std::string book_id = {});

// All windows of `delta` consecutive paragraphs with stride 1: exactly
// P - delta + 1 of them. Throws TooFewParagraphsError when P < delta and
// std::invalid_argument when delta == 0.
std::vector<Window> build_windows(const TokenizedText& text, std::size_t delta);

// One lowercase word per line; blank lines and '#' comments ignored.
StopwordSet load_stopwords(const std::filesystem::path& path);
// `inflected<TAB>lemma` per line.
LemmaTable load_lemma_table(const std::filesystem::path& path);

std::filesystem::path default_stopwords_path();
std::filesystem::path default_lemma_table_path();

}  // namespace mesonet

#endif  // MESONET_TEXTPROC_HPP
