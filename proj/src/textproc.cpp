#include "mesonet/textproc.hpp"

#include <fstream>
#include <stdexcept>

#include "mesonet/error.hpp"
#include "mesonet/io.hpp"

namespace mesonet {
namespace {

// Decodes one UTF-8 code point starting at text[i]; advances i. Malformed
// bytes decode as U+FFFD.
char32_t next_code_point(std::string_view text, std::size_t& i) {
  auto byte = [&](std::size_t k) { return static_cast<unsigned char>(text[k]); };
  unsigned char c = byte(i);
  if (c < 0x80) {
    ++i;
    return c;
  }
  int extra = (c >= 0xF0) ? 3 : (c >= 0xE0) ? 2 : (c >= 0xC0) ? 1 : -1;
  if (extra < 0 || i + extra >= text.size()) {
    ++i;
    return 0xFFFD;
  }
  char32_t cp = c & (0x3F >> extra);
  for (int k = 1; k <= extra; ++k) {
    unsigned char cc = byte(i + k);
    if ((cc & 0xC0) != 0x80) {
      ++i;
      return 0xFFFD;
    }
    cp = (cp << 6) | (cc & 0x3F);
  }
  i += extra + 1;
  return cp;
}

bool is_letter(char32_t cp) {
  if (cp < 0x80) return (cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z');
  return cp >= 0xC0 && cp <= 0x24F && cp != 0xD7 && cp != 0xF7;
}

bool is_apostrophe(char32_t cp) { return cp == '\'' || cp == 0x2019; }

char32_t to_lower(char32_t cp) {
  if (cp >= 'A' && cp <= 'Z') return cp + 32;
  if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return cp + 32;
  return cp;
}

void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

}  // namespace

std::vector<std::string> segment_paragraphs(std::string_view body) {
  std::vector<std::string> paragraphs;
  std::string current;
  auto flush = [&] {
    if (!current.empty()) paragraphs.push_back(std::move(current));
    current.clear();
  };
  std::size_t pos = 0;
  while (pos <= body.size()) {
    std::size_t nl = body.find('\n', pos);
    std::string_view line = body.substr(
        pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    std::string_view t = io::trim(line);
    if (t.empty()) {
      flush();
    } else {
      if (!current.empty()) current.push_back(' ');
      current.append(t);
    }
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  flush();
  return paragraphs;
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<char32_t> cps;
  cps.reserve(text.size());
  for (std::size_t i = 0; i < text.size();) cps.push_back(next_code_point(text, i));

  std::vector<std::string> tokens;
  std::string current;
  for (std::size_t i = 0; i < cps.size(); ++i) {
    char32_t cp = cps[i];
    if (is_letter(cp)) {
      append_utf8(current, to_lower(cp));
    } else if (is_apostrophe(cp) && !current.empty() && i + 1 < cps.size() &&
               is_letter(cps[i + 1])) {
      current.push_back('\'');
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

TokenizedText preprocess(std::span<const std::string> paragraphs,
                         const StopwordSet& stopwords, const LemmaTable& lemmas,
                         std::string book_id) {
  TokenizedText out;
  out.book_id = std::move(book_id);
  for (const auto& paragraph : paragraphs) {
    std::vector<std::string> kept;
    for (auto& token : tokenize(paragraph)) {
      if (stopwords.contains(token)) continue;
      auto it = lemmas.find(token);
      kept.push_back(it == lemmas.end() ? std::move(token) : it->second);
    }
    if (!kept.empty()) out.paragraphs.push_back(std::move(kept));
  }
  return out;
}

std::vector<Window> build_windows(const TokenizedText& text, std::size_t delta) {
  if (delta == 0) throw std::invalid_argument("window size must be >= 1");
  const std::size_t p = text.paragraphs.size();
  if (p < delta) {
    throw TooFewParagraphsError(
        "book '" + text.book_id + "' has " + std::to_string(p) +
        " paragraphs, fewer than the window size " + std::to_string(delta));
  }
  std::vector<Window> windows;
  windows.reserve(p - delta + 1);
  for (std::size_t i = 0; i + delta <= p; ++i) {
    Window w;
    w.index = i;
    w.delta = delta;
    for (std::size_t j = i; j < i + delta; ++j) {
      const auto& para = text.paragraphs[j];
      w.terms.insert(w.terms.end(), para.begin(), para.end());
    }
    windows.push_back(std::move(w));
  }
  return windows;
}

StopwordSet load_stopwords(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open stopword file '" + path.string() + "'");
  StopwordSet words;
  std::string line;
  while (std::getline(in, line)) {
    auto t = io::trim(line);
    if (t.empty() || t.front() == '#') continue;
    words.emplace(t);
  }
  return words;
}

LemmaTable load_lemma_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open lemma table '" + path.string() + "'");
  LemmaTable table;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (io::trim(line).empty() || line.front() == '#') continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos) throw ParseError("expected 'inflected<TAB>lemma'", line_no);
    auto inflected = io::trim(std::string_view(line).substr(0, tab));
    auto lemma = io::trim(std::string_view(line).substr(tab + 1));
    if (inflected.empty() || lemma.empty()) throw ParseError("empty lemma table field", line_no);
    table.emplace(std::string(inflected), std::string(lemma));
  }
  return table;
}

std::filesystem::path default_stopwords_path() {
  return std::filesystem::path(MESONET_DATA_DIR) / "stopwords_en.txt";
}

std::filesystem::path default_lemma_table_path() {
  return std::filesystem::path(MESONET_DATA_DIR) / "lemmas_en.tsv";
}

}  // namespace mesonet
