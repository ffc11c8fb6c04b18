#include "mesonet/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>

#include "mesonet/error.hpp"
#include "mesonet/io.hpp"
#include "mesonet/log.hpp"

namespace mesonet {
namespace {

bool valid_book_id(std::string_view id) {
  if (id.empty() || id == "." || id == "..") return false;
  return std::all_of(id.begin(), id.end(), [](unsigned char c) {
    return std::isalnum(c) || c == '_' || c == '-' || c == '.';
  });
}

std::string upper(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

enum class Sentinel { none, start, end };

Sentinel classify_line(std::string_view line) {
  std::string u = upper(line);
  if (u.find("PROJECT GUTENBERG") == std::string::npos) return Sentinel::none;
  if (u.find("START OF") != std::string::npos) return Sentinel::start;
  if (u.find("END OF") != std::string::npos) return Sentinel::end;
  return Sentinel::none;
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) {
      lines.push_back(text.substr(pos));
      break;
    }
    lines.push_back(text.substr(pos, nl - pos));
    pos = nl + 1;
  }
  return lines;
}

}  // namespace

bool ManifestEntry::is_url() const {
  return source.rfind("http://", 0) == 0 || source.rfind("https://", 0) == 0;
}

std::vector<ManifestEntry> parse_manifest(std::istream& in,
                                          const std::filesystem::path& base_dir) {
  std::vector<ManifestEntry> entries;
  std::set<std::string> seen;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  bool has_language = false;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
    auto trimmed = io::trim(line);
    if (trimmed.empty() || trimmed.front() == '#') continue;

    std::vector<std::string> fields;
    try {
      fields = io::split_csv_line(line);
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what(), line_no);
    }

    if (!have_header) {
      std::vector<std::string> expected{"book_id", "author", "title", "source"};
      if (fields.size() == 5 && fields[4] == "language") {
        has_language = true;
        fields.pop_back();
      }
      if (fields != expected) {
        throw ParseError("expected header 'book_id,author,title,source'", line_no);
      }
      have_header = true;
      continue;
    }

    const std::size_t want = has_language ? 5 : 4;
    if (fields.size() != want) {
      throw ParseError("expected " + std::to_string(want) + " fields, got " +
                           std::to_string(fields.size()),
                       line_no);
    }
    ManifestEntry e;
    e.book_id = fields[0];
    e.author = fields[1];
    e.title = fields[2];
    e.source = fields[3];
    if (has_language && !fields[4].empty()) e.language = fields[4];

    if (!valid_book_id(e.book_id)) {
      throw ParseError("invalid book_id '" + e.book_id +
                           "' (allowed: letters, digits, '_', '-', '.')",
                       line_no);
    }
    if (e.author.empty()) throw ParseError("empty author", line_no);
    if (e.source.empty()) throw ParseError("empty source", line_no);
    if (!seen.insert(e.book_id).second) throw DuplicateIdError(e.book_id);

    if (!e.is_url() && !base_dir.empty()) {
      std::filesystem::path p(e.source);
      if (p.is_relative()) e.source = (base_dir / p).lexically_normal().string();
    }
    entries.push_back(std::move(e));
  }
  if (!have_header) throw ParseError("missing header row", line_no + 1);
  return entries;
}

std::vector<ManifestEntry> load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open manifest '" + path.string() + "'");
  return parse_manifest(in, path.parent_path());
}

std::string format_manifest(const std::vector<ManifestEntry>& entries) {
  std::ostringstream out;
  out << "book_id,author,title,source,language\n";
  for (const auto& e : entries) {
    out << io::csv_field(e.book_id) << ',' << io::csv_field(e.author) << ','
        << io::csv_field(e.title) << ',' << io::csv_field(e.source) << ','
        << io::csv_field(e.language) << '\n';
  }
  return out.str();
}

std::filesystem::path default_cache_dir() {
  if (const char* env = std::getenv("MESONET_CACHE"); env && *env) return env;
  return ".mesonet-cache";
}

RawBook fetch_text(const ManifestEntry& entry,
                   const std::filesystem::path& cache_dir) {
  if (!valid_book_id(entry.book_id)) {
    throw FetchError("invalid book_id '" + entry.book_id + "'");
  }
  const std::filesystem::path cached = cache_dir / (entry.book_id + ".txt");

  std::string raw;
  std::error_code ec;
  if (std::filesystem::is_regular_file(cached, ec)) {
    raw = io::read_file(cached);
  } else {
    if (entry.is_url()) {
      raw = detail::http_get(entry.source);
    } else {
      if (!std::filesystem::is_regular_file(entry.source, ec)) {
        throw FetchError("missing file '" + entry.source + "' for book '" +
                         entry.book_id + "'");
      }
      raw = io::read_file(entry.source);
    }
    if (raw.empty()) {
      throw EmptyBodyError("source for book '" + entry.book_id + "' is empty");
    }
    io::write_file_atomic(cached, raw);
  }

  RawBook book;
  book.manifest = entry;
  book.body = strip_boilerplate(raw);
  if (book.body.empty()) {
    throw EmptyBodyError("book '" + entry.book_id + "' has an empty body");
  }
  auto mtime = std::filesystem::last_write_time(cached, ec);
  book.fetched_at = ec ? std::chrono::system_clock::now()
                       : std::chrono::file_clock::to_sys(mtime);
  return book;
}

std::string strip_boilerplate(std::string_view raw_text) {
  auto lines = split_lines(raw_text);
  std::optional<std::size_t> first_start;
  std::optional<std::size_t> last_end;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    Sentinel s = classify_line(lines[i]);
    if (s == Sentinel::start && !first_start) first_start = i;
    if (s == Sentinel::end) last_end = i;
  }
  if (!first_start || !last_end || *last_end <= *first_start) {
    log::warn("no Project Gutenberg START/END sentinel pair found; text left unchanged");
    return std::string(io::trim(raw_text));
  }
  std::string out;
  for (std::size_t i = *first_start + 1; i < *last_end; ++i) {
    if (classify_line(lines[i]) != Sentinel::none) continue;
    out.append(lines[i]);
    out.push_back('\n');
  }
  return std::string(io::trim(out));
}

}  // namespace mesonet
