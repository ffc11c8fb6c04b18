#ifndef MESONET_CORPUS_HPP
#define MESONET_CORPUS_HPP

#include <chrono>
#include <filesystem>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace mesonet {

// One row of a dataset manifest.
struct ManifestEntry {
  std::string book_id;
  std::string author;
  std::string title;
  // A local path (resolved against the manifest's directory at load time) or
  // an http(s) URL.
  std::string source;
  std::string language = "en";

  bool is_url() const;
  bool operator==(const ManifestEntry&) const = default;
};

// A book whose body has been stripped of Project Gutenberg boilerplate.
struct RawBook {
  ManifestEntry manifest;
  std::string body;
  std::chrono::system_clock::time_point fetched_at;
};

// Reads a manifest: a header row `book_id,author,title,source` (an optional
// trailing `language` column is accepted) followed by one comma-delimited row
// per book. Blank lines and lines starting with '#' are skipped.
//
// Throws ParseError (carrying the 1-based line number) on malformed rows and
// DuplicateIdError when a book_id repeats.
std::vector<ManifestEntry> load_manifest(const std::filesystem::path& path);
std::vector<ManifestEntry> parse_manifest(
    std::istream& in, const std::filesystem::path& base_dir = {});

// Writes a manifest that parse_manifest reads back unchanged.
std::string format_manifest(const std::vector<ManifestEntry>& entries);

// Directory used for the download cache when none is configured: the
// MESONET_CACHE environment variable, else ".mesonet-cache".
std::filesystem::path default_cache_dir();

// Returns the book, fetching its source on first use. The unmodified source
// bytes are cached as `<cache_dir>/<book_id>.txt`; later calls read the cache
// and never touch the network. Throws FetchError when the source cannot be
// read and EmptyBodyError when nothing remains after boilerplate stripping.
RawBook fetch_text(const ManifestEntry& entry,
                   const std::filesystem::path& cache_dir);

// Returns the text between the outermost Project Gutenberg "START OF" and
// "END OF" sentinel lines, trimmed. Sentinel lines left inside that span are
// dropped too, which keeps the function idempotent. Input without both
// sentinels is returned trimmed, with a warning.
std::string strip_boilerplate(std::string_view raw_text);

namespace detail {
// Downloads `url` into memory. Implemented on libcurl.
std::string http_get(const std::string& url);
}  // namespace detail

}  // namespace mesonet

#endif  // MESONET_CORPUS_HPP
