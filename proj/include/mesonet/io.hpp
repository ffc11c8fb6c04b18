#ifndef MESONET_IO_HPP
#define MESONET_IO_HPP

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace mesonet::io {

std::string read_file(const std::filesystem::path& path);

// Writes to a sibling temporary file and renames it over `path`, so readers
// never observe a partial file. Parent directories are created.
void write_file_atomic(const std::filesystem::path& path,
                       std::string_view contents);

// Shortest decimal representation that round-trips to the same double.
std::string format_double(double value);

// Splits one CSV record. Fields may be double-quoted; inside quotes a doubled
// quote is a literal quote. Throws std::invalid_argument on an unterminated
// quote.
std::vector<std::string> split_csv_line(std::string_view line);

// Quotes a field only when it contains a comma, quote or newline.
std::string csv_field(std::string_view field);

std::string_view trim(std::string_view s);

}  // namespace mesonet::io

#endif  // MESONET_IO_HPP
