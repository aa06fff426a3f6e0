#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace hiersum {

/// Decodes bytes as UTF-8, substituting U+FFFD for every invalid sequence.
std::string decode_utf8_lossy(std::string_view bytes);

/// Splits on LF, CRLF or CR. A trailing line terminator does not open a new
/// line, so "" and "a\n" both yield one line.
std::vector<std::string> split_lines(std::string_view text);

/// Joins lines[first-1 .. last-1] (1-based, inclusive) with '\n'.
std::string join_lines(const std::vector<std::string>& lines, int first, int last);

std::string sha256_hex(std::string_view data);

std::string read_file_bytes(const std::filesystem::path& path);

/// Writes to a sibling temp file and renames it into place.
void write_file_atomic(const std::filesystem::path& path, std::string_view data);

/// Current UTC time as ISO-8601 with second precision.
std::string utc_timestamp();

std::string to_lower_ascii(std::string_view s);
std::string trim(std::string_view s);
std::string indent_lines(std::string_view text, std::string_view prefix);

}  // namespace hiersum
