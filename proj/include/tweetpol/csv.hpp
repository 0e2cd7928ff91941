#pragma once

// Minimal RFC-4180 reader/writer: comma separated, double-quote quoting,
// doubled quotes inside quoted fields, LF or CRLF record ends.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tweetpol::csv {

using Row = std::vector<std::string>;

class Reader {
 public:
  explicit Reader(std::string content) : data_(std::move(content)) {}

  // Next record, or nullopt at end of input. Lines that are completely empty
  // are not records. Throws Error(MalformedRow) on an unterminated quoted
  // field or garbage after a closing quote.
  std::optional<Row> next();

  // 1-based record number of the row most recently returned.
  std::size_t record_number() const noexcept { return records_; }

 private:
  std::string data_;
  std::size_t pos_ = 0;
  std::size_t records_ = 0;
};

std::string quote_if_needed(std::string_view field);
std::string format_row(const Row& row);

}  // namespace tweetpol::csv
