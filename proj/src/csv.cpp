#include "tweetpol/csv.hpp"

#include "tweetpol/error.hpp"

namespace tweetpol::csv {

std::optional<Row> Reader::next() {
  // skip blank lines
  while (pos_ < data_.size() && (data_[pos_] == '\n' || data_[pos_] == '\r')) ++pos_;
  if (pos_ >= data_.size()) return std::nullopt;
  ++records_;

  Row row;
  std::string field;
  const std::size_t n = data_.size();
  for (;;) {
    field.clear();
    if (pos_ < n && data_[pos_] == '"') {
      ++pos_;
      for (;;) {
        if (pos_ >= n) {
          throw Error(ErrorCode::MalformedRow,
                      "record " + std::to_string(records_) + ": unterminated quoted field");
        }
        const char c = data_[pos_++];
        if (c == '"') {
          if (pos_ < n && data_[pos_] == '"') {
            field.push_back('"');
            ++pos_;
          } else {
            break;
          }
        } else {
          field.push_back(c);
        }
      }
      if (pos_ < n && data_[pos_] != ',' && data_[pos_] != '\n' && data_[pos_] != '\r') {
        throw Error(ErrorCode::MalformedRow,
                    "record " + std::to_string(records_) + ": characters after closing quote");
      }
    } else {
      while (pos_ < n && data_[pos_] != ',' && data_[pos_] != '\n' && data_[pos_] != '\r') {
        field.push_back(data_[pos_++]);
      }
    }
    row.push_back(field);
    if (pos_ < n && data_[pos_] == ',') {
      ++pos_;
      continue;
    }
    if (pos_ < n && data_[pos_] == '\r') ++pos_;
    if (pos_ < n && data_[pos_] == '\n') ++pos_;
    return row;
  }
}

std::string quote_if_needed(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out;
  out.reserve(field.size() + 2);
  out.push_back('"');
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string format_row(const Row& row) {
  std::string line;
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i != 0) line.push_back(',');
    line += quote_if_needed(row[i]);
  }
  line.push_back('\n');
  return line;
}

}  // namespace tweetpol::csv
