#include "tweetpol/corpus_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "tweetpol/csv.hpp"
#include "tweetpol/error.hpp"
#include "tweetpol/rng.hpp"

namespace tweetpol {

namespace {

using FieldMap = std::unordered_map<std::string, std::size_t>;

std::optional<std::string> json_field(const nlohmann::ordered_json& row, const std::string& key) {
  auto it = row.find(key);
  if (it == row.end() || it->is_null()) return std::nullopt;
  if (it->is_string()) return it->get<std::string>();
  return it->dump();
}

std::optional<std::string> csv_field(const csv::Row& row, const FieldMap& columns,
                                     const std::string& key) {
  auto it = columns.find(key);
  if (it == columns.end()) return std::nullopt;
  return row[it->second];
}

std::optional<std::uint64_t> parse_count(const std::optional<std::string>& raw) {
  if (!raw || raw->empty()) return std::nullopt;
  std::uint64_t value = 0;
  const char* first = raw->data();
  const char* last = first + raw->size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec == std::errc() && ptr == last) return value;
  // counts exported as floats, e.g. "5.0"
  double d = 0.0;
  auto [dptr, dec] = std::from_chars(first, last, d);
  if (dec == std::errc() && dptr == last && d >= 0.0 && std::floor(d) == d) {
    return static_cast<std::uint64_t>(d);
  }
  return std::nullopt;
}

FieldMap index_header(const csv::Row& header) {
  FieldMap columns;
  for (std::size_t i = 0; i < header.size(); ++i) columns.emplace(header[i], i);
  return columns;
}

void require_field(bool present, const std::string& field, const std::filesystem::path& path) {
  if (!present) {
    throw Error(ErrorCode::UnknownField,
                "field '" + field + "' not found in " + path.string());
  }
}

template <typename Getter>
void fill_metadata(TextRecord& record, Getter&& get) {
  record.created_at = get("created_at");
  record.last_updated = get("last_updated");
  record.engagement.quote_count = parse_count(get("quote_count"));
  record.engagement.reply_count = parse_count(get("reply_count"));
  record.engagement.retweet_count = parse_count(get("retweet_count"));
  record.engagement.favorite_count = parse_count(get("favorite_count"));
}

void report_skips(std::ostream* diagnostics, const std::filesystem::path& path, std::size_t rows,
                  std::size_t skipped) {
  if (diagnostics != nullptr && skipped > 0) {
    *diagnostics << "warning: " << path.string() << ": skipped " << skipped << " of " << rows
                 << " rows (empty text or unmapped label)\n";
  }
}

nlohmann::ordered_json parse_json_line(const std::string& line, std::size_t row_index) {
  nlohmann::ordered_json row;
  try {
    row = nlohmann::ordered_json::parse(line);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::MalformedRow, "row " + std::to_string(row_index) + ": " + e.what());
  }
  if (!row.is_object()) {
    throw Error(ErrorCode::MalformedRow, "row " + std::to_string(row_index) + ": not a JSON object");
  }
  return row;
}

template <typename Fn>
void for_each_jsonl_line(const std::string& content, Fn&& fn) {
  std::istringstream in(content);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    fn(line);
  }
}

}  // namespace

Format parse_format(std::string_view name) {
  if (name == "csv") return Format::Csv;
  if (name == "jsonl") return Format::Jsonl;
  throw Error(ErrorCode::InvalidArgument, "unknown format '" + std::string(name) + "'");
}

std::string_view to_string(Format format) noexcept {
  return format == Format::Csv ? "csv" : "jsonl";
}

std::string read_file(const std::filesystem::path& path) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec)) {
    throw Error(ErrorCode::FileNotFound, path.string());
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return std::move(buffer).str();
}

std::map<std::string, Label> parse_label_map(std::string_view spec) {
  std::map<std::string, Label> mapping;
  std::size_t start = 0;
  while (start <= spec.size()) {
    const std::size_t end = std::min(spec.find(',', start), spec.size());
    std::string_view item = spec.substr(start, end - start);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    const std::size_t colon = item.rfind(':');
    if (colon == std::string_view::npos || colon == 0) {
      throw Error(ErrorCode::InvalidArgument, "bad label map entry '" + std::string(item) + "'");
    }
    const std::string_view label = item.substr(colon + 1);
    if (label != "0" && label != "1") {
      throw Error(ErrorCode::InvalidArgument, "label must be 0 or 1 in '" + std::string(item) + "'");
    }
    mapping[std::string(item.substr(0, colon))] = label == "1" ? 1 : 0;
    start = end + 1;
  }
  if (mapping.empty()) throw Error(ErrorCode::InvalidArgument, "empty label map");
  return mapping;
}

LabeledDataset load_labeled(const std::filesystem::path& path, const LabeledLoadOptions& options,
                            std::ostream* diagnostics) {
  const std::string content = read_file(path);
  LabeledDataset dataset;

  auto accept = [&](std::optional<std::string> text, std::optional<std::string> raw_label,
                    std::optional<std::string> id, std::size_t row_index) {
    ++dataset.rows_read;
    if (!text || text->empty() || !raw_label) {
      ++dataset.skipped;
      return;
    }
    auto mapped = options.label_map.find(*raw_label);
    if (mapped == options.label_map.end()) {
      ++dataset.skipped;
      return;
    }
    TextRecord record;
    record.id = id.value_or(std::to_string(row_index));
    record.text = std::move(*text);
    record.label = mapped->second;
    record.source_row = row_index;
    dataset.records.push_back(std::move(record));
  };

  if (options.format == Format::Csv) {
    csv::Reader reader(content);
    auto header = reader.next();
    if (!header) throw Error(ErrorCode::UnknownField, path.string() + " has no header row");
    const FieldMap columns = index_header(*header);
    require_field(columns.count(options.text_field) != 0, options.text_field, path);
    require_field(columns.count(options.label_field) != 0, options.label_field, path);
    std::size_t row_index = 0;
    while (auto row = reader.next()) {
      if (row->size() != header->size()) {
        throw Error(ErrorCode::MalformedRow,
                    "row " + std::to_string(row_index) + ": expected " +
                        std::to_string(header->size()) + " fields, got " +
                        std::to_string(row->size()));
      }
      accept(csv_field(*row, columns, options.text_field),
             csv_field(*row, columns, options.label_field),
             csv_field(*row, columns, options.id_field), row_index);
      ++row_index;
    }
  } else {
    std::size_t row_index = 0;
    for_each_jsonl_line(content, [&](const std::string& line) {
      const auto row = parse_json_line(line, row_index);
      if (row_index == 0) {
        require_field(row.contains(options.text_field), options.text_field, path);
        require_field(row.contains(options.label_field), options.label_field, path);
      }
      accept(json_field(row, options.text_field), json_field(row, options.label_field),
             json_field(row, options.id_field), row_index);
      ++row_index;
    });
  }

  report_skips(diagnostics, path, dataset.rows_read, dataset.skipped);
  return dataset;
}

Corpus load_corpus(const std::filesystem::path& path, Format format, const std::string& text_field,
                   std::ostream* diagnostics) {
  const std::string content = read_file(path);
  Corpus corpus;
  corpus.format = format;

  if (format == Format::Csv) {
    csv::Reader reader(content);
    auto header = reader.next();
    if (!header) throw Error(ErrorCode::UnknownField, path.string() + " has no header row");
    const FieldMap columns = index_header(*header);
    require_field(columns.count(text_field) != 0, text_field, path);
    corpus.columns = *header;
    while (auto row = reader.next()) {
      const std::size_t row_index = corpus.csv_rows.size();
      if (row->size() != header->size()) {
        throw Error(ErrorCode::MalformedRow,
                    "row " + std::to_string(row_index) + ": expected " +
                        std::to_string(header->size()) + " fields, got " +
                        std::to_string(row->size()));
      }
      ++corpus.rows_read;
      auto get = [&](const std::string& key) { return csv_field(*row, columns, key); };
      auto text = get(text_field);
      if (text && !text->empty()) {
        TextRecord record;
        record.id = get("tweet_id").value_or(std::to_string(row_index));
        record.text = std::move(*text);
        record.source_row = row_index;
        fill_metadata(record, get);
        corpus.records.push_back(std::move(record));
      } else {
        ++corpus.skipped;
      }
      corpus.csv_rows.push_back(std::move(*row));
    }
  } else {
    for_each_jsonl_line(content, [&](const std::string& line) {
      const std::size_t row_index = corpus.json_rows.size();
      auto row = parse_json_line(line, row_index);
      if (row_index == 0) require_field(row.contains(text_field), text_field, path);
      ++corpus.rows_read;
      auto get = [&](const std::string& key) { return json_field(row, key); };
      auto text = get(text_field);
      if (text && !text->empty()) {
        TextRecord record;
        record.id = get("tweet_id").value_or(std::to_string(row_index));
        record.text = std::move(*text);
        record.source_row = row_index;
        fill_metadata(record, get);
        corpus.records.push_back(std::move(record));
      } else {
        ++corpus.skipped;
      }
      corpus.json_rows.push_back(std::move(row));
    });
  }

  if (diagnostics != nullptr && corpus.skipped > 0) {
    *diagnostics << "warning: " << path.string() << ": skipped " << corpus.skipped << " of "
                 << corpus.rows_read << " rows (empty text)\n";
  }
  return corpus;
}

std::size_t train_size(std::size_t n, double train_fraction) {
  return static_cast<std::size_t>(std::floor(train_fraction * static_cast<double>(n) + 0.5));
}

std::pair<LabeledDataset, LabeledDataset> split(const LabeledDataset& dataset,
                                                const SplitConfig& config) {
  if (dataset.records.empty()) throw Error(ErrorCode::EmptyDataset, "cannot split an empty dataset");
  if (!(config.train_fraction > 0.0 && config.train_fraction <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "train fraction must be in (0, 1]");
  }
  if (dataset.records.size() > 0xFFFFFFFFULL) {
    throw Error(ErrorCode::InvalidArgument, "dataset too large for 32-bit shuffle");
  }
  Pcg32 rng(config.seed);
  const auto order = shuffled_indices(dataset.records.size(), rng);
  const std::size_t n_train = train_size(dataset.records.size(), config.train_fraction);

  LabeledDataset train;
  LabeledDataset test;
  train.label_names = test.label_names = dataset.label_names;
  train.records.reserve(n_train);
  test.records.reserve(order.size() - n_train);
  for (std::size_t k = 0; k < order.size(); ++k) {
    (k < n_train ? train : test).records.push_back(dataset.records[order[k]]);
  }
  train.rows_read = train.records.size();
  test.rows_read = test.records.size();
  return {std::move(train), std::move(test)};
}

}  // namespace tweetpol
