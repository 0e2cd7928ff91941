#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

namespace tweetpol {

enum class Format { Csv, Jsonl };

Format parse_format(std::string_view name);
std::string_view to_string(Format format) noexcept;

/// Binary class label. Only 0 and 1 ever appear.
using Label = int;

struct Engagement {
  std::optional<std::uint64_t> quote_count;
  std::optional<std::uint64_t> reply_count;
  std::optional<std::uint64_t> retweet_count;
  std::optional<std::uint64_t> favorite_count;
};

/// One document. `source_row` is the 0-based data row it came from, used to
/// write annotated copies of the input.
struct TextRecord {
  std::string id;
  std::string text;
  std::optional<Label> label;
  std::optional<std::string> created_at;
  std::optional<std::string> last_updated;
  Engagement engagement;
  std::size_t source_row = 0;
};

struct LabeledDataset {
  std::vector<TextRecord> records;
  std::array<std::string, 2> label_names{"negative", "positive"};
  std::size_t rows_read = 0;
  std::size_t skipped = 0;
};

struct LabeledLoadOptions {
  Format format = Format::Csv;
  std::string text_field = "text";
  std::string label_field = "label";
  std::map<std::string, Label> label_map{{"0", 0}, {"1", 1}};
  // Optional; when the column exists its value becomes the record id,
  // otherwise the 0-based row index is used.
  std::string id_field = "id";
};

/// Parses "raw:label,raw:label" (e.g. "0:0,4:1").
std::map<std::string, Label> parse_label_map(std::string_view spec);

LabeledDataset load_labeled(const std::filesystem::path& path, const LabeledLoadOptions& options,
                            std::ostream* diagnostics = nullptr);

/// Unlabeled corpus plus the untouched input rows so annotated copies can
/// carry every original field.
struct Corpus {
  Format format = Format::Csv;
  std::vector<TextRecord> records;
  std::vector<std::string> columns;                 // CSV header
  std::vector<std::vector<std::string>> csv_rows;   // CSV data rows
  std::vector<nlohmann::ordered_json> json_rows;    // JSONL objects
  std::size_t rows_read = 0;
  std::size_t skipped = 0;
};

Corpus load_corpus(const std::filesystem::path& path, Format format,
                   const std::string& text_field = "full_text", std::ostream* diagnostics = nullptr);

struct SplitConfig {
  double train_fraction = 0.7;
  std::uint64_t seed = 42;
};

/// round-half-up of fraction * n.
std::size_t train_size(std::size_t n, double train_fraction);

/// Seeded Fisher-Yates partition; both halves keep the shuffled order.
std::pair<LabeledDataset, LabeledDataset> split(const LabeledDataset& dataset,
                                                const SplitConfig& config);

std::string read_file(const std::filesystem::path& path);

}  // namespace tweetpol
