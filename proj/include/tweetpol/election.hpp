#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "tweetpol/corpus_io.hpp"
#include "tweetpol/pipeline.hpp"

namespace tweetpol::election {

/// Party name -> lowercase keywords, in file order. A tweet belongs to every
/// party with at least one keyword among its tokens or @handles.
struct PartyConfig {
  std::vector<std::pair<std::string, std::vector<std::string>>> parties;

  /// Throws InvalidConfig on no parties, an empty keyword list, or a keyword
  /// that is empty, not lowercase, or contains whitespace.
  void validate() const;
  std::vector<std::string> names() const;

  static PartyConfig from_json(const nlohmann::ordered_json& document);
  static PartyConfig load(const std::filesystem::path& path);
  /// BJP / INC keyword sets used when no config file is given.
  static PartyConfig defaults();
};

struct AnnotatedTweet {
  TextRecord record;
  Label sentiment = 0;
  Label sarcastic = 0;
  Label effective_sentiment = 0;  // sentiment XOR sarcastic
  std::vector<std::string> parties;
};

/// Polarity after the sarcasm flip: a sarcastic tweet's predicted sentiment is inverted.
constexpr Label flip_for_sarcasm(Label sentiment, Label sarcastic) noexcept {
  return sentiment ^ sarcastic;
}

/// Parties whose keywords appear among `tokens`, in config order.
std::vector<std::string> attribute(const PartyConfig& config, std::span<const std::string> tokens);

/// Throws EmptyCorpus for an empty corpus. Order-preserving.
std::vector<AnnotatedTweet> annotate(std::span<const TextRecord> corpus,
                                     const ClassifierPipeline& sentiment,
                                     const ClassifierPipeline& sarcasm, const PartyConfig& config);

enum class Mode { Raw, SarcasmAdjusted };
std::string_view to_string(Mode mode) noexcept;

struct PartyAggregate {
  std::string party;
  Mode mode = Mode::Raw;
  std::uint64_t pos = 0;
  std::uint64_t neg = 0;
  std::uint64_t attributed_total = 0;
  std::uint64_t corpus_total = 0;
  double pos_pct = 0.0;  // of the whole corpus
  double neg_pct = 0.0;
  std::optional<double> pos_neg_ratio;  // undefined when neg == 0
  std::optional<double> pos_share_pct;  // undefined when pos + neg == 0
};

PartyAggregate make_aggregate(std::string party, Mode mode, std::uint64_t pos, std::uint64_t neg,
                              std::uint64_t corpus_total);

/// One aggregate per party in `parties`, unattributed tweets count only toward
/// corpus_total. Throws EmptyInput for an empty input.
std::vector<PartyAggregate> aggregate(std::span<const AnnotatedTweet> annotated,
                                      std::span<const std::string> parties, Mode mode);

/// "1.94", "inf" (pos > 0, neg == 0) or "undefined".
std::string format_ratio(const PartyAggregate& a);

enum class ChartKind { Pie, Bar };

struct ChartPoint {
  std::string category;
  std::optional<double> value;  // nullopt = undefined, drawn as a labelled gap
};

struct ChartSpec {
  std::string id;  // file stem
  std::string title;
  ChartKind kind = ChartKind::Pie;
  std::string unit;  // "%" or ""
  std::vector<ChartPoint> points;
  std::vector<std::string> notes;
};

struct AnalysisReport {
  std::string summary;
  nlohmann::ordered_json results;
  std::vector<ChartSpec> charts;
};

/// Pie slices: each party's positive and negative share of the corpus plus an
/// "other/unattributed" remainder, summing to 100. If multi-party overlap
/// pushes party slices past 100 they are rescaled to 100 with a note.
ChartSpec popularity_pie(std::span<const PartyAggregate> aggregates, Mode mode);
ChartSpec ratio_bars(std::span<const PartyAggregate> aggregates, Mode mode);
ChartSpec share_bars(std::span<const PartyAggregate> aggregates, Mode mode);

/// Tables for both modes plus three charts per mode. An empty `adjusted`
/// yields a raw-only report with a notice.
AnalysisReport build_report(std::span<const PartyAggregate> raw,
                            std::span<const PartyAggregate> adjusted);

}  // namespace tweetpol::election
