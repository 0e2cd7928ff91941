#include "tweetpol/election.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <unordered_map>

#include "tweetpol/error.hpp"
#include "tweetpol/textprep.hpp"

namespace tweetpol::election {

namespace {

std::string pct2(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f%%", value);
  return buf;
}

std::string mode_title(Mode mode) {
  return mode == Mode::Raw ? "without sarcasm handling" : "with sarcasm handling";
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return lines;
}

std::string pad_right(const std::string& s, std::size_t width) {
  return s.size() >= width ? s + " " : s + std::string(width - s.size(), ' ');
}

nlohmann::ordered_json optional_json(const std::optional<double>& v) {
  return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
}

nlohmann::ordered_json aggregate_json(const PartyAggregate& a) {
  return {{"party", a.party},
          {"pos", a.pos},
          {"neg", a.neg},
          {"attributed_total", a.attributed_total},
          {"corpus_total", a.corpus_total},
          {"pos_pct", a.pos_pct},
          {"neg_pct", a.neg_pct},
          {"pos_neg_ratio", optional_json(a.pos_neg_ratio)},
          {"pos_neg_ratio_display", format_ratio(a)},
          {"pos_share_pct", optional_json(a.pos_share_pct)}};
}

nlohmann::ordered_json chart_json(const ChartSpec& chart) {
  nlohmann::ordered_json points = nlohmann::ordered_json::array();
  for (const auto& p : chart.points) {
    points.push_back({{"category", p.category}, {"value", optional_json(p.value)}});
  }
  return {{"id", chart.id},
          {"title", chart.title},
          {"kind", chart.kind == ChartKind::Pie ? "pie" : "bar"},
          {"unit", chart.unit},
          {"points", std::move(points)},
          {"notes", chart.notes}};
}

std::string mode_suffix(Mode mode) { return mode == Mode::Raw ? "raw" : "sarcasm_adjusted"; }

}  // namespace

void PartyConfig::validate() const {
  if (parties.empty()) throw Error(ErrorCode::InvalidConfig, "party config lists no parties");
  for (const auto& [name, keywords] : parties) {
    if (name.empty()) throw Error(ErrorCode::InvalidConfig, "party with an empty name");
    if (keywords.empty()) {
      throw Error(ErrorCode::InvalidConfig, "party '" + name + "' has no keywords");
    }
    for (const auto& keyword : keywords) {
      const auto tokens = textprep::tokenize(keyword);
      const bool word = tokens.size() == 1 && tokens.front() == keyword &&
                        textprep::normalize(keyword) == keyword;
      const bool handle = !keyword.empty() && std::all_of(keyword.begin(), keyword.end(), [](char c) {
        return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
      });
      if (!word && !handle) {
        throw Error(ErrorCode::InvalidConfig, "party '" + name + "' keyword '" + keyword +
                                                  "' must be a single lowercase token");
      }
    }
  }
}

std::vector<std::string> PartyConfig::names() const {
  std::vector<std::string> out;
  out.reserve(parties.size());
  for (const auto& entry : parties) out.push_back(entry.first);
  return out;
}

PartyConfig PartyConfig::from_json(const nlohmann::ordered_json& document) {
  if (!document.is_object()) {
    throw Error(ErrorCode::InvalidConfig, "party config must map party names to keyword lists");
  }
  PartyConfig config;
  for (const auto& [name, keywords] : document.items()) {
    if (!keywords.is_array()) {
      throw Error(ErrorCode::InvalidConfig, "keywords of '" + name + "' must be a list");
    }
    std::vector<std::string> list;
    for (const auto& k : keywords) {
      if (!k.is_string()) throw Error(ErrorCode::InvalidConfig, "keywords must be strings");
      list.push_back(k.get<std::string>());
    }
    config.parties.emplace_back(name, std::move(list));
  }
  config.validate();
  return config;
}

PartyConfig PartyConfig::load(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  nlohmann::ordered_json document;
  try {
    document = nlohmann::ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidConfig, path.string() + ": " + e.what());
  }
  return from_json(document);
}

PartyConfig PartyConfig::defaults() {
  PartyConfig config;
  config.parties = {
      {"BJP",
       {"bjp", "bjp4india", "modi", "narendramodi", "namo", "modiji", "chowkidar", "amitshah",
        "nda", "jaitley", "yogi"}},
      {"INC",
       {"inc", "incindia", "congress", "rahul", "rahulgandhi", "raga", "priyanka",
        "priyankagandhi", "sonia", "upa"}},
  };
  return config;
}

std::vector<std::string> attribute(const PartyConfig& config, std::span<const std::string> tokens) {
  std::vector<std::string> matched;
  for (const auto& [name, keywords] : config.parties) {
    bool hit = false;
    for (const auto& token : tokens) {
      for (const auto& keyword : keywords) {
        if (token == keyword) {
          hit = true;
          break;
        }
      }
      if (hit) break;
    }
    if (hit) matched.push_back(name);
  }
  return matched;
}

std::vector<AnnotatedTweet> annotate(std::span<const TextRecord> corpus,
                                     const ClassifierPipeline& sentiment,
                                     const ClassifierPipeline& sarcasm, const PartyConfig& config) {
  if (corpus.empty()) throw Error(ErrorCode::EmptyCorpus, "no tweets to annotate");
  std::vector<AnnotatedTweet> out;
  out.reserve(corpus.size());
  for (const auto& record : corpus) {
    AnnotatedTweet tweet;
    tweet.record = record;
    auto tokens = textprep::analyze(record.text);
    tweet.sentiment = sentiment.predict_tokens(tokens);
    tweet.sarcastic = sarcasm.predict_tokens(tokens);
    tweet.effective_sentiment = flip_for_sarcasm(tweet.sentiment, tweet.sarcastic);
    for (auto& handle : textprep::extract_mentions(record.text)) tokens.push_back(std::move(handle));
    tweet.parties = attribute(config, tokens);
    out.push_back(std::move(tweet));
  }
  return out;
}

std::string_view to_string(Mode mode) noexcept {
  return mode == Mode::Raw ? "raw" : "sarcasm_adjusted";
}

PartyAggregate make_aggregate(std::string party, Mode mode, std::uint64_t pos, std::uint64_t neg,
                              std::uint64_t corpus_total) {
  PartyAggregate a;
  a.party = std::move(party);
  a.mode = mode;
  a.pos = pos;
  a.neg = neg;
  a.attributed_total = pos + neg;
  a.corpus_total = corpus_total;
  if (corpus_total > 0) {
    a.pos_pct = 100.0 * static_cast<double>(pos) / static_cast<double>(corpus_total);
    a.neg_pct = 100.0 * static_cast<double>(neg) / static_cast<double>(corpus_total);
  }
  if (neg > 0) a.pos_neg_ratio = static_cast<double>(pos) / static_cast<double>(neg);
  if (pos + neg > 0) {
    a.pos_share_pct = 100.0 * static_cast<double>(pos) / static_cast<double>(pos + neg);
  }
  return a;
}

std::vector<PartyAggregate> aggregate(std::span<const AnnotatedTweet> annotated,
                                      std::span<const std::string> parties, Mode mode) {
  if (annotated.empty()) throw Error(ErrorCode::EmptyInput, "no annotated tweets");
  std::unordered_map<std::string, std::size_t> slot;
  for (std::size_t k = 0; k < parties.size(); ++k) slot.emplace(parties[k], k);
  std::vector<std::uint64_t> pos(parties.size(), 0);
  std::vector<std::uint64_t> neg(parties.size(), 0);
  for (const auto& tweet : annotated) {
    const Label polarity = mode == Mode::Raw ? tweet.sentiment : tweet.effective_sentiment;
    for (const auto& party : tweet.parties) {
      auto it = slot.find(party);
      if (it == slot.end()) continue;
      (polarity == 1 ? pos : neg)[it->second] += 1;
    }
  }
  std::vector<PartyAggregate> out;
  out.reserve(parties.size());
  for (std::size_t k = 0; k < parties.size(); ++k) {
    out.push_back(make_aggregate(parties[k], mode, pos[k], neg[k], annotated.size()));
  }
  return out;
}

std::string format_ratio(const PartyAggregate& a) {
  if (a.pos_neg_ratio) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", *a.pos_neg_ratio);
    return buf;
  }
  return a.pos > 0 ? "inf" : "undefined";
}

ChartSpec popularity_pie(std::span<const PartyAggregate> aggregates, Mode mode) {
  ChartSpec chart;
  chart.id = "popularity_spread_" + mode_suffix(mode);
  chart.title = "Popularity spread of tweets " + mode_title(mode);
  chart.kind = ChartKind::Pie;
  chart.unit = "%";
  double party_sum = 0.0;
  for (const auto& a : aggregates) party_sum += a.pos_pct + a.neg_pct;
  const bool overlap = party_sum > 100.0;
  const double factor = overlap ? 100.0 / party_sum : 1.0;
  double used = 0.0;
  for (const auto& a : aggregates) {
    chart.points.push_back({a.party + " positive", a.pos_pct * factor});
    chart.points.push_back({a.party + " negative", a.neg_pct * factor});
    used += a.pos_pct * factor + a.neg_pct * factor;
  }
  chart.points.push_back({"other/unattributed", overlap ? 0.0 : 100.0 - used});
  if (overlap) {
    chart.notes.push_back("multi-party attribution exceeds 100% of the corpus; party slices rescaled");
  }
  return chart;
}

ChartSpec ratio_bars(std::span<const PartyAggregate> aggregates, Mode mode) {
  ChartSpec chart;
  chart.id = "pos_neg_ratio_" + mode_suffix(mode);
  chart.title = "Ratio of positive to negative tweets " + mode_title(mode);
  chart.kind = ChartKind::Bar;
  for (const auto& a : aggregates) {
    chart.points.push_back({a.party, a.pos_neg_ratio});
    if (!a.pos_neg_ratio) chart.notes.push_back(a.party + ": ratio " + format_ratio(a));
  }
  return chart;
}

ChartSpec share_bars(std::span<const PartyAggregate> aggregates, Mode mode) {
  ChartSpec chart;
  chart.id = "positive_share_" + mode_suffix(mode);
  chart.title = "Percentage of positive tweets per party " + mode_title(mode);
  chart.kind = ChartKind::Bar;
  chart.unit = "%";
  for (const auto& a : aggregates) {
    chart.points.push_back({a.party, a.pos_share_pct});
    if (!a.pos_share_pct) chart.notes.push_back(a.party + ": no attributed tweets");
  }
  return chart;
}

AnalysisReport build_report(std::span<const PartyAggregate> raw,
                            std::span<const PartyAggregate> adjusted) {
  AnalysisReport report;
  const bool has_adjusted = !adjusted.empty();
  const std::uint64_t corpus_total = raw.empty() ? 0 : raw.front().corpus_total;

  auto find_adjusted = [&](const std::string& party) -> const PartyAggregate* {
    for (const auto& a : adjusted) {
      if (a.party == party) return &a;
    }
    return nullptr;
  };
  auto share = [](const PartyAggregate* a) {
    return a && a->pos_share_pct ? pct2(*a->pos_share_pct) : std::string("undefined");
  };

  std::ostringstream out;
  constexpr std::size_t w = 16;
  out << "Polarity percentage of tweets with respect to total tweets (corpus: " << corpus_total
      << ")\n";
  out << pad_right("Party", 8) << pad_right("Pos (raw)", w);
  if (has_adjusted) out << pad_right("Pos (sarcasm)", w);
  out << pad_right("Neg (raw)", w);
  if (has_adjusted) out << pad_right("Neg (sarcasm)", w);
  out << "\n";
  for (const auto& a : raw) {
    const PartyAggregate* b = find_adjusted(a.party);
    out << pad_right(a.party, 8) << pad_right(pct2(a.pos_pct), w);
    if (has_adjusted) out << pad_right(b ? pct2(b->pos_pct) : "-", w);
    out << pad_right(pct2(a.neg_pct), w);
    if (has_adjusted) out << pad_right(b ? pct2(b->neg_pct) : "-", w);
    out << "\n";
  }
  out << "\nPositive:negative polarity ratio\n";
  out << pad_right("Party", 8) << pad_right("raw", w);
  if (has_adjusted) out << pad_right("sarcasm", w);
  out << "\n";
  for (const auto& a : raw) {
    out << pad_right(a.party, 8) << pad_right(format_ratio(a), w);
    if (has_adjusted) {
      const PartyAggregate* b = find_adjusted(a.party);
      out << pad_right(b ? format_ratio(*b) : "-", w);
    }
    out << "\n";
  }
  out << "\nPercentage of positive tweets per party\n";
  out << pad_right("Party", 8) << pad_right("raw", w);
  if (has_adjusted) out << pad_right("sarcasm", w);
  out << "\n";
  for (const auto& a : raw) {
    out << pad_right(a.party, 8) << pad_right(share(&a), w);
    if (has_adjusted) out << pad_right(share(find_adjusted(a.party)), w);
    out << "\n";
  }
  if (!has_adjusted) out << "\nnotice: sarcasm-adjusted aggregates unavailable; raw mode only\n";
  for (const std::string& line : split_lines(out.str())) {
    report.summary += line.substr(0, line.find_last_not_of(' ') + 1);
    report.summary += '\n';
  }

  report.charts.push_back(popularity_pie(raw, Mode::Raw));
  report.charts.push_back(ratio_bars(raw, Mode::Raw));
  report.charts.push_back(share_bars(raw, Mode::Raw));
  if (has_adjusted) {
    report.charts.push_back(popularity_pie(adjusted, Mode::SarcasmAdjusted));
    report.charts.push_back(ratio_bars(adjusted, Mode::SarcasmAdjusted));
    report.charts.push_back(share_bars(adjusted, Mode::SarcasmAdjusted));
  }

  nlohmann::ordered_json results;
  results["corpus_total"] = corpus_total;
  nlohmann::ordered_json modes;
  modes["raw"] = nlohmann::ordered_json::array();
  for (const auto& a : raw) modes["raw"].push_back(aggregate_json(a));
  if (has_adjusted) {
    modes["sarcasm_adjusted"] = nlohmann::ordered_json::array();
    for (const auto& a : adjusted) modes["sarcasm_adjusted"].push_back(aggregate_json(a));
  } else {
    modes["sarcasm_adjusted"] = nullptr;
  }
  results["modes"] = std::move(modes);
  results["charts"] = nlohmann::ordered_json::array();
  for (const auto& c : report.charts) results["charts"].push_back(chart_json(c));
  report.results = std::move(results);
  return report;
}

}  // namespace tweetpol::election
