#pragma once

#include <array>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tweetpol/corpus_io.hpp"
#include "tweetpol/linear_svc.hpp"
#include "tweetpol/metrics.hpp"
#include "tweetpol/tfidf.hpp"

namespace tweetpol {

inline constexpr int kModelFormatVersion = 1;

/// normalize -> tokenize -> TF-IDF -> linear SVC, fitted as one unit.
struct ClassifierPipeline {
  FittedVectorizer vectorizer;
  LinearModel model;
  std::string task_name;
  std::array<std::string, 2> label_names{"negative", "positive"};
  int format_version = kModelFormatVersion;

  SparseVector encode(std::string_view text) const;
  Label predict(std::string_view text) const;
  /// Same as predict() for text that is already analyzed.
  Label predict_tokens(const textprep::TokenStream& tokens) const;
};

/// The vectorizer sees only `train`; the classifier is trained on its output.
ClassifierPipeline fit_pipeline(const LabeledDataset& train, const TrainConfig& config,
                                const TfidfOptions& tfidf, std::string task_name);

std::vector<Label> predict_texts(const ClassifierPipeline& pipeline,
                                 std::span<const std::string> texts);

struct Evaluation {
  ConfusionMatrix confusion;
  ClassificationReport report;
};

/// Throws EmptyInput for a dataset without records.
Evaluation evaluate(const ClassifierPipeline& pipeline, const LabeledDataset& data);

/// Model document; see docs/model-format.md.
std::string serialize(const ClassifierPipeline& pipeline);
/// Throws VersionMismatch or CorruptModel.
ClassifierPipeline deserialize(std::string_view document);

void save(const ClassifierPipeline& pipeline, const std::filesystem::path& path);
ClassifierPipeline load(const std::filesystem::path& path);

}  // namespace tweetpol
