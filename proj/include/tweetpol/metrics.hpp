#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>

#include "json.hpp"
#include "tweetpol/corpus_io.hpp"

namespace tweetpol {

/// Rows are the true class, columns the predicted class.
struct ConfusionMatrix {
  std::uint64_t tn = 0;
  std::uint64_t fp = 0;
  std::uint64_t fn = 0;
  std::uint64_t tp = 0;

  std::uint64_t total() const noexcept { return tn + fp + fn + tp; }
  friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;
};

ConfusionMatrix confusion_matrix(std::span<const Label> y_true, std::span<const Label> y_pred);

struct ClassScores {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::uint64_t support = 0;
};

struct AverageScores {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

struct ClassificationReport {
  std::array<ClassScores, 2> per_class;  // index = class label
  double accuracy = 0.0;
  AverageScores macro_avg;
  AverageScores weighted_avg;
  std::uint64_t total = 0;
  // Set when some precision/recall/f1 was 0/0 and reported as 0.
  bool undefined_metric = false;
};

/// Throws EmptyMatrix when the matrix has no counts.
ClassificationReport classification_report(const ConfusionMatrix& cm);

/// Aligned text table with two decimals, rows named by `label_names`.
std::string render_report(const ClassificationReport& report,
                          const std::array<std::string, 2>& label_names);
std::string render_confusion_matrix(const ConfusionMatrix& cm,
                                    const std::array<std::string, 2>& label_names);

/// Full-precision machine-readable form of matrix and report.
nlohmann::ordered_json metrics_to_json(const ConfusionMatrix& cm, const ClassificationReport& report,
                                       const std::array<std::string, 2>& label_names);

}  // namespace tweetpol
