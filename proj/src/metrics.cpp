#include "tweetpol/metrics.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "tweetpol/error.hpp"

namespace tweetpol {

namespace {

double ratio(std::uint64_t num, std::uint64_t den, bool& undefined) {
  if (den == 0) {
    undefined = true;
    return 0.0;
  }
  return static_cast<double>(num) / static_cast<double>(den);
}

ClassScores scores(std::uint64_t correct, std::uint64_t predicted, std::uint64_t support,
                   bool& undefined) {
  ClassScores s;
  s.precision = ratio(correct, predicted, undefined);
  s.recall = ratio(correct, support, undefined);
  if (s.precision + s.recall > 0.0) {
    s.f1 = 2.0 * s.precision * s.recall / (s.precision + s.recall);
  } else {
    undefined = true;
    s.f1 = 0.0;
  }
  s.support = support;
  return s;
}

std::string fixed2(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", value);
  return buf;
}

nlohmann::ordered_json scores_json(double p, double r, double f1) {
  return {{"precision", p}, {"recall", r}, {"f1", f1}};
}

}  // namespace

ConfusionMatrix confusion_matrix(std::span<const Label> y_true, std::span<const Label> y_pred) {
  if (y_true.size() != y_pred.size()) {
    throw Error(ErrorCode::LengthMismatch, std::to_string(y_true.size()) + " truths vs " +
                                               std::to_string(y_pred.size()) + " predictions");
  }
  if (y_true.empty()) throw Error(ErrorCode::EmptyInput, "no label pairs");
  ConfusionMatrix cm;
  for (std::size_t i = 0; i < y_true.size(); ++i) {
    const Label t = y_true[i];
    const Label p = y_pred[i];
    if ((t != 0 && t != 1) || (p != 0 && p != 1)) {
      throw Error(ErrorCode::InvalidArgument, "labels must be 0 or 1");
    }
    if (t == 0) {
      (p == 0 ? cm.tn : cm.fp) += 1;
    } else {
      (p == 0 ? cm.fn : cm.tp) += 1;
    }
  }
  return cm;
}

ClassificationReport classification_report(const ConfusionMatrix& cm) {
  const std::uint64_t total = cm.total();
  if (total == 0) throw Error(ErrorCode::EmptyMatrix, "confusion matrix has no counts");
  ClassificationReport r;
  r.total = total;
  r.per_class[0] = scores(cm.tn, cm.tn + cm.fn, cm.tn + cm.fp, r.undefined_metric);
  r.per_class[1] = scores(cm.tp, cm.tp + cm.fp, cm.tp + cm.fn, r.undefined_metric);
  r.accuracy = static_cast<double>(cm.tn + cm.tp) / static_cast<double>(total);

  const auto& c0 = r.per_class[0];
  const auto& c1 = r.per_class[1];
  r.macro_avg = {(c0.precision + c1.precision) / 2.0, (c0.recall + c1.recall) / 2.0,
                 (c0.f1 + c1.f1) / 2.0};
  const double w0 = static_cast<double>(c0.support) / static_cast<double>(total);
  const double w1 = static_cast<double>(c1.support) / static_cast<double>(total);
  r.weighted_avg = {w0 * c0.precision + w1 * c1.precision, w0 * c0.recall + w1 * c1.recall,
                    w0 * c0.f1 + w1 * c1.f1};
  return r;
}

std::string render_report(const ClassificationReport& report,
                          const std::array<std::string, 2>& label_names) {
  const std::size_t name_width =
      std::max<std::size_t>({label_names[0].size(), label_names[1].size(), 12});
  std::ostringstream out;
  auto pad = [&](const std::string& s, std::size_t width) {
    return std::string(width > s.size() ? width - s.size() : 0, ' ') + s;
  };
  out << pad("", name_width) << pad("precision", 11) << pad("recall", 10) << pad("f1-score", 10)
      << pad("support", 10) << "\n\n";
  for (int c = 0; c < 2; ++c) {
    const auto& s = report.per_class[c];
    out << pad(label_names[c], name_width) << pad(fixed2(s.precision), 11)
        << pad(fixed2(s.recall), 10) << pad(fixed2(s.f1), 10)
        << pad(std::to_string(s.support), 10) << "\n";
  }
  out << "\n"
      << pad("accuracy", name_width) << pad("", 21) << pad(fixed2(report.accuracy), 10)
      << pad(std::to_string(report.total), 10) << "\n";
  auto avg_row = [&](const char* name, const AverageScores& a) {
    out << pad(name, name_width) << pad(fixed2(a.precision), 11) << pad(fixed2(a.recall), 10)
        << pad(fixed2(a.f1), 10) << pad(std::to_string(report.total), 10) << "\n";
  };
  avg_row("macro avg", report.macro_avg);
  avg_row("weighted avg", report.weighted_avg);
  return out.str();
}

std::string render_confusion_matrix(const ConfusionMatrix& cm,
                                    const std::array<std::string, 2>& label_names) {
  std::ostringstream out;
  out << "confusion matrix (rows = true, columns = predicted)\n";
  out << "  " << label_names[0] << ": " << cm.tn << " " << cm.fp << "\n";
  out << "  " << label_names[1] << ": " << cm.fn << " " << cm.tp << "\n";
  return out.str();
}

nlohmann::ordered_json metrics_to_json(const ConfusionMatrix& cm, const ClassificationReport& report,
                                       const std::array<std::string, 2>& label_names) {
  nlohmann::ordered_json j;
  j["confusion_matrix"] = {{"tn", cm.tn}, {"fp", cm.fp}, {"fn", cm.fn}, {"tp", cm.tp}};
  nlohmann::ordered_json classes = nlohmann::ordered_json::array();
  for (int c = 0; c < 2; ++c) {
    const auto& s = report.per_class[c];
    auto entry = scores_json(s.precision, s.recall, s.f1);
    entry["label"] = c;
    entry["name"] = label_names[c];
    entry["support"] = s.support;
    classes.push_back(std::move(entry));
  }
  j["classes"] = std::move(classes);
  j["accuracy"] = report.accuracy;
  j["macro_avg"] = scores_json(report.macro_avg.precision, report.macro_avg.recall,
                               report.macro_avg.f1);
  j["weighted_avg"] = scores_json(report.weighted_avg.precision, report.weighted_avg.recall,
                                  report.weighted_avg.f1);
  j["total"] = report.total;
  j["undefined_metric"] = report.undefined_metric;
  return j;
}

}  // namespace tweetpol
