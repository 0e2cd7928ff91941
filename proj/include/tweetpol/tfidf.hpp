#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "tweetpol/sparse.hpp"
#include "tweetpol/textprep.hpp"

namespace tweetpol {

enum class IdfFormula {
  // ln(N / (DF + 1)); zero or negative for terms in nearly every document.
  Log,
  // ln((1 + N) / (1 + DF)) + 1, the smoothed variant common in ML libraries.
  Smooth,
};

struct TfidfOptions {
  bool l2_normalize = true;
  IdfFormula idf = IdfFormula::Log;

  friend bool operator==(const TfidfOptions&, const TfidfOptions&) = default;
};

double idf_value(std::uint64_t n_docs, std::uint64_t document_frequency, IdfFormula formula);

/// Vocabulary in first-appearance order, per-term document frequencies and the
/// corpus size. Immutable once built; transform() is safe to call concurrently.
class FittedVectorizer {
 public:
  using Index = SparseVector::Index;

  /// Throws EmptyCorpus when `corpus` is empty.
  static FittedVectorizer fit(std::span<const textprep::TokenStream> corpus,
                              const TfidfOptions& options = {});

  /// Rebuilds a vectorizer from stored state; throws CorruptModel if the
  /// parts are inconsistent (duplicate terms, DF outside [1, N], ...).
  static FittedVectorizer from_parts(std::vector<std::string> terms,
                                     std::vector<std::uint64_t> document_frequencies,
                                     std::uint64_t n_docs, const TfidfOptions& options);

  Index dimension() const noexcept { return static_cast<Index>(terms_.size()); }
  std::uint64_t n_docs() const noexcept { return n_docs_; }
  const TfidfOptions& options() const noexcept { return options_; }
  const std::vector<std::string>& terms() const noexcept { return terms_; }
  std::span<const std::uint64_t> document_frequencies() const noexcept { return df_; }

  std::optional<Index> index_of(std::string_view term) const;

  /// Throws UnknownTerm for terms outside the vocabulary.
  std::uint64_t document_frequency(std::string_view term) const;
  double idf(std::string_view term) const;

  /// TF (raw count) times IDF for every in-vocabulary token; out-of-vocabulary
  /// tokens are ignored and zero weights are not stored.
  SparseVector transform(const textprep::TokenStream& doc) const;

 private:
  FittedVectorizer() = default;
  void rebuild_index();

  std::unordered_map<std::string, Index> index_;
  std::vector<std::string> terms_;
  std::vector<std::uint64_t> df_;
  std::vector<double> idf_;
  std::uint64_t n_docs_ = 0;
  TfidfOptions options_;
};

}  // namespace tweetpol
