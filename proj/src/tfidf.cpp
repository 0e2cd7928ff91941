#include "tweetpol/tfidf.hpp"

#include <algorithm>
#include <cmath>

#include "tweetpol/error.hpp"

namespace tweetpol {

double idf_value(std::uint64_t n_docs, std::uint64_t document_frequency, IdfFormula formula) {
  const auto n = static_cast<double>(n_docs);
  const auto df = static_cast<double>(document_frequency);
  switch (formula) {
    case IdfFormula::Log: return std::log(n / (df + 1.0));
    case IdfFormula::Smooth: return std::log((1.0 + n) / (1.0 + df)) + 1.0;
  }
  return 0.0;
}

FittedVectorizer FittedVectorizer::fit(std::span<const textprep::TokenStream> corpus,
                                       const TfidfOptions& options) {
  if (corpus.empty()) throw Error(ErrorCode::EmptyCorpus, "cannot fit a vectorizer on no documents");
  FittedVectorizer v;
  v.options_ = options;
  v.n_docs_ = corpus.size();
  // last_doc[i] = 1 + index of the last document that counted term i
  std::vector<std::size_t> last_doc;
  for (std::size_t d = 0; d < corpus.size(); ++d) {
    for (const auto& token : corpus[d]) {
      auto [it, inserted] = v.index_.try_emplace(token, static_cast<Index>(v.terms_.size()));
      if (inserted) {
        v.terms_.push_back(token);
        v.df_.push_back(0);
        last_doc.push_back(0);
      }
      const Index i = it->second;
      if (last_doc[i] != d + 1) {
        last_doc[i] = d + 1;
        ++v.df_[i];
      }
    }
  }
  if (v.terms_.size() >= 0x80000000ULL) {
    throw Error(ErrorCode::InvalidArgument, "vocabulary exceeds 2^31 terms");
  }
  v.idf_.reserve(v.df_.size());
  for (auto df : v.df_) v.idf_.push_back(idf_value(v.n_docs_, df, options.idf));
  return v;
}

FittedVectorizer FittedVectorizer::from_parts(std::vector<std::string> terms,
                                              std::vector<std::uint64_t> document_frequencies,
                                              std::uint64_t n_docs, const TfidfOptions& options) {
  if (terms.size() != document_frequencies.size()) {
    throw Error(ErrorCode::CorruptModel, "vocabulary and document frequency lengths differ");
  }
  if (n_docs == 0) throw Error(ErrorCode::CorruptModel, "document count must be positive");
  FittedVectorizer v;
  v.terms_ = std::move(terms);
  v.df_ = std::move(document_frequencies);
  v.n_docs_ = n_docs;
  v.options_ = options;
  for (std::size_t i = 0; i < v.terms_.size(); ++i) {
    if (v.df_[i] < 1 || v.df_[i] > n_docs) {
      throw Error(ErrorCode::CorruptModel, "document frequency out of range for '" + v.terms_[i] + "'");
    }
    if (!v.index_.try_emplace(v.terms_[i], static_cast<Index>(i)).second) {
      throw Error(ErrorCode::CorruptModel, "duplicate vocabulary term '" + v.terms_[i] + "'");
    }
    v.idf_.push_back(idf_value(n_docs, v.df_[i], options.idf));
  }
  return v;
}

std::optional<FittedVectorizer::Index> FittedVectorizer::index_of(std::string_view term) const {
  auto it = index_.find(std::string(term));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::uint64_t FittedVectorizer::document_frequency(std::string_view term) const {
  const auto i = index_of(term);
  if (!i) throw Error(ErrorCode::UnknownTerm, std::string(term));
  return df_[*i];
}

double FittedVectorizer::idf(std::string_view term) const {
  const auto i = index_of(term);
  if (!i) throw Error(ErrorCode::UnknownTerm, std::string(term));
  return idf_[*i];
}

SparseVector FittedVectorizer::transform(const textprep::TokenStream& doc) const {
  std::vector<Index> hits;
  hits.reserve(doc.size());
  for (const auto& token : doc) {
    if (auto it = index_.find(token); it != index_.end()) hits.push_back(it->second);
  }
  std::sort(hits.begin(), hits.end());

  std::vector<std::pair<Index, double>> entries;
  for (std::size_t k = 0; k < hits.size();) {
    std::size_t run = k;
    while (run < hits.size() && hits[run] == hits[k]) ++run;
    const double weight = static_cast<double>(run - k) * idf_[hits[k]];
    if (weight != 0.0) entries.emplace_back(hits[k], weight);
    k = run;
  }
  SparseVector v = SparseVector::from_entries(dimension(), std::move(entries));
  if (options_.l2_normalize && !v.empty()) v.scale(1.0 / std::sqrt(v.squared_norm()));
  return v;
}

}  // namespace tweetpol
