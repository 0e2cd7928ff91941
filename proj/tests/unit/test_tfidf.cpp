#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "tweetpol/error.hpp"
#include "tweetpol/tfidf.hpp"

using namespace tweetpol;
using Docs = std::vector<textprep::TokenStream>;

namespace {

Docs random_corpus(std::mt19937_64& gen, std::size_t max_docs, std::size_t max_terms) {
  std::uniform_int_distribution<std::size_t> n_docs(1, max_docs);
  std::uniform_int_distribution<std::size_t> n_terms(1, max_terms);
  const std::size_t terms = n_terms(gen);
  std::uniform_int_distribution<std::size_t> pick(0, terms - 1);
  std::uniform_int_distribution<std::size_t> len(0, 12);
  Docs docs(n_docs(gen));
  for (auto& d : docs) {
    for (std::size_t k = len(gen); k > 0; --k) d.push_back("t" + std::to_string(pick(gen)));
  }
  return docs;
}

}  // namespace

TEST_CASE("fit counts document frequencies") {
  const Docs corpus{{"a", "b"}, {"b", "c"}};
  const auto v = FittedVectorizer::fit(corpus);
  CHECK(v.n_docs() == 2);
  CHECK(v.document_frequency("a") == 1);
  CHECK(v.document_frequency("b") == 2);
  CHECK(v.document_frequency("c") == 1);
  CHECK(v.terms() == std::vector<std::string>{"a", "b", "c"});
  CHECK(*v.index_of("c") == 2);
  CHECK_FALSE(v.index_of("zzz").has_value());

  const auto single = FittedVectorizer::fit(Docs{{"a", "a", "a"}});
  CHECK(single.document_frequency("a") == 1);
}

TEST_CASE("fit errors") {
  CHECK_THROWS_AS(FittedVectorizer::fit(Docs{}), Error);
  try {
    FittedVectorizer::fit(Docs{});
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EmptyCorpus);
  }
  const auto v = FittedVectorizer::fit(Docs{{"a"}});
  try {
    (void)v.idf("missing");
    FAIL("expected UnknownTerm");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnknownTerm);
  }
}

TEST_CASE("idf evaluated by hand") {
  CHECK(idf_value(4, 1, IdfFormula::Log) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(idf_value(1, 1, IdfFormula::Log) == doctest::Approx(-std::log(2.0)).epsilon(1e-15));
  CHECK(idf_value(4, 1, IdfFormula::Log) == doctest::Approx(0.6931471805599453));
  // N / (DF + 1) = e  ->  idf = 1
  CHECK(std::log(2 * std::exp(1.0) / 2) == doctest::Approx(1.0));
  CHECK(idf_value(4, 1, IdfFormula::Smooth) == doctest::Approx(std::log(5.0 / 2.0) + 1.0));
}

TEST_CASE("transform by hand, unnormalized") {
  const Docs corpus{{"a", "b"}, {"b", "c"}};
  const auto v = FittedVectorizer::fit(corpus, {.l2_normalize = false});
  const auto x = v.transform({"a", "a", "b"});
  // a: 2 * ln(2/2) = 0 -> dropped;  b: 1 * ln(2/3)
  CHECK(x.nnz() == 1);
  CHECK(x.at(*v.index_of("b")) == doctest::Approx(std::log(2.0 / 3.0)).epsilon(1e-15));
  CHECK(x.dim() == 3);

  CHECK(v.transform({}).empty());
  CHECK(v.transform({"zzz", "yyy"}).empty());
}

TEST_CASE("DF table equals set-membership count on random small corpora") {
  std::mt19937_64 gen(8);
  for (int trial = 0; trial < 50; ++trial) {
    Docs docs = random_corpus(gen, 8, 10);
    docs.resize(8);
    const auto v = FittedVectorizer::fit(docs);
    for (const auto& t : v.terms()) {
      std::uint64_t df = 0;
      for (const auto& d : docs) df += std::find(d.begin(), d.end(), t) != d.end();
      CHECK(v.document_frequency(t) == df);
    }
  }
}

TEST_CASE("transform matches the nested-loop oracle") {
  std::mt19937_64 gen(3);
  for (bool l2 : {false, true}) {
    for (int trial = 0; trial < 100; ++trial) {
      const Docs docs = random_corpus(gen, 10, 15);
      const auto v = FittedVectorizer::fit(docs, {.l2_normalize = l2});
      const auto m = oracle::tfidf(docs, l2);
      REQUIRE(v.terms() == m.vocabulary);
      for (std::size_t d = 0; d < docs.size(); ++d) {
        const auto x = v.transform(docs[d]);
        for (std::size_t t = 0; t < m.vocabulary.size(); ++t) {
          CHECK(std::abs(x.at(static_cast<SparseVector::Index>(t)) - m.rows[d][t]) <= 1e-9);
        }
      }
    }
  }
}

TEST_CASE("absence property and unit norm") {
  std::mt19937_64 gen(4);
  for (int trial = 0; trial < 200; ++trial) {
    const Docs docs = random_corpus(gen, 10, 15);
    const auto v = FittedVectorizer::fit(docs);
    for (const auto& d : docs) {
      const auto x = v.transform(d);
      for (SparseVector::Index i = 0; i < v.dimension(); ++i) {
        const auto& t = v.terms()[i];
        const bool occurs = std::find(d.begin(), d.end(), t) != d.end();
        const bool nonzero_weight = occurs && v.idf(t) != 0.0;
        CHECK((x.at(i) != 0.0) == nonzero_weight);
      }
      if (!x.empty()) CHECK(std::abs(std::sqrt(x.squared_norm()) - 1.0) <= 1e-12);
      for (double w : x.values()) CHECK(w != 0.0);
    }
  }
}

TEST_CASE("idf is strictly decreasing in DF") {
  for (std::uint64_t n : {1u, 2u, 10u, 1000u}) {
    for (std::uint64_t df = 1; df < n; ++df) {
      CHECK(idf_value(n, df + 1, IdfFormula::Log) < idf_value(n, df, IdfFormula::Log));
      CHECK(idf_value(n, df + 1, IdfFormula::Smooth) < idf_value(n, df, IdfFormula::Smooth));
    }
  }
}

TEST_CASE("duplicating every document shifts idf by the predicted amount") {
  std::mt19937_64 gen(5);
  for (int trial = 0; trial < 50; ++trial) {
    const Docs docs = random_corpus(gen, 10, 15);
    Docs doubled = docs;
    doubled.insert(doubled.end(), docs.begin(), docs.end());
    const auto v1 = FittedVectorizer::fit(docs);
    const auto v2 = FittedVectorizer::fit(doubled);
    CHECK(v2.n_docs() == 2 * v1.n_docs());
    for (const auto& t : v1.terms()) {
      const double n = static_cast<double>(v1.n_docs());
      const double df = static_cast<double>(v1.document_frequency(t));
      CHECK(v2.document_frequency(t) == 2 * v1.document_frequency(t));
      const double predicted = std::log(2 * n / (2 * df + 1)) - std::log(n / (df + 1));
      CHECK(v2.idf(t) - v1.idf(t) == doctest::Approx(predicted).epsilon(1e-12));
    }
  }
}

TEST_CASE("transform leaves the fitted state unchanged") {
  const Docs corpus{{"a", "b"}, {"b", "c"}, {"c"}};
  const auto v = FittedVectorizer::fit(corpus);
  const std::vector<std::uint64_t> before(v.document_frequencies().begin(),
                                          v.document_frequencies().end());
  (void)v.transform({"new", "words", "a"});
  CHECK(std::vector<std::uint64_t>(v.document_frequencies().begin(),
                                   v.document_frequencies().end()) == before);
  CHECK(v.dimension() == 3);
}

TEST_CASE("from_parts validates") {
  CHECK_NOTHROW(FittedVectorizer::from_parts({"a", "b"}, {1, 2}, 2, {}));
  CHECK_THROWS_AS(FittedVectorizer::from_parts({"a", "a"}, {1, 1}, 2, {}), Error);
  CHECK_THROWS_AS(FittedVectorizer::from_parts({"a"}, {3}, 2, {}), Error);
  CHECK_THROWS_AS(FittedVectorizer::from_parts({"a"}, {0}, 2, {}), Error);
  CHECK_THROWS_AS(FittedVectorizer::from_parts({"a", "b"}, {1}, 2, {}), Error);
}

TEST_CASE("sparse vector invariants") {
  const auto x = SparseVector::from_entries(5, {{3, 1.0}, {0, 0.0}, {1, -2.0}});
  CHECK(x.nnz() == 2);
  CHECK(x.indices()[0] == 1);
  CHECK(x.at(3) == 1.0);
  CHECK(x.at(0) == 0.0);
  CHECK_THROWS_AS(SparseVector::from_entries(2, {{2, 1.0}}), Error);
  CHECK_THROWS_AS(SparseVector::from_entries(4, {{1, 1.0}, {1, 2.0}}), Error);
  const auto y = SparseVector::from_dense(std::vector<double>{0, 1, 0, 2, 0});
  CHECK(sparse_dot(x, y) == doctest::Approx(-2.0 + 2.0));
  CHECK(y.squared_norm() == 5.0);
}
