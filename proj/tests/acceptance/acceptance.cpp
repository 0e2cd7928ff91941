// Acceptance checks, one PASS/FAIL line each.
//
//   tweetpol_acceptance            run criteria 1-6
//   tweetpol_acceptance 2 4        run selected criteria
//   tweetpol_acceptance 7          full-scale accuracy; needs
//                                  TWEETPOL_SENTIMENT140_CSV and TWEETPOL_SARCASM_JSONL
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <sys/wait.h>

#include "json.hpp"
#include "oracles.hpp"
#include "support.hpp"
#include "tweetpol/csv.hpp"
#include "tweetpol/election.hpp"
#include "tweetpol/error.hpp"
#include "tweetpol/pipeline.hpp"

using namespace tweetpol;
namespace fs = std::filesystem;

namespace {

class Checker {
 public:
  explicit Checker(int criterion) : criterion_(criterion) {}

  bool check(bool ok, const std::string& what) {
    std::printf("[%s] criterion %d: %s\n", ok ? "PASS" : "FAIL", criterion_, what.c_str());
    failures_ += ok ? 0 : 1;
    return ok;
  }

  void near(double value, double expected, double tol, const std::string& what) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%s = %.6f, expected %.2f +/- %g (off by %.4f)", what.c_str(),
                  value, expected, tol, std::abs(value - expected));
    check(std::abs(value - expected) <= tol, buf);
  }

  int failures() const { return failures_; }

 private:
  int criterion_;
  int failures_ = 0;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// --- 1 -------------------------------------------------------------------

void add_tweets(std::vector<election::AnnotatedTweet>& out, std::size_t n, Label sentiment,
                Label sarcastic, const std::string& party) {
  for (std::size_t i = 0; i < n; ++i) {
    election::AnnotatedTweet t;
    t.sentiment = sentiment;
    t.sarcastic = sarcastic;
    t.effective_sentiment = election::flip_for_sarcasm(sentiment, sarcastic);
    if (!party.empty()) t.parties = {party};
    out.push_back(std::move(t));
  }
}

int criterion_aggregates() {
  Checker c(1);
  const auto start = Clock::now();
  const std::vector<std::string> parties{"BJP", "INC"};

  // Raw mode: sentiment alone decides.
  std::vector<election::AnnotatedTweet> raw_set;
  add_tweets(raw_set, 2558, 1, 0, "BJP");
  add_tweets(raw_set, 1316, 0, 0, "BJP");
  add_tweets(raw_set, 650, 1, 0, "INC");
  add_tweets(raw_set, 488, 0, 0, "INC");
  add_tweets(raw_set, 10000 - raw_set.size(), 1, 0, "");

  // Adjusted mode: effective sentiment after the sarcasm flip. Some of each
  // bucket arrives via a flip so both paths are exercised.
  std::vector<election::AnnotatedTweet> adj_set;
  add_tweets(adj_set, 2000, 1, 0, "BJP");
  add_tweets(adj_set, 376, 0, 1, "BJP");
  add_tweets(adj_set, 1500, 0, 0, "BJP");
  add_tweets(adj_set, 501, 1, 1, "BJP");
  add_tweets(adj_set, 600, 1, 0, "INC");
  add_tweets(adj_set, 34, 0, 1, "INC");
  add_tweets(adj_set, 600, 0, 0, "INC");
  add_tweets(adj_set, 64, 1, 1, "INC");
  add_tweets(adj_set, 10000 - adj_set.size(), 0, 0, "");

  const auto raw = election::aggregate(raw_set, parties, election::Mode::Raw);
  const auto adj = election::aggregate(adj_set, parties, election::Mode::SarcasmAdjusted);
  const double elapsed = seconds_since(start);

  c.check(raw[0].pos == 2558 && raw[0].neg == 1316 && raw[1].pos == 650 && raw[1].neg == 488 &&
              adj[0].pos == 2376 && adj[0].neg == 2001 && adj[1].pos == 634 && adj[1].neg == 664,
          "fixture counts reproduce the polarity-percentage table");
  c.near(*raw[0].pos_neg_ratio, 1.94, 0.01, "BJP ratio, raw");
  c.near(*adj[0].pos_neg_ratio, 1.19, 0.01, "BJP ratio, sarcasm-adjusted");
  c.near(*raw[1].pos_neg_ratio, 1.33, 0.01, "INC ratio, raw");
  c.near(*adj[1].pos_neg_ratio, 0.96, 0.01, "INC ratio, sarcasm-adjusted");
  c.near(*raw[0].pos_share_pct, 66.03, 0.01, "BJP positive share %, raw");
  c.near(*adj[0].pos_share_pct, 54.28, 0.01, "BJP positive share %, sarcasm-adjusted");
  c.near(*raw[1].pos_share_pct, 57.14, 0.01, "INC positive share %, raw");
  c.near(*adj[1].pos_share_pct, 48.87, 0.01, "INC positive share %, sarcasm-adjusted");
  c.check(elapsed < 1.0, "runtime " + fmt("%.4f", elapsed) + " s < 1 s");
  return c.failures();
}

// --- 2 -------------------------------------------------------------------

int criterion_tfidf() {
  Checker c(2);
  const auto start = Clock::now();
  std::mt19937_64 gen(2);
  double worst = 0.0;
  int mismatched_vocab = 0;
  std::size_t entries = 0;
  for (int trial = 0; trial < 100; ++trial) {
    std::uniform_int_distribution<int> n_docs(1, 10), n_terms(1, 15), len(0, 12);
    const int terms = n_terms(gen);
    std::uniform_int_distribution<int> pick(0, terms - 1);
    oracle::Docs docs(static_cast<std::size_t>(n_docs(gen)));
    for (auto& d : docs) {
      for (int k = len(gen); k > 0; --k) d.push_back("w" + std::to_string(pick(gen)));
    }
    const auto v = FittedVectorizer::fit(docs, {.l2_normalize = false});
    const auto m = oracle::tfidf(docs, false);
    if (v.terms() != m.vocabulary) {
      ++mismatched_vocab;
      continue;
    }
    for (std::size_t d = 0; d < docs.size(); ++d) {
      const auto x = v.transform(docs[d]);
      for (std::size_t t = 0; t < m.vocabulary.size(); ++t) {
        worst = std::max(worst, std::abs(x.at(static_cast<SparseVector::Index>(t)) - m.rows[d][t]));
        ++entries;
      }
    }
  }
  const double elapsed = seconds_since(start);
  c.check(mismatched_vocab == 0, "vocabulary order matches the oracle on all 100 corpora");
  c.check(worst <= 1e-9, "max |entry - oracle| over " + std::to_string(entries) +
                             " entries = " + fmt("%.3g", worst) + " <= 1e-9");
  c.check(elapsed < 5.0, "runtime " + fmt("%.4f", elapsed) + " s < 5 s");
  return c.failures();
}

// --- 3 -------------------------------------------------------------------

double report_distance(const ClassificationReport& r, const oracle::Report& o) {
  double d = std::abs(r.accuracy - o.accuracy);
  for (int k = 0; k < 2; ++k) {
    d = std::max({d, std::abs(r.per_class[k].precision - o.precision[k]),
                  std::abs(r.per_class[k].recall - o.recall[k]),
                  std::abs(r.per_class[k].f1 - o.f1[k]),
                  std::abs(static_cast<double>(r.per_class[k].support) - o.support[k])});
  }
  d = std::max({d, std::abs(r.macro_avg.precision - o.macro[0]),
                std::abs(r.macro_avg.recall - o.macro[1]), std::abs(r.macro_avg.f1 - o.macro[2]),
                std::abs(r.weighted_avg.precision - o.weighted[0]),
                std::abs(r.weighted_avg.recall - o.weighted[1]),
                std::abs(r.weighted_avg.f1 - o.weighted[2])});
  return d;
}

int criterion_metrics() {
  Checker c(3);
  std::mt19937_64 gen(3);
  std::uniform_int_distribution<int> len(1, 50);
  std::bernoulli_distribution coin(0.5);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Label> yt(static_cast<std::size_t>(len(gen))), yp(yt.size());
    for (std::size_t i = 0; i < yt.size(); ++i) {
      yt[i] = coin(gen);
      yp[i] = coin(gen);
    }
    worst = std::max(worst, report_distance(classification_report(confusion_matrix(yt, yp)),
                                            oracle::metrics(yt, yp)));
  }
  c.check(worst <= 1e-12, "20 random pairs: max |report - oracle| = " + fmt("%.3g", worst) +
                              " <= 1e-12");

  int unequal = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t half = 1 + static_cast<std::size_t>(trial);
    std::vector<Label> yt, yp;
    for (std::size_t i = 0; i < 2 * half; ++i) {
      yt.push_back(i < half ? 0 : 1);
      yp.push_back(coin(gen));
    }
    const auto r = classification_report(confusion_matrix(yt, yp));
    unequal += !(r.macro_avg.precision == r.weighted_avg.precision &&
                 r.macro_avg.recall == r.weighted_avg.recall && r.macro_avg.f1 == r.weighted_avg.f1);
  }
  c.check(unequal == 0, "equal supports: macro triple == weighted triple exactly (20 cases)");
  return c.failures();
}

// --- 4 -------------------------------------------------------------------

int criterion_svm() {
  Checker c(4);
  const double lambda = 1e-4;
  int fixture = 0;
  // Shifts keep the optimal bias inside the grid's [-3, 3].
  const std::array<std::array<double, 2>, 3> shifts{{{0, 0}, {1, -1}, {0.5, 0.5}}};
  for (std::uint64_t seed = 1; seed <= 9; ++seed) {
    {
      const auto p = oracle::separable_2d(seed, shifts[seed % 3], 0.6);
      std::vector<SparseVector> x;
      for (const auto& pt : p.x) x.push_back(SparseVector::from_dense(std::vector<double>{pt[0], pt[1]}));
      TrainConfig cfg;
      cfg.lambda = lambda;
      cfg.epochs = 200;
      const auto m = train(x, p.y, cfg);
      std::size_t correct = 0;
      for (std::size_t i = 0; i < x.size(); ++i) correct += predict(m, x[i]) == p.y[i];
      const double obj = objective(m, x, p.y, lambda);
      const double grid = oracle::grid_minimum(p, lambda);
      const double refined = oracle::refined_grid_minimum(p, lambda);
      const std::string tag = "fixture " + std::to_string(fixture++) + ": ";
      c.check(correct == x.size(), tag + "training accuracy " + std::to_string(correct) + "/20");
      c.check(obj <= 1.0, tag + "objective " + fmt("%.6g", obj) + " <= 1.0");
      c.check(obj <= 1.05 * grid, tag + "objective " + fmt("%.6g", obj) + " within 5% of grid minimum " +
                                      fmt("%.6g", grid) + " (ratio " + fmt("%.4f", obj / grid) + ")");
      c.check(std::abs(obj / refined - 1.0) <= 0.05,
              tag + "objective within 5% either way of the refined grid minimum " +
                  fmt("%.6g", refined) + " (ratio " + fmt("%.4f", obj / refined) + ")");
    }
  }

  std::mt19937_64 gen(4);
  std::uniform_real_distribution<double> u(-1, 1), logc(-6, 6);
  int flips = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    LinearModel m;
    std::vector<double> dense;
    for (int k = 0; k < 6; ++k) {
      m.weights.push_back(u(gen));
      dense.push_back(k % 2 ? u(gen) : 0.0);
    }
    m.bias = u(gen);
    const auto x = SparseVector::from_dense(dense);
    LinearModel s = m;
    const double factor = std::pow(10.0, logc(gen));
    for (auto& w : s.weights) w *= factor;
    s.bias *= factor;
    flips += predict(m, x) != predict(s, x);
  }
  c.check(flips == 0, "sign prediction unchanged under positive scaling of (w,b), 1000 trials");

  const auto p = oracle::separable_2d(9, {0, 0}, 0.6);
  std::vector<SparseVector> x;
  for (const auto& pt : p.x) x.push_back(SparseVector::from_dense(std::vector<double>{pt[0], pt[1]}));
  const auto a = train(x, p.y, {});
  const auto b = train(x, p.y, {});
  const bool identical = a.weights.size() == b.weights.size() &&
                         std::memcmp(a.weights.data(), b.weights.data(), a.weights.size() * sizeof(double)) == 0 &&
                         std::memcmp(&a.bias, &b.bias, sizeof(double)) == 0;
  c.check(identical, "retraining with seed 42 is bit-identical");
  return c.failures();
}

// --- 5 -------------------------------------------------------------------

int criterion_roundtrip() {
  Checker c(5);
  LabeledLoadOptions opts;
  opts.label_field = "target";
  opts.label_map = parse_label_map("0:0,4:1");
  const auto data = load_labeled(testing::fixture("sentiment.csv"), opts);
  const auto pipeline = fit_pipeline(data, {}, {}, "sentiment");
  testing::TempDir dir;
  const auto path = dir / "sentiment.model";
  save(pipeline, path);
  const auto loaded = load(path);

  std::mt19937_64 gen(5);
  std::vector<std::string> pool = pipeline.vectorizer.terms();
  pool.insert(pool.end(), {"unseen", "@x", "#Tag", "http://t.co/a", "!!", "LOVE"});
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  std::uniform_int_distribution<int> len(0, 12);
  int differences = 0;
  for (int i = 0; i < 100; ++i) {
    std::string text;
    for (int k = len(gen); k > 0; --k) text += pool[pick(gen)] + " ";
    differences += pipeline.predict(text) != loaded.predict(text);
    differences += decision(pipeline.model, pipeline.encode(text)) !=
                   decision(loaded.model, loaded.encode(text));
  }
  c.check(differences == 0, "save -> load preserves predictions and scores on 100 random texts");

  auto rejected_with = [&](const std::string& content, ErrorCode expected) {
    const auto p = dir.write("bad.model", content);
    try {
      (void)load(p);
    } catch (const Error& e) {
      return e.code() == expected;
    }
    return false;
  };
  const std::string good = testing::slurp(path);
  c.check(rejected_with(good.substr(0, good.size() * 2 / 3), ErrorCode::CorruptModel),
          "truncated file rejected with CorruptModel");
  std::string flipped = good;
  const auto w = flipped.find("\"weights\"");
  const auto digit = flipped.find_first_of("123456789abcdef", flipped.find("0x", w) + 2);
  flipped[digit] = flipped[digit] == '1' ? '2' : '1';
  c.check(rejected_with(flipped, ErrorCode::CorruptModel), "single altered weight digit rejected with CorruptModel");
  auto doc = nlohmann::ordered_json::parse(good);
  doc["format_version"] = 2;
  c.check(rejected_with(doc.dump(1), ErrorCode::VersionMismatch), "format_version 2 rejected with VersionMismatch");
  return c.failures();
}

// --- 6 -------------------------------------------------------------------

int run_cli(const std::string& args, const fs::path& log) {
  const std::string cmd = std::string("\"") + TWEETPOL_CLI_PATH + "\" " + args + " > \"" +
                          log.string() + "\" 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

int criterion_end_to_end() {
  Checker c(6);
  testing::TempDir dir;
  const auto q = [](const fs::path& p) { return "\"" + p.string() + "\""; };
  const auto start = Clock::now();
  const int rc_sent = run_cli("train --task sentiment --data " + q(testing::fixture("sentiment.csv")) +
                                  " --label-field target --label-map 0:0,4:1 --out " + q(dir / "sent.model"),
                              dir / "train_sentiment.log");
  const int rc_sarc = run_cli("train --task sarcasm --data " + q(testing::fixture("sarcasm_train.jsonl")) +
                                  " --test-data " + q(testing::fixture("sarcasm_test.jsonl")) +
                                  " --text-field headline --label-field is_sarcastic --out " +
                                  q(dir / "sarc.model"),
                              dir / "train_sarcasm.log");
  const fs::path out = dir / "analysis";
  const int rc_analyze = run_cli("analyze --data " + q(testing::fixture("election_tweets.csv")) +
                                     " --sentiment-model " + q(dir / "sent.model") + " --sarcasm-model " +
                                     q(dir / "sarc.model") + " --out-dir " + q(out),
                                 dir / "analyze.log");
  const double elapsed = seconds_since(start);
  c.check(rc_sent == 0 && rc_sarc == 0 && rc_analyze == 0,
          "train x2 + analyze exit codes " + std::to_string(rc_sent) + "/" + std::to_string(rc_sarc) +
              "/" + std::to_string(rc_analyze));
  c.check(elapsed < 30.0, "wall time " + fmt("%.3f", elapsed) + " s < 30 s");
  if (rc_analyze != 0) return c.failures() + 1;

  c.check(fs::exists(out / "summary.txt") && !testing::slurp(out / "summary.txt").empty(),
          "report written (summary.txt)");
  c.check(fs::exists(out / "results.json"), "results file written (results.json)");
  const std::vector<std::string> charts{"popularity_spread_raw", "pos_neg_ratio_raw",
                                        "positive_share_raw", "popularity_spread_sarcasm_adjusted",
                                        "pos_neg_ratio_sarcasm_adjusted", "positive_share_sarcasm_adjusted"};
  int present = 0;
  for (const auto& id : charts) {
    present += fs::exists(out / (id + ".svg")) && testing::slurp(out / (id + ".svg")).find("</svg>") != std::string::npos;
  }
  c.check(present == 6, std::to_string(present) + " of 6 charts written");

  for (const char* pie : {"popularity_spread_raw.csv", "popularity_spread_sarcasm_adjusted.csv"}) {
    csv::Reader reader(testing::slurp(out / pie));
    (void)reader.next();
    double sum = 0.0;
    while (auto row = reader.next()) sum += std::stod(row->at(1));
    c.check(std::abs(sum - 100.0) <= 1e-9,
            std::string(pie) + " slices sum to " + fmt("%.12f", sum) + " (100 +/- 1e-9)");
  }

  const auto results = nlohmann::json::parse(testing::slurp(out / "results.json"));
  bool conserved = true;
  const auto& raw = results["modes"]["raw"];
  const auto& adj = results["modes"]["sarcasm_adjusted"];
  for (std::size_t k = 0; k < raw.size(); ++k) {
    conserved = conserved && raw[k]["attributed_total"] == adj[k]["attributed_total"] &&
                raw[k]["pos"].get<std::uint64_t>() + raw[k]["neg"].get<std::uint64_t>() ==
                    raw[k]["attributed_total"].get<std::uint64_t>() &&
                adj[k]["pos"].get<std::uint64_t>() + adj[k]["neg"].get<std::uint64_t>() ==
                    adj[k]["attributed_total"].get<std::uint64_t>();
  }
  c.check(conserved && !raw.empty(), "flip conservation: attributed totals equal across modes");

  // Recount from the annotated corpus as an independent path.
  csv::Reader reader(testing::slurp(out / "annotated.csv"));
  const auto header = *reader.next();
  const auto col = [&](const std::string& name) {
    return static_cast<std::size_t>(std::find(header.begin(), header.end(), name) - header.begin());
  };
  std::map<std::string, std::array<std::uint64_t, 2>> totals;  // party -> {raw, adjusted} attributed
  bool flip_rule = true;
  while (auto row = reader.next()) {
    if (row->at(col("sentiment")).empty()) continue;
    const int s = std::stoi(row->at(col("sentiment")));
    const int z = std::stoi(row->at(col("sarcastic")));
    const int e = std::stoi(row->at(col("effective_sentiment")));
    flip_rule = flip_rule && e == (s ^ z);
    std::stringstream parties(row->at(col("parties")));
    for (std::string p; std::getline(parties, p, ';');) {
      totals[p][0] += 1;
      totals[p][1] += 1;
    }
  }
  bool matches = flip_rule;
  for (const auto& a : raw) {
    matches = matches && totals[a["party"].get<std::string>()][0] == a["attributed_total"].get<std::uint64_t>();
  }
  c.check(matches, "annotated corpus obeys effective = sentiment XOR sarcastic and recounts to the same totals");
  return c.failures();
}

// --- 7 -------------------------------------------------------------------

int criterion_full_scale() {
  Checker c(7);
  const char* sentiment_path = std::getenv("TWEETPOL_SENTIMENT140_CSV");
  const char* sarcasm_path = std::getenv("TWEETPOL_SARCASM_JSONL");
  if (sentiment_path == nullptr || sarcasm_path == nullptr) {
    std::printf("[SKIP] criterion 7: informational; set TWEETPOL_SENTIMENT140_CSV (with header "
                "target,ids,date,flag,user,text) and TWEETPOL_SARCASM_JSONL\n");
    return 0;
  }
  LabeledLoadOptions s;
  s.label_field = "target";
  s.label_map = parse_label_map("0:0,4:1");
  auto [s_train, s_test] = split(load_labeled(sentiment_path, s, &std::cerr), {});
  const auto sp = fit_pipeline(s_train, {}, {}, "sentiment");
  const double s_acc = evaluate(sp, s_test).report.accuracy;
  c.check(s_acc >= 0.75, "sentiment held-out accuracy " + fmt("%.4f", s_acc) + " >= 0.75");

  LabeledLoadOptions z;
  z.format = Format::Jsonl;
  z.text_field = "headline";
  z.label_field = "is_sarcastic";
  auto [z_train, z_test] = split(load_labeled(sarcasm_path, z, &std::cerr), {});
  const auto zp = fit_pipeline(z_train, {}, {}, "sarcasm");
  const double z_acc = evaluate(zp, z_test).report.accuracy;
  c.check(z_acc >= 0.78, "sarcasm held-out accuracy " + fmt("%.4f", z_acc) + " >= 0.78");
  return c.failures();
}

}  // namespace

int main(int argc, char** argv) {
  const std::map<int, std::function<int()>> criteria{
      {1, criterion_aggregates}, {2, criterion_tfidf},      {3, criterion_metrics},
      {4, criterion_svm},        {5, criterion_roundtrip}, {6, criterion_end_to_end},
      {7, criterion_full_scale}};
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));
  if (selected.empty()) selected = {1, 2, 3, 4, 5, 6};

  int failures = 0;
  for (int id : selected) {
    const auto it = criteria.find(id);
    if (it == criteria.end()) {
      std::fprintf(stderr, "unknown criterion %d\n", id);
      return 2;
    }
    try {
      failures += it->second();
    } catch (const std::exception& e) {
      std::printf("[FAIL] criterion %d: unexpected exception: %s\n", id, e.what());
      ++failures;
    }
  }
  std::printf("%d check(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
