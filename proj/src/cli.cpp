#include "tweetpol/cli.hpp"

#include <chrono>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "tweetpol/charts.hpp"
#include "tweetpol/corpus_io.hpp"
#include "tweetpol/csv.hpp"
#include "tweetpol/election.hpp"
#include "tweetpol/error.hpp"
#include "tweetpol/fileio.hpp"
#include "tweetpol/kernels.hpp"
#include "tweetpol/pipeline.hpp"

namespace tweetpol::cli {

namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DataFlags {
  std::string path;
  std::string format = "auto";
  std::string text_field = "text";
  std::string label_field = "label";
  std::string label_map = "0:0,1:1";
  std::string id_field = "id";
};

struct TrainFlags {
  std::string task;
  DataFlags data;
  std::string test_data;
  double train_fraction = 0.7;
  std::uint64_t seed = 42;
  double lambda = 1e-4;
  std::uint32_t epochs = 10;
  std::string solver = "dual-cd";
  bool no_average = false;
  bool no_l2_norm = false;
  bool tfidf_compat = false;
  std::string label_names;
  std::string out;
};

struct EvalFlags {
  std::string model;
  DataFlags data;
  std::string out;
};

struct AnalyzeFlags {
  std::string data;
  std::string format = "auto";
  std::string text_field = "full_text";
  std::string sentiment_model;
  std::string sarcasm_model;
  std::string party_config;
  std::string out_dir;
};

Format resolve_format(const std::string& flag, const std::string& path) {
  if (flag != "auto") return parse_format(flag);
  const auto ext = fs::path(path).extension().string();
  return ext == ".jsonl" || ext == ".ndjson" ? Format::Jsonl : Format::Csv;
}

LabeledLoadOptions load_options(const DataFlags& flags, const std::string& path) {
  LabeledLoadOptions options;
  options.format = resolve_format(flags.format, path);
  options.text_field = flags.text_field;
  options.label_field = flags.label_field;
  options.id_field = flags.id_field;
  try {
    options.label_map = parse_label_map(flags.label_map);
  } catch (const Error& e) {
    throw UsageError(std::string("--label-map: ") + e.what());
  }
  return options;
}

void add_data_flags(CLI::App* cmd, DataFlags& flags) {
  cmd->add_option("--data", flags.path, "Labeled dataset (CSV with header, or JSONL)")->required();
  cmd->add_option("--format", flags.format, "csv, jsonl or auto (by extension)")
      ->check(CLI::IsMember({"auto", "csv", "jsonl"}))
      ->capture_default_str();
  cmd->add_option("--text-field", flags.text_field, "Text column/key")->capture_default_str();
  cmd->add_option("--label-field", flags.label_field, "Label column/key")->capture_default_str();
  cmd->add_option("--label-map", flags.label_map, "raw:label pairs, e.g. 0:0,4:1")
      ->capture_default_str();
  cmd->add_option("--id-field", flags.id_field, "Optional id column/key")->capture_default_str();
}

Json data_flags_json(const DataFlags& flags) {
  return {{"data", flags.path},         {"format", flags.format},
          {"text_field", flags.text_field}, {"label_field", flags.label_field},
          {"label_map", flags.label_map}, {"id_field", flags.id_field}};
}

class RunManifest {
 public:
  RunManifest(std::string command, const std::vector<std::string>& args)
      : start_(std::chrono::steady_clock::now()) {
    doc_["tool"] = "tweetpol";
    doc_["version"] = TWEETPOL_VERSION;
    doc_["command"] = std::move(command);
    doc_["argv"] = args;
    doc_["working_directory"] = fs::current_path().string();
    doc_["simd"] = kernels::active().name;
    doc_["inputs"] = Json::object();
    doc_["outputs"] = Json::object();
  }

  void flags(Json flags) { doc_["flags"] = std::move(flags); }
  void seeds(Json seeds) { doc_["seeds"] = std::move(seeds); }
  void input(const std::string& path) { doc_["inputs"][path] = "sha256:" + sha256_file(path); }
  void output(const std::string& path) { doc_["outputs"][path] = "sha256:" + sha256_file(path); }

  void write(const fs::path& path) {
    const auto elapsed = std::chrono::steady_clock::now() - start_;
    doc_["wall_clock_seconds"] = std::chrono::duration<double>(elapsed).count();
    write_file_atomic(path, doc_.dump(2) + "\n");
  }

 private:
  Json doc_;
  std::chrono::steady_clock::time_point start_;
};

// Files written during a command; removed again if the command fails.
class OutputSet {
 public:
  void write(const fs::path& path, std::string_view content) {
    write_file_atomic(path, content);
    paths_.push_back(path);
  }
  void rollback() noexcept {
    for (const auto& p : paths_) {
      std::error_code ignored;
      fs::remove(p, ignored);
    }
    paths_.clear();
  }
  const std::vector<fs::path>& paths() const { return paths_; }

 private:
  std::vector<fs::path> paths_;
};

std::array<std::string, 2> label_names_for(const TrainFlags& flags) {
  if (!flags.label_names.empty()) {
    const auto comma = flags.label_names.find(',');
    if (comma == std::string::npos || comma == 0 || comma + 1 == flags.label_names.size()) {
      throw UsageError("--label-names expects 'name0,name1'");
    }
    return {flags.label_names.substr(0, comma), flags.label_names.substr(comma + 1)};
  }
  if (flags.task == "sarcasm") return {"not_sarcastic", "sarcastic"};
  return {"negative", "positive"};
}

void print_evaluation(std::ostream& out, const Evaluation& e,
                      const std::array<std::string, 2>& names) {
  out << render_confusion_matrix(e.confusion, names) << "\n" << render_report(e.report, names);
  if (e.report.undefined_metric) out << "(some 0/0 metrics reported as 0)\n";
}

int cmd_train(const TrainFlags& flags, const std::vector<std::string>& args, std::ostream& out,
              std::ostream& err) {
  RunManifest manifest("train", args);
  const auto names = label_names_for(flags);
  const auto options = load_options(flags.data, flags.data.path);
  if (flags.task == "sarcasm" && flags.test_data.empty()) {
    throw UsageError("--task sarcasm needs --test-data (held-out labeled file)");
  }

  LabeledDataset all = load_labeled(flags.data.path, options, &err);
  all.label_names = names;
  manifest.input(flags.data.path);

  LabeledDataset train_set;
  LabeledDataset test_set;
  if (flags.test_data.empty()) {
    std::tie(train_set, test_set) = split(all, {flags.train_fraction, flags.seed});
  } else {
    train_set = std::move(all);
    auto test_options = options;
    test_options.format = resolve_format(flags.data.format, flags.test_data);
    test_set = load_labeled(flags.test_data, test_options, &err);
    test_set.label_names = names;
    manifest.input(flags.test_data);
  }

  TrainConfig config;
  config.lambda = flags.lambda;
  config.epochs = flags.epochs;
  config.seed = flags.seed;
  config.average_weights = !flags.no_average;
  config.solver = parse_solver(flags.solver);
  TfidfOptions tfidf;
  tfidf.l2_normalize = !flags.no_l2_norm;
  tfidf.idf = flags.tfidf_compat ? IdfFormula::Smooth : IdfFormula::Log;

  const ClassifierPipeline pipeline = fit_pipeline(train_set, config, tfidf, flags.task);
  out << "task: " << flags.task << "\n"
      << "train documents: " << train_set.records.size()
      << ", test documents: " << test_set.records.size()
      << ", vocabulary: " << pipeline.vectorizer.dimension() << "\n\n";

  const fs::path model_path = flags.out.empty() ? fs::path(flags.task + ".model") : fs::path(flags.out);
  fs::path metrics_path = model_path;
  metrics_path += ".metrics.json";
  fs::path manifest_path = model_path;
  manifest_path += ".manifest.json";

  OutputSet outputs;
  try {
    outputs.write(model_path, serialize(pipeline));
    if (!test_set.records.empty()) {
      const Evaluation e = evaluate(pipeline, test_set);
      print_evaluation(out, e, names);
      outputs.write(metrics_path, metrics_to_json(e.confusion, e.report, names).dump(2) + "\n");
    } else {
      out << "no held-out documents; skipping evaluation\n";
    }
    for (const auto& p : outputs.paths()) manifest.output(p.string());
    Json f = data_flags_json(flags.data);
    f["task"] = flags.task;
    f["test_data"] = flags.test_data;
    f["train_fraction"] = flags.train_fraction;
    f["lambda"] = flags.lambda;
    f["epochs"] = flags.epochs;
    f["solver"] = flags.solver;
    f["average_weights"] = !flags.no_average;
    f["l2_normalize"] = !flags.no_l2_norm;
    f["tfidf_compat"] = flags.tfidf_compat;
    f["out"] = model_path.string();
    manifest.flags(std::move(f));
    manifest.seeds({{"split", flags.seed}, {"svc", flags.seed}});
    manifest.write(manifest_path);
  } catch (...) {
    outputs.rollback();
    throw;
  }
  out << "\nmodel written to " << model_path.string() << "\n";
  return kExitOk;
}

int cmd_eval(const EvalFlags& flags, const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err) {
  RunManifest manifest("eval", args);
  const ClassifierPipeline pipeline = load(flags.model);
  manifest.input(flags.model);
  const auto options = load_options(flags.data, flags.data.path);
  LabeledDataset data = load_labeled(flags.data.path, options, &err);
  data.label_names = pipeline.label_names;
  manifest.input(flags.data.path);

  const Evaluation e = evaluate(pipeline, data);
  print_evaluation(out, e, pipeline.label_names);

  fs::path metrics_path = flags.out;
  if (metrics_path.empty()) {
    metrics_path = flags.model;
    metrics_path += ".eval.json";
  }
  fs::path manifest_path = metrics_path;
  manifest_path += ".manifest.json";
  write_file_atomic(metrics_path,
                    metrics_to_json(e.confusion, e.report, pipeline.label_names).dump(2) + "\n");
  manifest.output(metrics_path.string());
  Json f = data_flags_json(flags.data);
  f["model"] = flags.model;
  f["out"] = metrics_path.string();
  manifest.flags(std::move(f));
  manifest.seeds(Json::object());
  manifest.write(manifest_path);
  return kExitOk;
}

std::string column_name(const std::vector<std::string>& existing, const std::string& wanted) {
  std::string name = wanted;
  while (std::find(existing.begin(), existing.end(), name) != existing.end()) name += "_pred";
  return name;
}

std::string join_parties(const std::vector<std::string>& parties) {
  std::string out;
  for (std::size_t k = 0; k < parties.size(); ++k) {
    if (k != 0) out.push_back(';');
    out += parties[k];
  }
  return out;
}

std::string annotated_corpus(const Corpus& corpus,
                             const std::vector<election::AnnotatedTweet>& annotated) {
  std::vector<const election::AnnotatedTweet*> by_row(
      corpus.format == Format::Csv ? corpus.csv_rows.size() : corpus.json_rows.size(), nullptr);
  for (const auto& tweet : annotated) by_row[tweet.record.source_row] = &tweet;

  std::string text;
  if (corpus.format == Format::Csv) {
    csv::Row header = corpus.columns;
    const std::vector<std::string> extra = {"sentiment", "sarcastic", "effective_sentiment",
                                            "parties"};
    for (const auto& name : extra) header.push_back(column_name(corpus.columns, name));
    text += csv::format_row(header);
    for (std::size_t r = 0; r < corpus.csv_rows.size(); ++r) {
      csv::Row row = corpus.csv_rows[r];
      if (const auto* t = by_row[r]) {
        row.push_back(std::to_string(t->sentiment));
        row.push_back(std::to_string(t->sarcastic));
        row.push_back(std::to_string(t->effective_sentiment));
        row.push_back(join_parties(t->parties));
      } else {
        row.insert(row.end(), 4, "");
      }
      text += csv::format_row(row);
    }
  } else {
    for (std::size_t r = 0; r < corpus.json_rows.size(); ++r) {
      Json row = corpus.json_rows[r];
      std::vector<std::string> keys;
      for (const auto& item : row.items()) keys.push_back(item.key());
      const auto* t = by_row[r];
      row[column_name(keys, "sentiment")] = t ? Json(t->sentiment) : Json(nullptr);
      row[column_name(keys, "sarcastic")] = t ? Json(t->sarcastic) : Json(nullptr);
      row[column_name(keys, "effective_sentiment")] = t ? Json(t->effective_sentiment) : Json(nullptr);
      row[column_name(keys, "parties")] = t ? Json(t->parties) : Json::array();
      text += row.dump() + "\n";
    }
  }
  return text;
}

int cmd_analyze(const AnalyzeFlags& flags, const std::vector<std::string>& args, std::ostream& out,
                std::ostream& err) {
  RunManifest manifest("analyze", args);
  election::PartyConfig parties = election::PartyConfig::defaults();
  if (!flags.party_config.empty()) {
    parties = election::PartyConfig::load(flags.party_config);
    manifest.input(flags.party_config);
  }
  const ClassifierPipeline sentiment = load(flags.sentiment_model);
  const ClassifierPipeline sarcasm = load(flags.sarcasm_model);
  manifest.input(flags.sentiment_model);
  manifest.input(flags.sarcasm_model);
  const Format format = resolve_format(flags.format, flags.data);
  const Corpus corpus = load_corpus(flags.data, format, flags.text_field, &err);
  manifest.input(flags.data);

  const auto annotated = election::annotate(corpus.records, sentiment, sarcasm, parties);
  const auto names = parties.names();
  const auto raw = election::aggregate(annotated, names, election::Mode::Raw);
  const auto adjusted = election::aggregate(annotated, names, election::Mode::SarcasmAdjusted);
  const auto report = election::build_report(raw, adjusted);

  const fs::path dir(flags.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot create " + dir.string());

  OutputSet outputs;
  try {
    outputs.write(dir / (format == Format::Csv ? "annotated.csv" : "annotated.jsonl"),
                  annotated_corpus(corpus, annotated));
    outputs.write(dir / "results.json", report.results.dump(2) + "\n");
    outputs.write(dir / "summary.txt", report.summary);
    for (const auto& chart : report.charts) {
      outputs.write(dir / (chart.id + ".svg"), charts::render_svg(chart));
      outputs.write(dir / (chart.id + ".csv"), charts::render_sidecar(chart));
    }
    for (const auto& p : outputs.paths()) manifest.output(p.string());
    manifest.flags({{"data", flags.data},
                    {"format", flags.format},
                    {"text_field", flags.text_field},
                    {"sentiment_model", flags.sentiment_model},
                    {"sarcasm_model", flags.sarcasm_model},
                    {"party_config", flags.party_config},
                    {"out_dir", flags.out_dir}});
    manifest.seeds(Json::object());
    manifest.write(dir / "manifest.json");
  } catch (...) {
    outputs.rollback();
    throw;
  }

  out << "tweets analysed: " << annotated.size() << "\n\n" << report.summary;
  out << "\noutputs written to " << dir.string() << "\n";
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Tweet sentiment and sarcasm analysis toolkit", "tweetpol"};
  app.require_subcommand(1);
  app.set_version_flag("--version", TWEETPOL_VERSION);

  TrainFlags train;
  auto* train_cmd = app.add_subcommand("train", "Train a sentiment or sarcasm classifier");
  train_cmd->add_option("--task", train.task, "sentiment or sarcasm")
      ->required()
      ->check(CLI::IsMember({"sentiment", "sarcasm"}));
  add_data_flags(train_cmd, train.data);
  train_cmd->add_option("--test-data", train.test_data,
                        "Held-out labeled file (required for sarcasm; replaces the split)");
  train_cmd->add_option("--train-fraction", train.train_fraction, "Training share in (0, 1]")
      ->check(CLI::Validator(
          [](std::string& v) -> std::string {
            double f = 0.0;
            try {
              f = std::stod(v);
            } catch (...) {
              return "not a number";
            }
            return f > 0.0 && f <= 1.0 ? "" : "must be in (0, 1]";
          },
          "(0,1]"))
      ->capture_default_str();
  train_cmd->add_option("--seed", train.seed, "Seed for split and solver")->capture_default_str();
  train_cmd->add_option("--lambda", train.lambda, "L2 regularization strength")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  train_cmd->add_option("--epochs", train.epochs, "Passes over the training set")
      ->check(CLI::Range(1u, 1000000u))
      ->capture_default_str();
  train_cmd->add_option("--solver", train.solver, "dual-cd or pegasos")
      ->check(CLI::IsMember({"dual-cd", "pegasos"}))
      ->capture_default_str();
  train_cmd->add_flag("--no-average", train.no_average, "Pegasos: return the last iterate");
  train_cmd->add_flag("--no-l2-norm", train.no_l2_norm, "Do not L2-normalize TF-IDF vectors");
  train_cmd->add_flag("--tfidf-compat", train.tfidf_compat,
                      "Use ln((1+N)/(1+DF))+1 instead of ln(N/(DF+1))");
  train_cmd->add_option("--label-names", train.label_names, "Display names 'name0,name1'");
  train_cmd->add_option("--out", train.out, "Model path (default <task>.model)");

  EvalFlags eval;
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a model on a labeled file");
  eval_cmd->add_option("--model", eval.model, "Model file")->required();
  add_data_flags(eval_cmd, eval.data);
  eval_cmd->add_option("--out", eval.out, "Metrics file (default <model>.eval.json)");

  AnalyzeFlags analyze;
  auto* analyze_cmd = app.add_subcommand("analyze", "Annotate an election corpus and aggregate");
  analyze_cmd->add_option("--data", analyze.data, "Unlabeled corpus (CSV or JSONL)")->required();
  analyze_cmd->add_option("--format", analyze.format, "csv, jsonl or auto")
      ->check(CLI::IsMember({"auto", "csv", "jsonl"}))
      ->capture_default_str();
  analyze_cmd->add_option("--text-field", analyze.text_field, "Tweet text column/key")
      ->capture_default_str();
  analyze_cmd->add_option("--sentiment-model", analyze.sentiment_model)->required();
  analyze_cmd->add_option("--sarcasm-model", analyze.sarcasm_model)->required();
  analyze_cmd->add_option("--party-config", analyze.party_config,
                          "JSON object: party -> [keywords] (default: built-in BJP/INC)");
  analyze_cmd->add_option("--out-dir", analyze.out_dir, "Output directory")->required();

  std::vector<std::string> argv_storage;
  argv_storage.reserve(args.size() + 1);
  argv_storage.push_back("tweetpol");
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_storage) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*train_cmd) return cmd_train(train, args, out, err);
    if (*eval_cmd) return cmd_eval(eval, args, out, err);
    return cmd_analyze(analyze, args, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::InvalidConfig ? kExitUsage : kExitFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace tweetpol::cli
