#include "tweetpol/pipeline.hpp"

#include "json.hpp"
#include "tweetpol/error.hpp"
#include "tweetpol/fileio.hpp"
#include "tweetpol/textprep.hpp"

namespace tweetpol {

namespace {

using Json = nlohmann::ordered_json;

constexpr std::string_view kChecksumPrefix = "sha256:";

std::string_view idf_name(IdfFormula formula) {
  return formula == IdfFormula::Smooth ? "smooth" : "log";
}

IdfFormula parse_idf(const std::string& name) {
  if (name == "log") return IdfFormula::Log;
  if (name == "smooth") return IdfFormula::Smooth;
  throw Error(ErrorCode::CorruptModel, "unknown idf formula '" + name + "'");
}

std::string checksum_of(const Json& body) {
  return std::string(kChecksumPrefix) + sha256_hex(body.dump());
}

}  // namespace

SparseVector ClassifierPipeline::encode(std::string_view text) const {
  return vectorizer.transform(textprep::analyze(text));
}

Label ClassifierPipeline::predict(std::string_view text) const {
  return predict_tokens(textprep::analyze(text));
}

Label ClassifierPipeline::predict_tokens(const textprep::TokenStream& tokens) const {
  const SparseVector x = vectorizer.transform(tokens);
  // A zero feature vector carries no evidence; it takes the tie-break label
  // instead of sign(bias).
  if (x.empty()) return 0;
  return tweetpol::predict(model, x);
}

ClassifierPipeline fit_pipeline(const LabeledDataset& train, const TrainConfig& config,
                                const TfidfOptions& tfidf, std::string task_name) {
  std::vector<textprep::TokenStream> docs;
  std::vector<Label> labels;
  docs.reserve(train.records.size());
  labels.reserve(train.records.size());
  for (const auto& record : train.records) {
    if (!record.label) {
      throw Error(ErrorCode::InvalidArgument, "training record '" + record.id + "' has no label");
    }
    docs.push_back(textprep::analyze(record.text));
    labels.push_back(*record.label);
  }
  auto vectorizer = FittedVectorizer::fit(docs, tfidf);
  std::vector<SparseVector> x;
  x.reserve(docs.size());
  for (const auto& doc : docs) x.push_back(vectorizer.transform(doc));
  LinearModel model = tweetpol::train(x, labels, config);
  return ClassifierPipeline{std::move(vectorizer), std::move(model), std::move(task_name),
                            train.label_names, kModelFormatVersion};
}

std::vector<Label> predict_texts(const ClassifierPipeline& pipeline,
                                 std::span<const std::string> texts) {
  std::vector<Label> out;
  out.reserve(texts.size());
  for (const auto& text : texts) out.push_back(pipeline.predict(text));
  return out;
}

Evaluation evaluate(const ClassifierPipeline& pipeline, const LabeledDataset& data) {
  if (data.records.empty()) throw Error(ErrorCode::EmptyInput, "evaluation dataset is empty");
  std::vector<Label> truth;
  std::vector<Label> predicted;
  truth.reserve(data.records.size());
  predicted.reserve(data.records.size());
  for (const auto& record : data.records) {
    if (!record.label) {
      throw Error(ErrorCode::InvalidArgument, "evaluation record '" + record.id + "' has no label");
    }
    truth.push_back(*record.label);
    predicted.push_back(pipeline.predict(record.text));
  }
  Evaluation e;
  e.confusion = confusion_matrix(truth, predicted);
  e.report = classification_report(e.confusion);
  return e;
}

std::string serialize(const ClassifierPipeline& pipeline) {
  const auto& v = pipeline.vectorizer;
  const auto& m = pipeline.model;
  Json body;
  body["format_version"] = pipeline.format_version;
  body["task_name"] = pipeline.task_name;
  body["label_names"] = {pipeline.label_names[0], pipeline.label_names[1]};
  body["tfidf"] = {{"l2_normalize", v.options().l2_normalize},
                   {"idf", idf_name(v.options().idf)}};
  body["n_docs"] = v.n_docs();
  body["vocabulary"] = v.terms();
  body["df"] = Json(std::vector<std::uint64_t>(v.document_frequencies().begin(),
                                               v.document_frequencies().end()));
  body["svc"] = {{"solver", to_string(m.config.solver)},
                 {"lambda", to_hex_float(m.config.lambda)},
                 {"epochs", m.config.epochs},
                 {"seed", m.config.seed},
                 {"average_weights", m.config.average_weights}};
  body["bias"] = to_hex_float(m.bias);
  Json weights = Json::array();
  for (double w : m.weights) weights.push_back(to_hex_float(w));
  body["weights"] = std::move(weights);

  Json document = body;
  document["checksum"] = checksum_of(body);
  return document.dump(1) + "\n";
}

ClassifierPipeline deserialize(std::string_view text) {
  Json document;
  try {
    document = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::CorruptModel, std::string("unparseable model: ") + e.what());
  }
  if (!document.is_object()) throw Error(ErrorCode::CorruptModel, "model is not an object");
  try {
    const int version = document.at("format_version").get<int>();
    if (version != kModelFormatVersion) {
      throw Error(ErrorCode::VersionMismatch, "model format " + std::to_string(version) +
                                                  ", expected " +
                                                  std::to_string(kModelFormatVersion));
    }
    const std::string stored = document.at("checksum").get<std::string>();
    Json body = document;
    body.erase("checksum");
    if (stored != checksum_of(body)) throw Error(ErrorCode::CorruptModel, "checksum mismatch");

    TfidfOptions tfidf;
    tfidf.l2_normalize = body.at("tfidf").at("l2_normalize").get<bool>();
    tfidf.idf = parse_idf(body.at("tfidf").at("idf").get<std::string>());
    auto vectorizer = FittedVectorizer::from_parts(
        body.at("vocabulary").get<std::vector<std::string>>(),
        body.at("df").get<std::vector<std::uint64_t>>(), body.at("n_docs").get<std::uint64_t>(),
        tfidf);

    LinearModel model;
    const auto& svc = body.at("svc");
    model.config.solver = parse_solver(svc.at("solver").get<std::string>());
    model.config.lambda = from_hex_float(svc.at("lambda").get<std::string>());
    model.config.epochs = svc.at("epochs").get<std::uint32_t>();
    model.config.seed = svc.at("seed").get<std::uint64_t>();
    model.config.average_weights = svc.at("average_weights").get<bool>();
    model.bias = from_hex_float(body.at("bias").get<std::string>());
    for (const auto& w : body.at("weights")) model.weights.push_back(from_hex_float(w.get<std::string>()));
    if (model.weights.size() != vectorizer.dimension()) {
      throw Error(ErrorCode::CorruptModel, "weight count does not match vocabulary size");
    }

    const auto names = body.at("label_names").get<std::vector<std::string>>();
    if (names.size() != 2) throw Error(ErrorCode::CorruptModel, "need exactly two label names");
    return ClassifierPipeline{std::move(vectorizer), std::move(model),
                              body.at("task_name").get<std::string>(),
                              {names[0], names[1]}, version};
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::CorruptModel, std::string("bad model field: ") + e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::InvalidArgument) throw Error(ErrorCode::CorruptModel, e.what());
    throw;
  }
}

void save(const ClassifierPipeline& pipeline, const std::filesystem::path& path) {
  write_file_atomic(path, serialize(pipeline));
}

ClassifierPipeline load(const std::filesystem::path& path) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const Error& e) {
    throw Error(ErrorCode::IoError, e.what());
  }
  return deserialize(text);
}

}  // namespace tweetpol
