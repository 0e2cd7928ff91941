#include "tweetpol/error.hpp"

namespace tweetpol {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::FileNotFound: return "FileNotFound";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::MalformedRow: return "MalformedRow";
    case ErrorCode::UnknownField: return "UnknownField";
    case ErrorCode::EmptyDataset: return "EmptyDataset";
    case ErrorCode::EmptyCorpus: return "EmptyCorpus";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::EmptyMatrix: return "EmptyMatrix";
    case ErrorCode::UnknownTerm: return "UnknownTerm";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::SingleClassData: return "SingleClassData";
    case ErrorCode::DegenerateInput: return "DegenerateInput";
    case ErrorCode::VersionMismatch: return "VersionMismatch";
    case ErrorCode::CorruptModel: return "CorruptModel";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
  }
  return "Unknown";
}

}  // namespace tweetpol
