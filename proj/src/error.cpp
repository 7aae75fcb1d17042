#include "tfrom/error.hpp"

namespace tfrom {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonFiniteScore: return "NonFiniteScore";
    case ErrorCode::NegativeScore: return "NegativeScore";
    case ErrorCode::EmptyRow: return "EmptyRow";
    case ErrorCode::InvalidShape: return "InvalidShape";
    case ErrorCode::InvalidRank: return "InvalidRank";
    case ErrorCode::InvalidDimension: return "InvalidDimension";
    case ErrorCode::InvalidList: return "InvalidList";
    case ErrorCode::ZeroIdealQuality: return "ZeroIdealQuality";
    case ErrorCode::ZeroTotalRelevance: return "ZeroTotalRelevance";
    case ErrorCode::InsufficientItems: return "InsufficientItems";
    case ErrorCode::UnknownCustomer: return "UnknownCustomer";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UnknownItemInProviderFile: return "UnknownItemInProviderFile";
    case ErrorCode::MissingProviderForItem: return "MissingProviderForItem";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace tfrom
