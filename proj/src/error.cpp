#include "graphsl/error.hpp"

namespace graphsl {

std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::DisconnectedGraph: return "DisconnectedGraph";
    case ErrorCode::NegativeWeight: return "NegativeWeight";
    case ErrorCode::NonpositiveMeasure: return "NonpositiveMeasure";
    case ErrorCode::SelfLoop: return "SelfLoop";
    case ErrorCode::InvalidVertex: return "InvalidVertex";
    case ErrorCode::HaloVertex: return "HaloVertex";
    case ErrorCode::UnsupportedInput: return "UnsupportedInput";
    case ErrorCode::InvalidSigma: return "InvalidSigma";
    case ErrorCode::RadiusExceedsTruncation: return "RadiusExceedsTruncation";
    case ErrorCode::SizeOverflow: return "SizeOverflow";
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::HaloContamination: return "HaloContamination";
    case ErrorCode::InvalidProblem: return "InvalidProblem";
    case ErrorCode::SingularSystem: return "SingularSystem";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::NotASupersolution: return "NotASupersolution";
    case ErrorCode::TruncationTooShallow: return "TruncationTooShallow";
    case ErrorCode::MonotonicityViolation: return "MonotonicityViolation";
    case ErrorCode::TrivialInput: return "TrivialInput";
    case ErrorCode::BadM: return "BadM";
    case ErrorCode::BranchingTooSmall: return "BranchingTooSmall";
    case ErrorCode::AlphaNotSupercritical: return "AlphaNotSupercritical";
    case ErrorCode::RegionEmpty: return "RegionEmpty";
    case ErrorCode::InvalidLambda: return "InvalidLambda";
    case ErrorCode::BadLambda: return "BadLambda";
    case ErrorCode::NotASolution: return "NotASolution";
    case ErrorCode::ConditionViolated: return "ConditionViolated";
    case ErrorCode::SingularTridiagonal: return "SingularTridiagonal";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    }
    return "Unknown";
}

namespace {

std::string decorate(ErrorCode code, const std::string& message,
                     std::optional<std::size_t> line) {
    std::string out(to_string(code));
    if (line) out += " at line " + std::to_string(*line);
    out += ": ";
    out += message;
    return out;
}

}  // namespace

Error::Error(ErrorCode code, const std::string& message,
             std::optional<std::size_t> vertex, std::optional<std::size_t> line)
    : std::runtime_error(decorate(code, message, line)),
      code_(code),
      vertex_(vertex),
      line_(line) {}

}  // namespace graphsl
