#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace graphsl {

enum class ErrorCode {
    // graph-core
    DisconnectedGraph,
    NegativeWeight,
    NonpositiveMeasure,
    SelfLoop,
    InvalidVertex,
    HaloVertex,
    UnsupportedInput,
    InvalidSigma,
    RadiusExceedsTruncation,
    // generators / io
    SizeOverflow,
    InvalidParameter,
    ParseError,
    IoError,
    // dirichlet
    HaloContamination,
    InvalidProblem,
    SingularSystem,
    NonConvergence,
    NotASupersolution,
    // exhaustion
    TruncationTooShallow,
    MonotonicityViolation,
    TrivialInput,
    BadM,
    BranchingTooSmall,
    AlphaNotSupercritical,
    RegionEmpty,
    // liouville
    InvalidLambda,
    BadLambda,
    NotASolution,
    ConditionViolated,
    // radial-oracle
    SingularTridiagonal,
    ShapeMismatch,
};

std::string_view to_string(ErrorCode code);

/// Single exception type for the library; `code()` identifies the failure.
class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& message,
          std::optional<std::size_t> vertex = std::nullopt,
          std::optional<std::size_t> line = std::nullopt);

    ErrorCode code() const noexcept { return code_; }
    /// Offending vertex, when one exists.
    std::optional<std::size_t> vertex() const noexcept { return vertex_; }
    /// 1-based input line for parse errors.
    std::optional<std::size_t> line() const noexcept { return line_; }

  private:
    ErrorCode code_;
    std::optional<std::size_t> vertex_;
    std::optional<std::size_t> line_;
};

}  // namespace graphsl
