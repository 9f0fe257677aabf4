#pragma once

#include <stdexcept>
#include <string>

namespace cosenet {

enum class ErrorCode {
    NotSquare,
    ValueOutOfRange,
    Asymmetric,
    InvalidThroughput,
    LayoutMismatch,
    ParamConstraintViolated,
    InputOutOfRange,
    ShapeMismatch,
    EmptyTrainingSet,
    SingularSystem,
    IoError,
    FormatVersionMismatch,
    LengthMismatch,
    ZeroVariance,
    DegenerateWindow,
    EmptyGrid,
    MissingModel,
    NoCandidates,
    InvalidArgument,
};

const char* to_string(ErrorCode code);

// Single exception type for the library; callers dispatch on code().
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace cosenet
