#pragma once

#include <stdexcept>
#include <string>

namespace ozs {

// Error classes map 1:1 onto CLI exit codes.
enum class ErrorClass : int {
    usage     = 2,  // bad flags, bad config, refused overwrite
    parse     = 3,  // malformed input files
    data      = 4,  // ordering/gap/insufficient data, missing channels
    contract  = 5,  // dimension mismatch, rejected non-finite values
    diverged  = 6,  // training produced non-finite state
    io        = 7,  // filesystem failures
};

class Error : public std::runtime_error {
public:
    Error(ErrorClass cls, const std::string& msg)
        : std::runtime_error(msg), cls_(cls) {}
    ErrorClass error_class() const noexcept { return cls_; }
    int exit_code() const noexcept { return static_cast<int>(cls_); }

private:
    ErrorClass cls_;
};

struct ConfigError : Error {
    explicit ConfigError(const std::string& m) : Error(ErrorClass::usage, m) {}
};
struct ParseError : Error {
    explicit ParseError(const std::string& m) : Error(ErrorClass::parse, m) {}
};
struct OrderingError : Error {
    explicit OrderingError(const std::string& m) : Error(ErrorClass::data, m) {}
};
struct GapError : Error {
    explicit GapError(const std::string& m) : Error(ErrorClass::data, m) {}
};
struct InsufficientDataError : Error {
    explicit InsufficientDataError(const std::string& m) : Error(ErrorClass::data, m) {}
};
struct MissingChannelError : Error {
    explicit MissingChannelError(const std::string& m) : Error(ErrorClass::data, m) {}
};
struct ContractError : Error {
    explicit ContractError(const std::string& m) : Error(ErrorClass::contract, m) {}
};
struct RejectedInputError : Error {
    explicit RejectedInputError(const std::string& m) : Error(ErrorClass::contract, m) {}
};
struct UndefinedCorrelationError : Error {
    explicit UndefinedCorrelationError(const std::string& m) : Error(ErrorClass::data, m) {}
};
struct DegenerateActivationError : Error {
    explicit DegenerateActivationError(const std::string& m) : Error(ErrorClass::data, m) {}
};
struct DivergedTrainingError : Error {
    explicit DivergedTrainingError(const std::string& m) : Error(ErrorClass::diverged, m) {}
};
struct IoError : Error {
    explicit IoError(const std::string& m) : Error(ErrorClass::io, m) {}
};

} // namespace ozs
