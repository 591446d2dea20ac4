#pragma once

#include <stdexcept>
#include <string>

namespace coverfam {

// Error taxonomy shared by the library and the CLI exit codes.
enum class ErrorKind {
    Input,       // malformed or out-of-contract arguments / files
    Resource,    // size caps, enumeration caps, node budgets
    Verification,// a certificate or witness failed re-verification
    Randomness,  // bounded retries exhausted
    Internal     // invariant broken, should never happen
};

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& msg)
        : std::runtime_error(msg), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

  private:
    ErrorKind kind_;
};

inline Error input_error(const std::string& msg) { return Error(ErrorKind::Input, msg); }
inline Error resource_error(const std::string& msg) { return Error(ErrorKind::Resource, msg); }
inline Error verification_error(const std::string& msg) { return Error(ErrorKind::Verification, msg); }
inline Error randomness_error(const std::string& msg) { return Error(ErrorKind::Randomness, msg); }
inline Error internal_error(const std::string& msg) { return Error(ErrorKind::Internal, msg); }

} // namespace coverfam
