#pragma once

#include <stdexcept>
#include <string>

namespace hfa {

// Error taxonomy. Each kind maps to its own process exit code in the CLI
// (see tools/hfa_main.cpp and `hfa --help`).
enum class ErrorKind {
    Argument,      // bad argument to a library call or CLI flag
    Io,            // unreadable / unwritable file
    Schema,        // missing column, non-numeric cell, duplicate fixture, unknown statistic
    Completeness,  // strict pairing with missing mirror fixtures
    Rank,          // n < 3, disconnected or rank-deficient design
};

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

  private:
    ErrorKind kind_;
};

inline const char* error_kind_name(ErrorKind k) {
    switch (k) {
        case ErrorKind::Argument: return "argument";
        case ErrorKind::Io: return "io";
        case ErrorKind::Schema: return "schema";
        case ErrorKind::Completeness: return "completeness";
        case ErrorKind::Rank: return "rank";
    }
    return "unknown";
}

}  // namespace hfa
