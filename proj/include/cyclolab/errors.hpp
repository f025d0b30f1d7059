#pragma once

#include <stdexcept>
#include <string>

namespace cyclolab {

// Error taxonomy shared by all modules. Expected numerical outcomes
// (a failed Newton solve, a recognition miss) are reported through result
// types, not exceptions; these classes cover contract violations and
// conditions the caller cannot sensibly continue past.

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct DomainError : Error { using Error::Error; };
struct InvalidEmbedding : Error { using Error::Error; };
struct InvalidAutomorphism : Error { using Error::Error; };
struct InsufficientPrecision : Error { using Error::Error; };
struct DegenerateConfiguration : Error { using Error::Error; };
struct PathTooClose : Error { using Error::Error; };
struct PrecisionFailure : Error { using Error::Error; };
struct SingularJacobian : Error { using Error::Error; };
struct DegenerateForm : Error { using Error::Error; };

}  // namespace cyclolab
