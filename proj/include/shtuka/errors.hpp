#pragma once

#include <stdexcept>
#include <string>

namespace shtuka {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Operands built over different field/ring parameters.
struct RingMismatchError : Error {
    explicit RingMismatchError(const std::string& msg) : Error(msg) {}
};

// Inversion of a non-unit, division by zero and friends.
struct NotInvertibleError : Error {
    explicit NotInvertibleError(const std::string& msg) : Error(msg) {}
};

// A question was asked that the tracked precision window cannot answer.
// Callers map this to the "undecidable" exit path rather than guessing.
struct PrecisionError : Error {
    explicit PrecisionError(const std::string& msg) : Error(msg) {}
};

// Input fails a structural membership test (not a point of the functor,
// malformed triple, violated precondition).
struct MembershipError : Error {
    explicit MembershipError(const std::string& msg) : Error(msg) {}
};

}  // namespace shtuka
