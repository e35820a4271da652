#pragma once

#include <stdexcept>
#include <string>

namespace topodyn {

// Base for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct ConfigError : Error {
    using Error::Error;
};

// A PrefixStream point cannot supply enough symbols.
struct PrefixExhausted : Error {
    using Error::Error;
};

// A WedgePoint's side tag disagrees with its system.
struct SideMismatch : Error {
    using Error::Error;
};

// Two points agree on all available symbols without an equality certificate.
struct Undecidable : Error {
    using Error::Error;
};

struct InadmissibleCell : Error {
    using Error::Error;
};

struct BadDelta : Error {
    using Error::Error;
};

struct EmptySet : Error {
    using Error::Error;
};

struct NoRuns : Error {
    using Error::Error;
};

struct BudgetExceeded : Error {
    using Error::Error;
};

struct SampleTooSmall : Error {
    using Error::Error;
};

struct NotASubshift : Error {
    using Error::Error;
};

struct WindowOverflow : Error {
    using Error::Error;
};

struct PrefixLimit : Error {
    using Error::Error;
};

struct UnknownFixture : Error {
    using Error::Error;
};

struct MissingSeries : Error {
    using Error::Error;
};

// Integer overflow in exact arithmetic; raise the relevant cap or shrink the input.
struct ArithmeticOverflow : Error {
    using Error::Error;
};

} // namespace topodyn
