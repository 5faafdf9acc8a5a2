#pragma once

#include <stdexcept>
#include <string>

namespace vcx {

/// Caller broke a precondition: bad parameters, malformed input, mismatched ground sets.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A structural property that must hold for VC-bounded input did not hold.
/// Seeing one of these on valid input means a bug (or a counterexample).
class InvariantViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A member has no certificate, i.e. it is shattered by its own family.
class ShatteredMemberError : public std::runtime_error {
public:
    ShatteredMemberError(std::string member, const std::string& what)
        : std::runtime_error(what), member_(std::move(member)) {}

    const std::string& member() const noexcept { return member_; }

private:
    std::string member_;
};

}  // namespace vcx
