#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace cstar {

/// Shapes, ranks or signatures that do not fit together.
class StructuralError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A mathematical precondition failed (non-Hermitian input, frame operator
/// not invertible, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Two independently computed verdicts that must agree did not.
class ConsistencyError : public std::logic_error {
public:
    ConsistencyError(std::string check, std::string first, std::string second)
        : std::logic_error(check + ": " + first + " vs " + second),
          check_(std::move(check)), first_(std::move(first)), second_(std::move(second)) {}

    const std::string& check() const noexcept { return check_; }
    const std::string& first() const noexcept { return first_; }
    const std::string& second() const noexcept { return second_; }

private:
    std::string check_;
    std::string first_;
    std::string second_;
};

} // namespace cstar
