#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pnf {

// Base for all library errors. `code` is a stable machine-readable tag,
// `witness` carries optional key/value details (a monomial, a degree, ...).
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message,
          std::vector<std::pair<std::string, std::string>> witness = {})
        : std::runtime_error(message), code_(std::move(code)), witness_(std::move(witness)) {}

    const std::string& code() const noexcept { return code_; }
    const std::vector<std::pair<std::string, std::string>>& witness() const noexcept {
        return witness_;
    }

private:
    std::string code_;
    std::vector<std::pair<std::string, std::string>> witness_;
};

// Violated precondition or mathematical obstruction (resonance, non-nilpotent
// remainder, unsolvable degree, ...). CLI exit code 1.
class DomainError : public Error {
public:
    using Error::Error;
};

// Malformed user input: parse errors, schema violations, bad dimensions.
// CLI exit code 2.
class InputError : public Error {
public:
    using Error::Error;
};

}  // namespace pnf
