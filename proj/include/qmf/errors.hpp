// errors.hpp: Exception types shared by every qmf module

#pragma once

#include <stdexcept>
#include <string>

namespace qmf {

// Shapes of operators, superoperators or vectors do not agree.
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A scalar parameter is outside its admissible range (negative weight, t < 0, ...).
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A constructed object violates one of its algebraic axioms beyond tolerance.
class AxiomError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input file or configuration. `field` names the offending entry.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string field, const std::string& message)
        : std::runtime_error(field.empty() ? message : field + ": " + message),
          field_(std::move(field)),
          message_(message) {}

    const std::string& field() const noexcept { return field_; }
    const std::string& message() const noexcept { return message_; }

private:
    std::string field_;
    std::string message_;
};

} // namespace qmf
