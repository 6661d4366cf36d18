#pragma once

#include <stdexcept>
#include <string>

namespace gsd {

// Error taxonomy shared by all modules. The CLI maps these onto exit codes:
// ConfigError -> 2, InputError/FormatError -> 3, ContractError -> 4.

// Bad experiment configuration or invalid parameter combination.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Unreadable, empty, or missing input data.
struct InputError : std::runtime_error {
    explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

// Readable input that violates its documented format.
struct FormatError : std::runtime_error {
    explicit FormatError(const std::string& msg) : std::runtime_error(msg) {}
};

// Internal API misuse: shape mismatch, missing checkpoint fields, etc.
struct ContractError : std::runtime_error {
    explicit ContractError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace gsd
