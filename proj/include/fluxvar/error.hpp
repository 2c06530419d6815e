#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace fluxvar {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input document. `field()` holds the dotted path
/// of the offending field, e.g. "sim.dt".
class ConfigError : public Error {
public:
    ConfigError(std::string field, const std::string& what)
        : Error(field + ": " + what), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

/// Argument outside the domain of an operation (arity mismatch, negative
/// concentration, dimension mismatch).
class DomainError : public Error {
public:
    using Error::Error;
};

/// A chain violates the assumptions needed by the requested operation.
class ChainError : public Error {
public:
    using Error::Error;
};

/// Some flux cannot exceed the input rate where the operation needs it to.
class SaturationError : public ChainError {
public:
    using ChainError::ChainError;
};

/// Integration produced a non-finite state.
class SimulationError : public Error {
public:
    SimulationError(std::uint64_t path, std::uint64_t step, const std::string& what)
        : Error("path " + std::to_string(path) + ", step " + std::to_string(step) + ": " + what),
          path_(path), step_(step) {}

    std::uint64_t path() const noexcept { return path_; }
    std::uint64_t step() const noexcept { return step_; }

private:
    std::uint64_t path_;
    std::uint64_t step_;
};

/// Statistics requested on an empty or too short sample.
class AnalysisError : public Error {
public:
    using Error::Error;
};

}  // namespace fluxvar
