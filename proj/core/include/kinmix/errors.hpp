#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace kinmix {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A mixture parameter lies outside its admissible range.
class ParameterError : public Error {
public:
    using Error::Error;
};

/// The requested time step violates a stability restriction.
class CflError : public Error {
public:
    CflError(const std::string& what, double max_dt) : Error(what), max_dt_(max_dt) {}
    double max_dt() const noexcept { return max_dt_; }

private:
    double max_dt_;
};

/// A reconstructed density or temperature became non-positive.
class PositivityError : public Error {
public:
    PositivityError(const std::string& what, std::size_t cell) : Error(what), cell_(cell) {}
    std::size_t cell() const noexcept { return cell_; }

private:
    std::size_t cell_;
};

/// Malformed or inconsistent run configuration.
class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace kinmix
