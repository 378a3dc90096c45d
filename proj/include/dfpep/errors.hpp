#pragma once

#include <stdexcept>
#include <string>

namespace dfpep {

/// Potential (or centrifugal surrogate) evaluated at a point where
/// 1 - q e^{-2 alpha r} vanishes.
class PoleError : public std::runtime_error {
  public:
    explicit PoleError(const std::string& what) : std::runtime_error(what) {}
};

/// A square-root radicand went negative, a cap formula has no real value,
/// or an input lies outside the operation's validity region.
class InvalidDomainError : public std::runtime_error {
  public:
    explicit InvalidDomainError(const std::string& what) : std::runtime_error(what) {}
};

/// A result would exceed the double range (erfi guard, Boltzmann exponents).
class OverflowError : public std::runtime_error {
  public:
    explicit OverflowError(const std::string& what) : std::runtime_error(what) {}
};

/// An iterative scheme (quadrature tail extension, normalization) gave up.
class ConvergenceError : public std::runtime_error {
  public:
    explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

/// An improper integral with the requested bounds is infinite.
class DivergenceError : public std::runtime_error {
  public:
    explicit DivergenceError(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed or schema-violating run configuration.
class ConfigError : public std::runtime_error {
  public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace dfpep
