#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace bubblekit {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Text did not match the germ/polynomial grammar.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t position)
        : Error(what + " at position " + std::to_string(position)), position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

/// Two germs agree on every stored coefficient, so their relative order of
/// vanishing cannot be decided at the current truncation.
class AmbiguousTruncation : public Error {
public:
    AmbiguousTruncation(std::size_t i, std::size_t j)
        : Error("germs " + std::to_string(i) + " and " + std::to_string(j) +
                " are indistinguishable at the current truncation; supply more series terms"),
          first_(i), second_(j) {}

    std::size_t first() const noexcept { return first_; }
    std::size_t second() const noexcept { return second_; }

private:
    std::size_t first_;
    std::size_t second_;
};

/// A cluster of cone points has total curvature sum(1 - beta) >= 1.
class CollapseViolation : public Error {
public:
    CollapseViolation(const std::string& what, std::vector<std::size_t> cluster)
        : Error(what), cluster_(std::move(cluster)) {}

    const std::vector<std::size_t>& cluster() const noexcept { return cluster_; }

private:
    std::vector<std::size_t> cluster_;
};

class ClusterMismatch : public Error {
public:
    using Error::Error;
};

class GaussBonnetViolation : public Error {
public:
    using Error::Error;
};

/// Some node weight is exactly 1 (the non-collapse condition fails).
class WeightOne : public Error {
public:
    using Error::Error;
};

class PrincipalNotFound : public Error {
public:
    using Error::Error;
};

class PrincipalNotUnique : public Error {
public:
    using Error::Error;
};

class InvalidCurve : public Error {
public:
    using Error::Error;
};

class SingularPoint : public Error {
public:
    using Error::Error;
};

class NonPlanar : public Error {
public:
    using Error::Error;
};

class EmptyBreakpoints : public Error {
public:
    EmptyBreakpoints(const std::string& what, std::size_t stage) : Error(what), stage_(stage) {}

    std::size_t stage() const noexcept { return stage_; }

private:
    std::size_t stage_;
};

/// Numeric failures. The CLI maps these to exit code 2.
class NumericError : public Error {
public:
    using Error::Error;
};

class StepUnderflow : public NumericError {
public:
    using NumericError::NumericError;
};

class MaxDepthExceeded : public NumericError {
public:
    using NumericError::NumericError;
};

class RadiiTooLarge : public NumericError {
public:
    using NumericError::NumericError;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

}  // namespace bubblekit
