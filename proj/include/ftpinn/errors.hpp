#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace ftpinn {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// An argument violates a precondition or a computation left the real domain
/// (division by zero, overflow to infinity).
class DomainError : public Error {
  public:
    using Error::Error;
};

/// alpha at the truncation length equals one, so the geometric tail diverges.
class TailDivergenceError : public DomainError {
  public:
    using DomainError::DomainError;
};

/// The residual does not change sign across the search interval.
class BracketError : public Error {
  public:
    using Error::Error;
};

/// The iteration budget ran out before the residual met the tolerance.
class ConvergenceError : public Error {
  public:
    ConvergenceError(const std::string& what, double best_site_fraction, double best_residual)
        : Error(what), best_site_fraction_(best_site_fraction), best_residual_(best_residual) {}

    double best_site_fraction() const noexcept { return best_site_fraction_; }
    double best_residual() const noexcept { return best_residual_; }

  private:
    double best_site_fraction_;
    double best_residual_;
};

/// Reaction conditions fall outside the surrogate's normalization box.
class RangeError : public Error {
  public:
    RangeError(const std::string& what, std::vector<std::size_t> rows = {})
        : Error(what), rows_(std::move(rows)) {}

    const std::vector<std::size_t>& rows() const noexcept { return rows_; }

  private:
    std::vector<std::size_t> rows_;
};

/// Malformed or inconsistent input file (parameters, model, config, CSV).
class FormatError : public Error {
  public:
    using Error::Error;
};

}  // namespace ftpinn
