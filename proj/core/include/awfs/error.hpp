#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace awfs {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input or violated precondition (bad ids, non-commuting squares, ...).
class InputError : public Error {
 public:
  using Error::Error;
};

/// The free factorization did not stabilise within the configured number of strata.
class CapExceeded : public Error {
 public:
  CapExceeded(const std::string& what, std::vector<std::size_t> stage_counts)
      : Error(what), stage_counts_(std::move(stage_counts)) {}

  const std::vector<std::size_t>& stage_counts() const noexcept { return stage_counts_; }

 private:
  std::vector<std::size_t> stage_counts_;
};

/// An internal invariant failed. Never expected on valid inputs.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace awfs
