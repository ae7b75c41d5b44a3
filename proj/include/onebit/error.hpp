#pragma once

#include <stdexcept>
#include <string>

namespace onebit {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Vector or matrix shape does not match the system it is used with.
/// `which()` names the offending operand ("g", "f", "h", ...).
class DimensionError : public Error {
 public:
  DimensionError(std::string which, long expected, long actual)
      : Error("dimension mismatch for " + which + ": expected " +
              std::to_string(expected) + ", got " + std::to_string(actual)),
        which_(std::move(which)),
        expected_(expected),
        actual_(actual) {}

  const std::string& which() const { return which_; }
  long expected() const { return expected_; }
  long actual() const { return actual_; }

 private:
  std::string which_;
  long expected_;
  long actual_;
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double last_residual)
      : Error(what), last_residual_(last_residual) {}
  double last_residual() const { return last_residual_; }

 private:
  double last_residual_;
};

/// An alternating design produced a zero intermediate vector.
class DegenerateIterate : public Error {
 public:
  DegenerateIterate(const std::string& what, int iteration)
      : Error(what + " (iteration " + std::to_string(iteration) + ")"),
        iteration_(iteration) {}
  int iteration() const { return iteration_; }

 private:
  int iteration_;
};

class SizeGuardError : public Error {
 public:
  using Error::Error;
};

}  // namespace onebit
