#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace diffkde {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Interval endpoints in the wrong order, or a point outside the interval.
class DomainError : public Error {
public:
  using Error::Error;
};

/// A count that must be positive was zero, or a sample was empty.
class SizeError : public Error {
public:
  using Error::Error;
};

class DimensionError : public Error {
public:
  using Error::Error;
};

/// Malformed line in a sample file.
class ParseError : public Error {
public:
  ParseError(const std::string& msg, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + msg), line_(line) {}

  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

/// Numerical breakdown: vanishing pivot, Sherman-Morrison denominator, zero mass.
class NumericalError : public Error {
public:
  using Error::Error;
};

/// A NumericalError raised while advancing a trajectory, tagged with the step.
class StepError : public NumericalError {
public:
  StepError(const std::string& msg, std::size_t step)
      : NumericalError("step " + std::to_string(step) + ": " + msg), step_(step) {}

  std::size_t step() const noexcept { return step_; }

private:
  std::size_t step_;
};

class IoError : public Error {
public:
  using Error::Error;
};

} // namespace diffkde
