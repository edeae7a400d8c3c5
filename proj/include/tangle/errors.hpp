#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tangle {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

// Malformed formula construction (empty tangle set, bad binder).
class FormulaError : public Error {
 public:
  using Error::Error;
};

class PositivityError : public FormulaError {
 public:
  using FormulaError::FormulaError;
};

class CaptureError : public FormulaError {
 public:
  CaptureError(const std::string& what, std::string binder)
      : FormulaError(what), binder_(std::move(binder)) {}
  const std::string& binder() const noexcept { return binder_; }

 private:
  std::string binder_;
};

// Operator outside the fragment an operation accepts.
class FragmentError : public Error {
 public:
  using Error::Error;
};

// A frame lacks a structural property the operation requires
// (typically transitivity for tangle and cluster computations).
class FrameError : public Error {
 public:
  using Error::Error;
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

class ArityError : public Error {
 public:
  using Error::Error;
};

// Invalid model / space / profile description.
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace tangle
