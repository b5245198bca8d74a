#pragma once

#include <stdexcept>
#include <string>

#include "crmdp/types.hpp"

namespace crmdp {

class CrmdpError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Identification flagged every candidate: no non-corrupt reference exists
/// relative to the candidate set.
class AllStatesFlagged : public CrmdpError {
 public:
  using CrmdpError::CrmdpError;
};

/// Reward bounds requested against an empty non-corrupt reference set.
class EmptyReference : public CrmdpError {
 public:
  using CrmdpError::CrmdpError;
};

class ParseError : public CrmdpError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : CrmdpError("line " + std::to_string(line) + ": " + what), line_(line) {}

  [[nodiscard]] std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// The true reward is not Lipschitz w.r.t. the metric, or S_n is empty.
class SmoothnessViolation : public CrmdpError {
 public:
  SmoothnessViolation(const std::string& what, StateId x, StateId y)
      : CrmdpError(what), x_(x), y_(y) {}

  [[nodiscard]] StateId first() const { return x_; }
  [[nodiscard]] StateId second() const { return y_; }

 private:
  StateId x_;
  StateId y_;
};

class EpisodeOver : public CrmdpError {
 public:
  using CrmdpError::CrmdpError;
};

}  // namespace crmdp
