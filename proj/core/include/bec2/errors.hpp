#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace bec2 {

// Process exit codes used by the CLI. Library code signals the failure class
// through the exception type; exit_code() gives the mapping.
enum class ExitCode : int {
  ok = 0,
  failure = 1,
  validation = 2,
  singular = 3,
  numeric_blowup = 4,
  io = 5,
  interrupted = 6,
};

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
  virtual ExitCode exit_code() const { return ExitCode::failure; }
};

// A single argument outside its physical domain (zero detuning, negative
// mass, ...). The message names the offending quantity.
class DomainError : public Error {
 public:
  using Error::Error;
  ExitCode exit_code() const override { return ExitCode::validation; }
};

// Structural validation failure; carries every violated constraint, not just
// the first one found.
class ValidationError : public Error {
 public:
  ValidationError(const std::string& what, std::vector<std::string> violations)
      : Error(what), violations_(std::move(violations)) {}
  explicit ValidationError(const std::string& what) : Error(what) {}
  const std::vector<std::string>& violations() const { return violations_; }
  ExitCode exit_code() const override { return ExitCode::validation; }

 private:
  std::vector<std::string> violations_;
};

// Medium response diverges: the screening denominator 1 - (4 pi / 3) S is
// within tolerance of zero, so the susceptibility has no finite value.
class SingularMediumError : public Error {
 public:
  using Error::Error;
  ExitCode exit_code() const override { return ExitCode::singular; }
};

// The local detuning crosses zero, invalidating the adiabatic elimination.
// For grid-based evolution, grid_index locates the first offending point.
class SingularDetuningError : public Error {
 public:
  explicit SingularDetuningError(const std::string& what, long grid_index = -1)
      : Error(what), grid_index_(grid_index) {}
  long grid_index() const { return grid_index_; }
  ExitCode exit_code() const override { return ExitCode::singular; }

 private:
  long grid_index_;
};

// Non-finite amplitudes appeared during evolution.
class NumericBlowupError : public Error {
 public:
  using Error::Error;
  ExitCode exit_code() const override { return ExitCode::numeric_blowup; }
};

// Spatial grid too coarse for the requested field oscillation.
class ResolutionError : public Error {
 public:
  using Error::Error;
  ExitCode exit_code() const override { return ExitCode::validation; }
};

class IoError : public Error {
 public:
  using Error::Error;
  ExitCode exit_code() const override { return ExitCode::io; }
};

class InterruptedError : public Error {
 public:
  using Error::Error;
  ExitCode exit_code() const override { return ExitCode::interrupted; }
};

}  // namespace bec2
