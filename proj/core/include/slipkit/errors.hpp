#pragma once

#include <stdexcept>
#include <string>

namespace slipkit {

/// Regression inputs do not span the feature space (rank-deficient X^T X),
/// or an identification problem has no informative data. The protocol's job
/// is to provide excitation, so this is a hard error rather than a silent
/// pseudo-inverse fallback.
class InsufficientExcitationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input-space characterization failed to find a wheel-speed plateau.
class CharacterizationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A model was asked for predictions before seeing any data.
class UntrainedModelError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A persisted file violates its schema. Carries a 1-based line number
/// (0 when the failure is not tied to a specific line).
class SchemaError : public std::runtime_error {
 public:
  SchemaError(const std::string& message, long line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message : message),
        line_(line) {}

  long line() const { return line_; }

 private:
  long line_;
};

}  // namespace slipkit
