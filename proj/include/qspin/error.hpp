#pragma once

#include <stdexcept>
#include <string>

namespace qspin {

// Failure kinds callers can branch on. Usage errors (shape/context mismatch)
// are distinct from mathematical rejections (NotStable, PfaffianNotOne, ...),
// which the CLI reports with exit code 1 instead of 2.
enum class ErrKind {
  CtxMismatch,
  ShapeMismatch,
  DimensionMismatch,
  NotSquare,
  NotAlternating,
  NotPowerOfTwo,
  InvalidArgument,
  Singular,
  NotUnitVector,
  MissingWitness,
  NotInV,
  NotUnitary,
  NotStable,
  NotSpecial,
  PfaffianNotOne,
  NoLift,
  NotNormalizable,
  Internal,
};

const char* to_string(ErrKind k);

// True for kinds that signal a malformed request rather than a failed check.
bool is_usage_error(ErrKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrKind kind, const std::string& msg)
      : std::runtime_error(std::string(to_string(kind)) + ": " + msg),
        kind_(kind) {}

  ErrKind kind() const { return kind_; }

 private:
  ErrKind kind_;
};

[[noreturn]] inline void fail(ErrKind k, const std::string& msg) {
  throw Error(k, msg);
}

}  // namespace qspin
