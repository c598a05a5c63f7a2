#pragma once

#include <stdexcept>
#include <string>

namespace cmv {

// Every failure mode the library can signal. The CLI maps these onto
// process exit codes; tests match on them directly.
enum class Err {
  ZeroArgument,
  SingularMinor,
  MarginTooSmall,
  ShapeMismatch,
  NotScalar,
  NotReal,
  PoleAtDiagonal,
  OnCircle,
  AtAtom,
  SingularBlock,
  SingularEvaluationMatrix,
  RootOfW,
  AtomNotAtRoot,
  OnCircleRoot,
  SingularFWindow,
  BadConfig,
};

const char* errName(Err c);

class Error : public std::runtime_error {
 public:
  Error(Err code, const std::string& msg, long index = -1)
      : std::runtime_error(std::string(errName(code)) + ": " + msg),
        code_(code),
        index_(index) {}

  Err code() const { return code_; }
  // Index payload, e.g. the pivot position of a singular leading minor.
  long index() const { return index_; }

 private:
  Err code_;
  long index_;
};

[[noreturn]] void fail(Err code, const std::string& msg, long index = -1);

}  // namespace cmv
