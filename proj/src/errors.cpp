#include "cmvmix/errors.hpp"

namespace cmv {

const char* errName(Err c) {
  switch (c) {
    case Err::ZeroArgument: return "ZeroArgument";
    case Err::SingularMinor: return "SingularMinor";
    case Err::MarginTooSmall: return "MarginTooSmall";
    case Err::ShapeMismatch: return "ShapeMismatch";
    case Err::NotScalar: return "NotScalar";
    case Err::NotReal: return "NotReal";
    case Err::PoleAtDiagonal: return "PoleAtDiagonal";
    case Err::OnCircle: return "OnCircle";
    case Err::AtAtom: return "AtAtom";
    case Err::SingularBlock: return "SingularBlock";
    case Err::SingularEvaluationMatrix: return "SingularEvaluationMatrix";
    case Err::RootOfW: return "RootOfW";
    case Err::AtomNotAtRoot: return "AtomNotAtRoot";
    case Err::OnCircleRoot: return "OnCircleRoot";
    case Err::SingularFWindow: return "SingularFWindow";
    case Err::BadConfig: return "BadConfig";
  }
  return "UnknownError";
}

void fail(Err code, const std::string& msg, long index) {
  throw Error(code, msg, index);
}

}  // namespace cmv
