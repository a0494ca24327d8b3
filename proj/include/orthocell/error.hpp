#pragma once

#include <stdexcept>
#include <string>

namespace orthocell {

// Failures of preconditions and degenerate inputs. Verification reports never
// use exceptions; these signal misuse or impossible constructions.
struct Error : std::runtime_error {
  enum class Code {
    EmptyCell,
    Unbounded,
    DimensionMismatch,
    ZeroDimensional,
    NotACube,
    NotStandard,
    IncompatibleGenerator,
    NotAUnionOfCells,
    NoContainingCell,
    NotFound,
    NotUnique,
    IncompatibleOnSharedFace,
    BadInput,
  };
  Code code;
  Error(Code c, const std::string& msg) : std::runtime_error(msg), code(c) {}
};

inline Error error(Error::Code c, const std::string& msg) { return Error(c, msg); }

}  // namespace orthocell
