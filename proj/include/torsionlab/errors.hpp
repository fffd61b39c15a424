// Error taxonomy shared by every layer of the library.  Each failure mode that
// callers are expected to catch and react to gets its own type; everything
// derives from TorsionError so "any library failure" is one catch away.
#pragma once

#include <stdexcept>
#include <string>

namespace torsionlab {

struct TorsionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---- scalar / polynomial arithmetic -----------------------------------------

struct DivisionByZero : TorsionError {
  using TorsionError::TorsionError;
};

// Raised when an element of an extension ring has no inverse.  Can only happen
// when a user adjoined a reducible minimal polynomial (zero divisors).
struct NotInvertible : TorsionError {
  using TorsionError::TorsionError;
};

struct IncompatibleTowers : TorsionError {
  using TorsionError::TorsionError;
};

// Exact division failed; carries a printout of the nonzero remainder.
struct NonDivisible : TorsionError {
  NonDivisible(const std::string& msg, std::string remainder)
      : TorsionError(msg + " [remainder: " + remainder + "]"),
        remainder_text(std::move(remainder)) {}
  std::string remainder_text;
};

// ---- chain complexes --------------------------------------------------------

struct NotAcyclicWithoutBases : TorsionError {
  using TorsionError::TorsionError;
};

struct InvalidHomologyBasis : TorsionError {
  using TorsionError::TorsionError;
};

struct NotExact : TorsionError {
  using TorsionError::TorsionError;
};

struct IncompatibleBases : TorsionError {
  using TorsionError::TorsionError;
};

// ---- presentations / representations ---------------------------------------

struct ParseError : TorsionError {
  ParseError(const std::string& msg, int line, int col)
      : TorsionError("line " + std::to_string(line) + ", col " +
                     std::to_string(col) + ": " + msg),
        line(line),
        col(col) {}
  int line = 0;
  int col = 0;
};

struct ValidationError : TorsionError {
  using TorsionError::TorsionError;
};

// ---- torsion computations ---------------------------------------------------

struct DegenerateDenominator : TorsionError {
  using TorsionError::TorsionError;
};

struct WrongDeficiency : TorsionError {
  using TorsionError::TorsionError;
};

struct CoefficientsDoNotCollapse : TorsionError {
  using TorsionError::TorsionError;
};

struct NotUnitEquivalent : TorsionError {
  using TorsionError::TorsionError;
};

}  // namespace torsionlab
