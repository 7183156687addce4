#ifndef CONEWIT_ERRORS_HPP
#define CONEWIT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace conewit {

enum class Errc {
  NonSquare,
  NotHermitian,
  DimensionMismatch,
  TooLarge,
  BadVertexSet,
  InvariantViolation,
  PreconditionViolation,
  NotInCone,
  NotOnFace,
  NotDNN,
  WrongDimension,
  WitnessNotInDualCone,
  BadDiagonal,
  FaceUnsatisfiable,
  ParseError,
  BadArgument,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

private:
  Errc code_;
};

} // namespace conewit

#endif
