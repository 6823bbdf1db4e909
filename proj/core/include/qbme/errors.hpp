#pragma once

#include <stdexcept>
#include <string>

namespace qbme {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Hopfield-Bogoliubov matrix has complex or zero eigenvalues: the system is
// outside the stable normal phase.
class InstabilityError : public Error {
public:
  using Error::Error;
};

// An eigenvector with (numerically) zero symplectic norm; no canonical
// normalization exists.
class DegenerateNormError : public Error {
public:
  using Error::Error;
};

class DimensionError : public Error {
public:
  using Error::Error;
};

class DivergentOccupation : public Error {
public:
  using Error::Error;
};

class NonPositiveFrequency : public Error {
public:
  using Error::Error;
};

class ZeroFrequencyUnsupported : public Error {
public:
  using Error::Error;
};

class DegenerateSpectrum : public Error {
public:
  using Error::Error;
};

class UnsupportedLambShift : public Error {
public:
  using Error::Error;
};

class InvalidModel : public Error {
public:
  using Error::Error;
};

// Frame rotation that does not commute with the generator.
class FrameError : public Error {
public:
  using Error::Error;
};

class NotClosed : public Error {
public:
  using Error::Error;
};

class SingularFastBlock : public Error {
public:
  using Error::Error;
};

class TruncationError : public Error {
public:
  using Error::Error;
};

class StepTooLarge : public Error {
public:
  using Error::Error;
};

class ScenarioError : public Error {
public:
  using Error::Error;
};

}  // namespace qbme
