#pragma once

#include <stdexcept>
#include <string>

namespace nematic {

/// Base class for every solver failure raised by the library.
class Error : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

/// Both ends of a shooting bracket classify identically.
class BracketError : public Error
{
  public:
    using Error::Error;
};

/// A Newton iteration hit its cap without meeting tolerance.
class NewtonDivergence : public Error
{
  public:
    using Error::Error;
};

/// The Picard u-delta grew for three consecutive iterations.
class PicardStall : public Error
{
  public:
    using Error::Error;
};

/// A shooting-parameter scan showed more than one classification change.
class NonMonotoneScan : public Error
{
  public:
    using Error::Error;
};

class ZeroProfile : public Error
{
  public:
    using Error::Error;
};

class SingularSystem : public Error
{
  public:
    using Error::Error;
};

class LinearSolveFailure : public Error
{
  public:
    using Error::Error;
};

/// Leapfrog time step exceeds 0.9 dx / sqrt(alpha).
class CflViolation : public Error
{
  public:
    using Error::Error;
};

/// Truncation half-length does not reach beyond theta + delta.
class DomainTooSmall : public Error
{
  public:
    using Error::Error;
};

}  // namespace nematic
