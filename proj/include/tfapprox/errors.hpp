#pragma once

#include <stdexcept>
#include <string>

namespace tfapprox {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A precondition on the caller's arguments was violated.
class InvalidArgument : public Error {
public:
  using Error::Error;
};

class SignalsNotSubmultiplicative : public InvalidArgument {
public:
  using InvalidArgument::InvalidArgument;
};

class DimensionMismatch : public InvalidArgument {
public:
  using InvalidArgument::InvalidArgument;
};

class GridMismatch : public InvalidArgument {
public:
  using InvalidArgument::InvalidArgument;
};

class OffGridShift : public InvalidArgument {
public:
  using InvalidArgument::InvalidArgument;
};

/// FunctionSpec / NormSpec text could not be parsed. `what()` names the token.
class ParseError : public InvalidArgument {
public:
  using InvalidArgument::InvalidArgument;
};

class EmptyProbeSet : public InvalidArgument {
public:
  using InvalidArgument::InvalidArgument;
};

class ZeroFunction : public InvalidArgument {
public:
  using InvalidArgument::InvalidArgument;
};

/// Window for a mollifier does not have unit integral.
class NonNormalizedWindow : public InvalidArgument {
public:
  using InvalidArgument::InvalidArgument;
};

/// The approximation scheme needs a window with nonzero integral.
class WindowZeroMean : public Error {
public:
  using Error::Error;
};

} // namespace tfapprox
