#pragma once

#include <stdexcept>
#include <string>

namespace condlen {

// Base class of every error thrown by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidArgument : Error {
  using Error::Error;
};

struct ProfileMismatch : Error {
  ProfileMismatch() : Error("degree profiles do not match") {}
  using Error::Error;
};

// Great circle requested between (numerically) antipodal or equal systems.
struct DegeneratePath : Error {
  DegeneratePath() : Error("degenerate great circle: endpoints coincide up to sign") {}
  using Error::Error;
};

// The restricted Jacobian Df(z)|_{z^perp} is numerically singular.
struct SingularPair : Error {
  SingularPair() : Error("restricted Jacobian is numerically singular") {}
  using Error::Error;
};

struct SingularJacobian : Error {
  SingularJacobian() : Error("Newton step undefined: singular restricted Jacobian") {}
  using Error::Error;
};

struct NotAnApproximateZero : Error {
  NotAnApproximateZero() : Error("start point is not a certified approximate zero") {}
  using Error::Error;
};

struct KernelDegenerate : Error {
  KernelDegenerate() : Error("numerical kernel dimension differs from one") {}
  using Error::Error;
};

struct EmptyZeroList : Error {
  EmptyZeroList() : Error("zero list is empty") {}
  using Error::Error;
};

// Malformed input file; the message names the offending entry.
struct ParseError : Error {
  using Error::Error;
};

}  // namespace condlen
