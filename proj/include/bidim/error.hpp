#pragma once

#include <stdexcept>
#include <string>

namespace bidim {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input: unknown ids, non-simple graph where a simple one is
// required, degenerate geometry, ...
class InvalidInput : public Error {
 public:
  using Error::Error;
};

// An operation was called outside its documented precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// An exhaustive routine was asked to run above its configured size cap.
class CapExceeded : public Error {
 public:
  CapExceeded(const std::string& what, long size, long cap)
      : Error(what + ": size " + std::to_string(size) + " exceeds cap " + std::to_string(cap)),
        size_(size),
        cap_(cap) {}

  long size() const { return size_; }
  long cap() const { return cap_; }

 private:
  long size_;
  long cap_;
};

// A geometric hypothesis (general position, at most two curves per point,
// finite intersections, non-empty interior overlap) does not hold.
class GeometryError : public Error {
 public:
  enum class Kind { self_crossing, overlap, triple_point, degenerate_polygon, outside, not_rho_convex, empty_interior, offset_walk, general_position };

  GeometryError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

// A construction produced an object that fails its own certificate check.
// Seeing this means a bug in the library or inconsistent certificates.
class CertificateError : public Error {
 public:
  using Error::Error;
};

}  // namespace bidim
