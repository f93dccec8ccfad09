#pragma once

#include <stdexcept>
#include <string>

namespace gradlab {

/// An enumeration or search hit its configured bound. Callers may raise the
/// bound and retry.
class ResourceExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A computed object broke one of its stated invariants. Always a hard failure.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace gradlab
