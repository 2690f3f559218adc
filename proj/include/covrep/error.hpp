#pragma once

#include <stdexcept>
#include <string>

namespace covrep {

// Every failure mode the library can raise deliberately.  The kind is part of
// the contract: callers (CLI, tests) switch on it rather than parsing text.
enum class ErrorKind {
  Precondition,   // a stated hypothesis fails; message names the identity
  DomainMismatch, // objects from different parent groups / incompatible specs
  Validation,     // malformed input (JSON, flags, modulus chains)
  SizeCap,        // requested check exceeds the configured operation cap
  Engine,         // internal certificate failure (e.g. sum of squares != |G|)
};

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

} // namespace covrep
