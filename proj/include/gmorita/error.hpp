#pragma once

#include <stdexcept>
#include <string>

namespace gmorita {

/// Failure categories. Callers (the CLI in particular) map these to exit codes.
enum class ErrorKind {
  InvalidInput,       // malformed group, algebra or module data
  Precondition,       // an operation's hypothesis does not hold
  NotMorita,          // phi or psi fails to be bijective
  NotFaithfullyBalanced,
  Inconsistent,       // a result that should be guaranteed failed certification
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
  case ErrorKind::InvalidInput: return "invalid-input";
  case ErrorKind::Precondition: return "precondition";
  case ErrorKind::NotMorita: return "not-morita";
  case ErrorKind::NotFaithfullyBalanced: return "not-faithfully-balanced";
  case ErrorKind::Inconsistent: return "inconsistent";
  }
  return "unknown";
}

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool cond, ErrorKind kind, const std::string& what) {
  if (!cond)
    throw Error(kind, what);
}

} // namespace gmorita
