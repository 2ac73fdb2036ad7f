#pragma once

#include <stdexcept>
#include <string>

namespace vill {

/// Error taxonomy shared by the library and the CLI exit-code mapping:
/// input/shape problems exit 2, resource/horizon limits exit 3.
enum class ErrorKind {
  Config,           // malformed or inconsistent input documents
  Shape,            // mismatched dimensions, word lengths, summand counts
  CapExceeded,      // an operation would materialize more atoms than the dense cap
  HorizonExceeded,  // no admissible depth within the requested horizon
  DepthExhausted,   // subsequence selection ran out of levels
  ModeMismatch,     // requested analysis mode contradicts the diagnosed regime
  FiberMismatch,    // convex combination of towers with unequal scalar tuples
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

inline Error config_error(const std::string& what) { return Error(ErrorKind::Config, what); }
inline Error shape_error(const std::string& what) { return Error(ErrorKind::Shape, what); }
inline Error cap_exceeded(const std::string& what) { return Error(ErrorKind::CapExceeded, what); }
inline Error horizon_exceeded(const std::string& what) { return Error(ErrorKind::HorizonExceeded, what); }
inline Error depth_exhausted(const std::string& what) { return Error(ErrorKind::DepthExhausted, what); }
inline Error mode_mismatch(const std::string& what) { return Error(ErrorKind::ModeMismatch, what); }
inline Error fiber_mismatch(const std::string& what) { return Error(ErrorKind::FiberMismatch, what); }

}  // namespace vill
