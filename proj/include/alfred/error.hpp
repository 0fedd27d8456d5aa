#pragma once

#include <stdexcept>
#include <string>

namespace alfred {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& message) : std::runtime_error(message) {}
};

/// A lookup or precondition failure against an ArchitectureModel
/// (unknown component, unknown top event, model that does not validate).
class ModelError : public Error {
 public:
  using Error::Error;
};

/// Raised by the weaver.
class WeaveError : public Error {
 public:
  using Error::Error;
};

/// Raised by the synthesizer ("propagation cycle", "unmatched failure mode").
class SynthesisError : public Error {
 public:
  using Error::Error;
};

/// Raised by cutset analysis and evaluation.
class AnalysisError : public Error {
 public:
  using Error::Error;
};

}  // namespace alfred
