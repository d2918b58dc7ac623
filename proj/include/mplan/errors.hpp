#pragma once

#include <stdexcept>
#include <string>

namespace mplan {

/// Violation of an operation precondition (dimension mismatch, bad index, ...).
struct ContractViolation : std::logic_error {
  explicit ContractViolation(const std::string& what) : std::logic_error(what) {}
};

/// SG-axis cannot be built because the path endpoints coincide.
struct DegenerateAxis : std::runtime_error {
  explicit DegenerateAxis(const std::string& what) : std::runtime_error(what) {}
};

/// Transverse diameter shorter than the inter-focal distance.
struct InfeasibleSpheroid : std::runtime_error {
  explicit InfeasibleSpheroid(const std::string& what) : std::runtime_error(what) {}
};

/// A sampler hit its attempt cap without producing a valid configuration.
struct SamplingExhausted : std::runtime_error {
  explicit SamplingExhausted(const std::string& what) : std::runtime_error(what) {}
};

/// Unusable configuration input (environment file, scenario file, flags).
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace mplan
