#pragma once

#include <stdexcept>
#include <string>

namespace fraclap {

/// Invalid arguments: nonpositive gamma arguments, alpha outside (0, 2], d < 1 ...
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// A computation could not certify its result at the current precision.
/// Callers running the escalation protocol retry at a higher precision.
class NumericFailure : public std::runtime_error {
public:
  enum class Kind {
    NotPositiveDefinite,
    NonConvergence,
    PoleProximity,
    RootCountMismatch,
    SeriesCapExceeded,
    UncertifiedSign,
    PrecisionExhausted,
    InvalidCut,
  };

  NumericFailure(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

private:
  Kind kind_;
};

const char* to_string(NumericFailure::Kind kind);

}  // namespace fraclap
