#pragma once

#include <stdexcept>
#include <string>

namespace relops {

// Base for all domain errors thrown by the library.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

#define RELOPS_DEFINE_ERROR(Name)                        \
  struct Name : Error {                                  \
    explicit Name(const std::string& msg) : Error(msg) {} \
  }

RELOPS_DEFINE_ERROR(UnknownNode);
RELOPS_DEFINE_ERROR(InsufficientCapacity);
RELOPS_DEFINE_ERROR(ParseError);
RELOPS_DEFINE_ERROR(ValidationError);
RELOPS_DEFINE_ERROR(UnknownCollector);
RELOPS_DEFINE_ERROR(NonFiniteValue);
RELOPS_DEFINE_ERROR(UnknownMetric);
RELOPS_DEFINE_ERROR(UnusableBaseline);
RELOPS_DEFINE_ERROR(TooFewPeers);
RELOPS_DEFINE_ERROR(EmptyBaseline);
RELOPS_DEFINE_ERROR(RuleRuntimeError);
RELOPS_DEFINE_ERROR(UnknownRule);
RELOPS_DEFINE_ERROR(EmptySet);
RELOPS_DEFINE_ERROR(NoContrastAvailable);
RELOPS_DEFINE_ERROR(ValidationCorpusDegenerate);
RELOPS_DEFINE_ERROR(IllegalTransition);
RELOPS_DEFINE_ERROR(StaleValidation);
RELOPS_DEFINE_ERROR(NoSpareCapacity);
RELOPS_DEFINE_ERROR(UnknownFaultClass);
RELOPS_DEFINE_ERROR(ClientUnavailable);
RELOPS_DEFINE_ERROR(LengthMismatch);
RELOPS_DEFINE_ERROR(NonFinite);
RELOPS_DEFINE_ERROR(SchemaMismatch);
RELOPS_DEFINE_ERROR(DegenerateProfile);
RELOPS_DEFINE_ERROR(TooFewRanks);
RELOPS_DEFINE_ERROR(NonDivisible);
RELOPS_DEFINE_ERROR(NoFeasibleConfig);
RELOPS_DEFINE_ERROR(SchemaError);
RELOPS_DEFINE_ERROR(IoError);

#undef RELOPS_DEFINE_ERROR

}  // namespace relops
