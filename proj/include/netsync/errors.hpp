#pragma once

#include <stdexcept>
#include <string>

namespace netsync {

/// Base of every error raised by the library. `kind()` is the stable name
/// used in CLI diagnostics.
class Error : public std::runtime_error {
public:
    Error(const char* kind, const std::string& message)
        : std::runtime_error(std::string(kind) + ": " + message), kind_(kind) {}

    const char* kind() const noexcept { return kind_; }

private:
    const char* kind_;
};

#define NETSYNC_DEFINE_ERROR(Name)                                              \
    class Name : public Error {                                                 \
    public:                                                                     \
        explicit Name(const std::string& message) : Error(#Name, message) {}   \
    }

// core numerics
NETSYNC_DEFINE_ERROR(DivisionByZeroFunction);
NETSYNC_DEFINE_ERROR(EvalNearPole);
NETSYNC_DEFINE_ERROR(DegenerateInput);
NETSYNC_DEFINE_ERROR(SingularMatrix);
NETSYNC_DEFINE_ERROR(NotSymmetric);

// network model
NETSYNC_DEFINE_ERROR(SchemaError);
NETSYNC_DEFINE_ERROR(ValidationError);

// reduction
NETSYNC_DEFINE_ERROR(NotUniform);
NETSYNC_DEFINE_ERROR(SingularInterior);
NETSYNC_DEFINE_ERROR(RankDeficient);
NETSYNC_DEFINE_ERROR(DegenerateHomogeneous);
NETSYNC_DEFINE_ERROR(GuardViolated);

// oscillator
NETSYNC_DEFINE_ERROR(InvalidParams);

// certificate
NETSYNC_DEFINE_ERROR(DegenerateLoop);
NETSYNC_DEFINE_ERROR(UnboundedGain);
NETSYNC_DEFINE_ERROR(Unclassified);
NETSYNC_DEFINE_ERROR(NotNormal);

// simulator
NETSYNC_DEFINE_ERROR(UnsupportedForm);
NETSYNC_DEFINE_ERROR(Divergence);
NETSYNC_DEFINE_ERROR(StepUnderflow);

#undef NETSYNC_DEFINE_ERROR

}  // namespace netsync
