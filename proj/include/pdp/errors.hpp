#pragma once

#include <stdexcept>
#include <string>

namespace pdp {

// All recoverable failures are thrown as subclasses of Error so callers can
// catch the whole family at the CLI boundary.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct LengthMismatch : Error {
    using Error::Error;
};

struct AsymmetricMatrix : Error {
    using Error::Error;
};

struct NegativeEntry : Error {
    using Error::Error;
};

struct InvalidMatrix : Error {
    using Error::Error;
};

struct SpecInvalid : Error {
    using Error::Error;
};

struct DestinationNotLast : Error {
    using Error::Error;
};

struct InfeasibleAssignment : Error {
    using Error::Error;
};

struct NoFeasibleRoute : Error {
    using Error::Error;
};

struct TooLarge : Error {
    using Error::Error;
};

struct EmptyFleet : Error {
    using Error::Error;
};

struct FleetExhausted : Error {
    using Error::Error;
};

struct NotATpDelivery : Error {
    using Error::Error;
};

struct NonPositiveRt : Error {
    using Error::Error;
};

struct DeadlineImpossible : Error {
    using Error::Error;
};

struct ChainBroken : Error {
    using Error::Error;
};

struct MalformedSolution : Error {
    using Error::Error;
};

struct ProfileInvalid : Error {
    using Error::Error;
};

struct IoFailure : Error {
    using Error::Error;
};

}  // namespace pdp
