#pragma once

#include <stdexcept>
#include <string>

namespace kummer {

// Base class for every numerical / domain failure raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Division by a jet whose constant term vanishes.
struct SingularJetError : Error {
    using Error::Error;
};

// Elementary function evaluated outside its domain (sqrt/log of nonpositive value, ...).
struct JetDomainError : Error {
    using Error::Error;
};

// Evaluation at the orbifold point u = 0 of a chart that degenerates there.
struct OrbifoldPointError : Error {
    using Error::Error;
};

// Metric not positive definite at the requested point.
struct DegenerateMetricError : Error {
    using Error::Error;
};

// Bundle-chart coordinates outside the patch of validity.
struct WrongPatchError : Error {
    using Error::Error;
};

// Chart where det(g) is not locally constant; no Darboux quaternionic frame there.
struct NotHyperkahlerChartError : Error {
    using Error::Error;
};

// Caller violated an operation precondition (non-closed path, point off a fixed set, ...).
struct PreconditionError : Error {
    using Error::Error;
};

// Requested derivative order beyond what the jet layer supports.
struct CapabilityError : Error {
    using Error::Error;
};

// Radial evaluation below the inner cutoff radius of a neck construction.
struct OutOfRegionError : Error {
    using Error::Error;
};

// Trajectory entered the u < u_min floor of an orbifold chart.
struct ProximityError : Error {
    using Error::Error;
};

// Integrator step too large for the requested accuracy.
struct AccuracyError : Error {
    using Error::Error;
};

// Operation requires equal gluing parameters a_i (or another structural hypothesis).
struct HypothesisError : Error {
    using Error::Error;
};

// Parameters outside the admissible range (A <= 0, overlapping charts, ...).
struct ParameterRangeError : Error {
    using Error::Error;
};

// Malformed surface configuration input.
struct ConfigError : Error {
    using Error::Error;
};

}  // namespace kummer
