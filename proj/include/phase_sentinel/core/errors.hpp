#pragma once

#include <stdexcept>
#include <string>

namespace phase_sentinel {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// evaluation outside the declared strip
struct DomainError : Error { using Error::Error; };

// series extraction found no nonzero coefficient within max_order
struct OrderExhausted : Error { using Error::Error; };

// series extraction requires g(0)=0
struct NotAnEquilibrium : Error { using Error::Error; };

// malformed system-definition document
struct ParseError : Error { using Error::Error; };

// G(x) is never attained on the opposite side of the origin
struct NoConjugate : Error { using Error::Error; };

// an odd-g hypothesis failed on the sampled core
struct NotOddG : Error { using Error::Error; };

// rational exponent p/q must have p and q odd
struct BadExponent : Error { using Error::Error; };

// branch inversion of a potential function failed
struct BranchError : Error { using Error::Error; };

// f depends on y, so there is no classical Lienard reduction
struct NotXOnly : Error { using Error::Error; };

// exceptional directions requested for a region that has none
struct WrongRegion : Error { using Error::Error; };

// nilpotent subdivision needs jet data that was not supplied
struct NeedsSeries : Error { using Error::Error; };

// parameter combination outside the published classification tables
struct UnhandledCase : Error { using Error::Error; };

// integrator gave up after too many rejected steps
struct StiffnessAbort : Error { using Error::Error; };

// trajectory left the hard safety radius
struct EscapeAbort : Error { using Error::Error; };

// sector clustering was ambiguous at the requested radius
struct InconclusiveProbe : Error { using Error::Error; };

// parameters violate a region precondition (atlas)
struct OutOfRegion : Error { using Error::Error; };

}  // namespace phase_sentinel
