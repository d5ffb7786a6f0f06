#pragma once

#include <stdexcept>
#include <string>

namespace spectrank {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NonPositiveScore : Error { using Error::Error; };
struct TooFewItems : Error { using Error::Error; };
struct SameItem : Error { using Error::Error; };
struct SizeMismatch : Error { using Error::Error; };
struct InvalidPlan : Error { using Error::Error; };
struct BlockSizeError : Error { using Error::Error; };
struct EmptyGraph : Error { using Error::Error; };
struct EdgeSetMismatch : Error { using Error::Error; };
struct NotConnected : Error { using Error::Error; };
struct SingularSystem : Error { using Error::Error; };
struct EigensolveFailure : Error { using Error::Error; };
struct IsolatedVertex : Error { using Error::Error; };
struct Infeasible : Error { using Error::Error; };
struct WeightOutOfRange : Error { using Error::Error; };
struct UnknownEdge : Error { using Error::Error; };
struct LengthMismatch : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };

struct NoConvergence : Error {
    explicit NoConvergence(long iters)
        : Error("power iteration did not converge after " + std::to_string(iters) +
                " iterations"),
          iterations(iters) {}
    long iterations;
};

}  // namespace spectrank
